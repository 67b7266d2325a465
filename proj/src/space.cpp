#include "f2rank2/space.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace f2rank2 {

namespace rref {

uint64_t reduce(const std::vector<uint64_t>& basis, uint64_t v) {
    for (uint64_t b : basis)
        if ((v >> pivot(b)) & 1) v ^= b;
    return v;
}

bool insert(std::vector<uint64_t>& basis, uint64_t v) {
    v = reduce(basis, v);
    if (!v) return false;
    int pv = pivot(v);
    for (uint64_t& b : basis)
        if ((b >> pv) & 1) b ^= v;
    auto it = std::lower_bound(basis.begin(), basis.end(), v, std::greater<uint64_t>());
    basis.insert(it, v);
    return true;
}

bool contains(const std::vector<uint64_t>& basis, uint64_t v) { return reduce(basis, v) == 0; }

}  // namespace rref

namespace {

void check_space_shape(int n, int p) {
    if (n < 1 || n > 8 || p < 1 || p > 8)
        throw std::invalid_argument("space shape out of range (1..8)");
}

}  // namespace

MatrixSpace MatrixSpace::zero(int n, int p) {
    check_space_shape(n, p);
    MatrixSpace v;
    v.n = static_cast<uint8_t>(n);
    v.p = static_cast<uint8_t>(p);
    return v;
}

MatrixSpace MatrixSpace::full(int n, int p) {
    MatrixSpace v = zero(n, p);
    for (int k = n * p - 1; k >= 0; --k) v.basis.push_back(1ull << k);
    return v;
}

bool MatrixSpace::contains(const Gf2Matrix& m) const {
    if (m.nrows != n || m.ncols != p) return false;
    return contains_flat(m.flatten());
}

bool MatrixSpace::subset_of(const MatrixSpace& w) const {
    if (n != w.n || p != w.p) return false;
    for (uint64_t b : basis)
        if (!w.contains_flat(b)) return false;
    return true;
}

std::vector<Gf2Matrix> MatrixSpace::basis_matrices() const {
    std::vector<Gf2Matrix> out;
    out.reserve(basis.size());
    for (uint64_t b : basis) out.push_back(Gf2Matrix::unflatten(b, n, p));
    return out;
}

VectorSpaceF2 VectorSpaceF2::zero(int len) {
    if (len < 0 || len > 64) throw std::invalid_argument("VectorSpaceF2: bad length");
    VectorSpaceF2 v;
    v.len = static_cast<uint8_t>(len);
    return v;
}

VectorSpaceF2 span_vectors(int len, const std::vector<uint64_t>& gens) {
    VectorSpaceF2 v = VectorSpaceF2::zero(len);
    for (uint64_t g : gens) rref::insert(v.basis, g);
    return v;
}

AffineMatrixSpace AffineMatrixSpace::make(const Gf2Matrix& base, const MatrixSpace& translation) {
    if (base.nrows != translation.n || base.ncols != translation.p)
        throw std::invalid_argument("AffineMatrixSpace: base/translation shape mismatch");
    AffineMatrixSpace s;
    s.translation = translation;
    s.base = Gf2Matrix::unflatten(rref::reduce(translation.basis, base.flatten()),
                                  translation.n, translation.p);
    return s;
}

AffineMatrixSpace AffineMatrixSpace::linear(const MatrixSpace& translation) {
    return make(Gf2Matrix::zero(translation.n, translation.p), translation);
}

bool AffineMatrixSpace::contains(const Gf2Matrix& m) const {
    if (m.nrows != translation.n || m.ncols != translation.p) return false;
    return translation.contains_flat(m.flatten() ^ base.flatten());
}

MatrixSpace span(const std::vector<Gf2Matrix>& generators, int n, int p) {
    MatrixSpace v = MatrixSpace::zero(n, p);
    for (const auto& g : generators) {
        if (g.nrows != n || g.ncols != p) throw std::invalid_argument("span: mixed shapes");
        rref::insert(v.basis, g.flatten());
    }
    return v;
}

MatrixSpace span(const std::vector<Gf2Matrix>& generators) {
    if (generators.empty()) throw std::invalid_argument("span: empty generator list needs a shape");
    return span(generators, generators[0].nrows, generators[0].ncols);
}

std::vector<uint64_t> elements_flat(const MatrixSpace& v) {
    if (v.dim() > 20) throw std::invalid_argument("elements: dim > 20");
    std::vector<uint64_t> out;
    out.reserve(1ull << v.dim());
    uint64_t cur = 0;
    out.push_back(cur);
    for (uint64_t c = 1; c < (1ull << v.dim()); ++c) {
        cur ^= v.basis[std::countr_zero(c)];
        out.push_back(cur);
    }
    return out;
}

std::vector<Gf2Matrix> elements(const MatrixSpace& v) {
    std::vector<Gf2Matrix> out;
    out.reserve(1ull << v.dim());
    for (uint64_t e : elements_flat(v)) out.push_back(Gf2Matrix::unflatten(e, v.n, v.p));
    return out;
}

VectorSpaceF2 kernel(const Gf2Matrix& m) {
    // Row-reduce, then read free columns off the pivots.
    std::array<uint8_t, 8> a = m.rows;
    int n = m.nrows, p = m.ncols;
    std::array<int, 8> pivot_row{};
    pivot_row.fill(-1);
    int r = 0;
    for (int j = 0; j < p && r < n; ++j) {
        int piv = -1;
        for (int i = r; i < n; ++i)
            if ((a[i] >> j) & 1) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(a[r], a[piv]);
        for (int i = 0; i < n; ++i)
            if (i != r && ((a[i] >> j) & 1)) a[i] ^= a[r];
        pivot_row[j] = r;
        ++r;
    }
    std::vector<uint64_t> gens;
    for (int j = 0; j < p; ++j) {
        if (pivot_row[j] >= 0) continue;
        uint64_t v = 1ull << j;
        for (int jj = 0; jj < j; ++jj)
            if (pivot_row[jj] >= 0 && ((a[pivot_row[jj]] >> j) & 1)) v |= 1ull << jj;
        gens.push_back(v);
    }
    return span_vectors(p, gens);
}

VectorSpaceF2 common_kernel(const MatrixSpace& v) {
    // Kernel of the stacked basis matrices; intersect incrementally by
    // enumeration (p <= 8, so at most 256 candidates).
    VectorSpaceF2 acc = VectorSpaceF2::zero(v.p);
    if (v.dim() == 0) {
        for (int j = v.p - 1; j >= 0; --j) acc.basis.push_back(1ull << j);
        return acc;
    }
    std::vector<VectorSpaceF2> kernels;
    for (const auto& b : v.basis_matrices()) kernels.push_back(kernel(b));
    std::vector<uint64_t> gens;
    for (uint64_t x = 1; x < (1ull << v.p); ++x) {
        bool in_all = true;
        for (const auto& k : kernels)
            if (!k.contains(x)) { in_all = false; break; }
        if (in_all) gens.push_back(x);
    }
    return span_vectors(v.p, gens);
}

VectorSpaceF2 image_sum(const MatrixSpace& v) {
    std::vector<uint64_t> gens;
    for (const auto& b : v.basis_matrices()) {
        for (int j = 0; j < v.p; ++j) {
            uint64_t col = 0;
            for (int i = 0; i < v.n; ++i) col |= static_cast<uint64_t>(b.get(i, j)) << i;
            if (col) gens.push_back(col);
        }
    }
    return span_vectors(v.n, gens);
}

bool is_reduced_space(const MatrixSpace& v) {
    return common_kernel(v).dim() == 0 && image_sum(v).dim() == v.n;
}

ReducedSpace reduced_space(const MatrixSpace& v) {
    VectorSpaceF2 ker = common_kernel(v);
    VectorSpaceF2 im = image_sum(v);
    int p2 = v.p - ker.dim();
    int n2 = im.dim();
    // Complement of the kernel spanned by standard vectors at non-pivot spots.
    std::vector<int> comp;
    uint64_t pivots = 0;
    for (uint64_t b : ker.basis) pivots |= 1ull << rref::pivot(b);
    for (int j = 0; j < v.p; ++j)
        if (!((pivots >> j) & 1)) comp.push_back(j);
    ReducedSpace out;
    out.n = n2;
    out.p = p2;
    if (n2 == 0 || p2 == 0) {
        // Zero space: represent it in a 1x1 ambient to keep shapes valid.
        out.space = MatrixSpace::zero(std::max(n2, 1), std::max(p2, 1));
        return out;
    }
    // Coordinates of a column y in the image basis (pivot-descending RREF):
    // peel pivots from the top.
    auto im_coords = [&](uint64_t y) {
        uint64_t coords = 0;
        for (size_t k = 0; k < im.basis.size(); ++k) {
            uint64_t b = im.basis[k];
            if ((y >> rref::pivot(b)) & 1) {
                y ^= b;
                coords |= 1ull << k;
            }
        }
        if (y) throw std::logic_error("reduced_space: column outside image sum");
        return coords;
    };
    std::vector<Gf2Matrix> gens;
    for (const auto& a : v.basis_matrices()) {
        Gf2Matrix g = Gf2Matrix::zero(n2, p2);
        for (int c = 0; c < p2; ++c) {
            uint64_t col = 0;
            for (int i = 0; i < v.n; ++i) col |= static_cast<uint64_t>(a.get(i, comp[c])) << i;
            uint64_t coords = im_coords(col);
            for (int i = 0; i < n2; ++i)
                if ((coords >> i) & 1) g.set(i, c, 1);
        }
        gens.push_back(g);
    }
    out.space = span(gens, n2, p2);
    return out;
}

MatrixSpace tilde_embed(const MatrixSpace& w, int n, int p) {
    if (w.n > n || w.p > p) throw std::invalid_argument("tilde_embed: target shape too small");
    check_space_shape(n, p);
    std::vector<Gf2Matrix> gens;
    for (const auto& b : w.basis_matrices()) {
        Gf2Matrix g = Gf2Matrix::zero(n, p);
        for (int i = 0; i < w.n; ++i) g.rows[i] = b.rows[i];
        gens.push_back(g);
    }
    return span(gens, n, p);
}

MatrixSpace vee_join(const MatrixSpace& a, const MatrixSpace& b) {
    if (a.n != a.p || b.n != b.p) throw std::invalid_argument("vee_join: square spaces required");
    int n = a.n, p = b.n;
    check_space_shape(n + p, n + p);
    std::vector<Gf2Matrix> gens;
    for (const auto& m : a.basis_matrices()) {
        Gf2Matrix g = Gf2Matrix::zero(n + p, n + p);
        for (int i = 0; i < n; ++i) g.rows[i] = m.rows[i];
        gens.push_back(g);
    }
    for (const auto& m : b.basis_matrices()) {
        Gf2Matrix g = Gf2Matrix::zero(n + p, n + p);
        for (int i = 0; i < p; ++i) g.rows[n + i] = static_cast<uint8_t>(m.rows[i] << n);
        gens.push_back(g);
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < p; ++j) gens.push_back(Gf2Matrix::elementary(n + p, n + p, i, n + j));
    return span(gens, n + p, n + p);
}

VectorSpaceF2 evaluation_image(const MatrixSpace& v, const Gf2Vector& x) {
    if (x.len != v.p) throw std::invalid_argument("evaluation_image: vector length mismatch");
    std::vector<uint64_t> gens;
    for (const auto& b : v.basis_matrices()) gens.push_back(apply(b, x).bits);
    return span_vectors(v.n, gens);
}

int evaluation_dim(const MatrixSpace& v, uint64_t x_bits) {
    std::vector<uint64_t> basis;
    for (const auto& b : v.basis_matrices()) {
        uint64_t y = 0;
        for (int i = 0; i < v.n; ++i)
            y |= static_cast<uint64_t>(std::popcount(static_cast<unsigned>(b.rows[i] & x_bits)) & 1) << i;
        rref::insert(basis, y);
    }
    return static_cast<int>(basis.size());
}

MatrixSpace dual_space(const MatrixSpace& v) {
    if (!is_reduced_space(v))
        throw std::invalid_argument("dual_space: input must be reduced");
    int m = v.dim();
    auto mats = v.basis_matrices();
    std::vector<Gf2Matrix> gens;
    for (int j = 0; j < v.p; ++j) {
        Gf2Matrix g = Gf2Matrix::zero(v.n, m);
        for (int k = 0; k < m; ++k)
            for (int i = 0; i < v.n; ++i)
                if (mats[k].get(i, j)) g.set(i, k, 1);
        gens.push_back(g);
    }
    return span(gens, v.n, m);
}

MatrixSpace transpose_space(const MatrixSpace& v) {
    std::vector<Gf2Matrix> gens;
    for (const auto& b : v.basis_matrices()) gens.push_back(transpose(b));
    return span(gens, v.p, v.n);
}

bool block_identity_check(const Gf2Matrix& m) {
    if (m.nrows < 3 || m.ncols < 3)
        throw std::invalid_argument("block_identity_check: needs n,p >= 3");
    Gf2Matrix a = submatrix(m, 0, 2, 0, 2);
    Gf2Matrix b = submatrix(m, 2, m.nrows, 0, 2);
    Gf2Matrix c = submatrix(m, 0, 2, 2, m.ncols);
    Gf2Matrix d = submatrix(m, 2, m.nrows, 2, m.ncols);
    Gf2Matrix rhs = mul(mul(b, adjugate(a)), c);
    if (det(a) == 0) return rhs.is_zero();
    return rhs == d;
}

std::string to_space_text(const MatrixSpace& v) {
    std::string out = "span:";
    if (v.dim() == 0) return out + to_hex(Gf2Matrix::zero(v.n, v.p));
    bool first = true;
    for (const auto& b : v.basis_matrices()) {
        if (!first) out += '|';
        first = false;
        out += to_hex(b);
    }
    return out;
}

std::string to_space_text(const AffineMatrixSpace& s) {
    std::string out = "affine:" + to_hex(s.base);
    for (const auto& b : s.translation.basis_matrices()) out += '|' + to_hex(b);
    return out;
}

namespace {

std::vector<Gf2Matrix> split_matrices(const std::string& body) {
    std::vector<Gf2Matrix> out;
    size_t start = 0;
    while (start <= body.size()) {
        size_t bar = body.find('|', start);
        std::string piece = body.substr(start, bar == std::string::npos ? bar : bar - start);
        if (!piece.empty()) out.push_back(matrix_from_hex(piece));
        if (bar == std::string::npos) break;
        start = bar + 1;
    }
    return out;
}

}  // namespace

AffineMatrixSpace space_from_text(const std::string& s) {
    if (s.rfind("span:", 0) == 0) {
        auto mats = split_matrices(s.substr(5));
        if (mats.empty()) throw std::invalid_argument("space_from_text: empty span");
        return AffineMatrixSpace::linear(span(mats));
    }
    if (s.rfind("affine:", 0) == 0) {
        auto mats = split_matrices(s.substr(7));
        if (mats.empty()) throw std::invalid_argument("space_from_text: empty affine space");
        Gf2Matrix base = mats[0];
        mats.erase(mats.begin());
        MatrixSpace tr = mats.empty() ? MatrixSpace::zero(base.nrows, base.ncols) : span(mats);
        return AffineMatrixSpace::make(base, tr);
    }
    throw std::invalid_argument("space_from_text: expected span: or affine: prefix");
}

}  // namespace f2rank2
