#include "f2rank2/gf2.hpp"

#include <bit>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace f2rank2 {

namespace {

void check_shape(int n, int p) {
    if (n < 1 || n > 8 || p < 1 || p > 8)
        throw std::invalid_argument("matrix shape out of range (1..8)");
}

}  // namespace

Gf2Matrix Gf2Matrix::zero(int n, int p) {
    check_shape(n, p);
    Gf2Matrix m;
    m.nrows = static_cast<uint8_t>(n);
    m.ncols = static_cast<uint8_t>(p);
    return m;
}

Gf2Matrix Gf2Matrix::identity(int n) {
    Gf2Matrix m = zero(n, n);
    for (int i = 0; i < n; ++i) m.rows[i] = static_cast<uint8_t>(1u << i);
    return m;
}

Gf2Matrix Gf2Matrix::elementary(int n, int p, int i, int j) {
    Gf2Matrix m = zero(n, p);
    m.set(i, j, 1);
    return m;
}

void Gf2Matrix::set(int i, int j, int v) {
    if (i < 0 || i >= nrows || j < 0 || j >= ncols)
        throw std::out_of_range("matrix index out of range");
    if (v & 1)
        rows[i] |= static_cast<uint8_t>(1u << j);
    else
        rows[i] &= static_cast<uint8_t>(~(1u << j));
}

bool Gf2Matrix::is_zero() const {
    for (int i = 0; i < nrows; ++i)
        if (rows[i]) return false;
    return true;
}

uint64_t Gf2Matrix::flatten() const {
    uint64_t out = 0;
    for (int i = 0; i < nrows; ++i) out |= static_cast<uint64_t>(rows[i]) << (i * ncols);
    return out;
}

Gf2Matrix Gf2Matrix::unflatten(uint64_t bits, int n, int p) {
    Gf2Matrix m = zero(n, p);
    const uint64_t row_mask = (1u << p) - 1;
    for (int i = 0; i < n; ++i) m.rows[i] = static_cast<uint8_t>((bits >> (i * p)) & row_mask);
    return m;
}

uint64_t Gf2Matrix::serial() const {
    uint64_t out = 0;
    for (int i = 0; i < nrows; ++i) out = (out << ncols) | rows[i];
    return out;
}

Gf2Matrix add(const Gf2Matrix& a, const Gf2Matrix& b) {
    if (a.nrows != b.nrows || a.ncols != b.ncols)
        throw std::invalid_argument("add: shape mismatch");
    Gf2Matrix out = a;
    for (int i = 0; i < a.nrows; ++i) out.rows[i] ^= b.rows[i];
    return out;
}

Gf2Matrix mul(const Gf2Matrix& a, const Gf2Matrix& b) {
    if (a.ncols != b.nrows) throw std::invalid_argument("mul: shape mismatch");
    Gf2Matrix out = Gf2Matrix::zero(a.nrows, b.ncols);
    for (int i = 0; i < a.nrows; ++i) {
        uint8_t acc = 0;
        uint8_t row = a.rows[i];
        while (row) {
            int k = std::countr_zero(row);
            row &= static_cast<uint8_t>(row - 1);
            acc ^= b.rows[k];
        }
        out.rows[i] = acc;
    }
    return out;
}

Gf2Matrix transpose(const Gf2Matrix& m) {
    Gf2Matrix out = Gf2Matrix::zero(m.ncols, m.nrows);
    for (int i = 0; i < m.nrows; ++i)
        for (int j = 0; j < m.ncols; ++j)
            if (m.get(i, j)) out.rows[j] |= static_cast<uint8_t>(1u << i);
    return out;
}

Gf2Matrix submatrix(const Gf2Matrix& m, int r0, int r1, int c0, int c1) {
    if (r0 < 0 || r1 > m.nrows || c0 < 0 || c1 > m.ncols || r0 >= r1 || c0 >= c1)
        throw std::invalid_argument("submatrix: bad block");
    Gf2Matrix out = Gf2Matrix::zero(r1 - r0, c1 - c0);
    for (int i = r0; i < r1; ++i)
        out.rows[i - r0] = static_cast<uint8_t>((m.rows[i] >> c0) & ((1u << (c1 - c0)) - 1));
    return out;
}

int rank(const Gf2Matrix& m) {
    std::array<uint8_t, 8> a = m.rows;
    int r = 0;
    for (int j = 0; j < m.ncols && r < m.nrows; ++j) {
        int piv = -1;
        for (int i = r; i < m.nrows; ++i)
            if ((a[i] >> j) & 1) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(a[r], a[piv]);
        for (int i = 0; i < m.nrows; ++i)
            if (i != r && ((a[i] >> j) & 1)) a[i] ^= a[r];
        ++r;
    }
    return r;
}

int det(const Gf2Matrix& m) {
    if (!m.is_square()) throw std::invalid_argument("det: non-square matrix");
    return rank(m) == m.nrows ? 1 : 0;
}

Gf2Matrix adjugate(const Gf2Matrix& m) {
    if (!m.is_square()) throw std::invalid_argument("adjugate: non-square matrix");
    int n = m.nrows;
    if (n > 3) throw std::invalid_argument("adjugate: supported only for n <= 3");
    Gf2Matrix out = Gf2Matrix::zero(n, n);
    if (n == 1) {
        out.set(0, 0, 1);
        return out;
    }
    if (n == 2) {
        out.set(0, 0, m.get(1, 1));
        out.set(0, 1, m.get(0, 1));
        out.set(1, 0, m.get(1, 0));
        out.set(1, 1, m.get(0, 0));
        return out;
    }
    // adj(M)_{j,i} = minor of M with row i, column j deleted (signs vanish over F2)
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            int r0 = (i + 1) % 3, r1 = (i + 2) % 3;
            int c0 = (j + 1) % 3, c1 = (j + 2) % 3;
            int minor = (m.get(r0, c0) & m.get(r1, c1)) ^ (m.get(r0, c1) & m.get(r1, c0));
            out.set(j, i, minor);
        }
    return out;
}

std::optional<Gf2Matrix> inverse(const Gf2Matrix& m) {
    if (!m.is_square()) throw std::invalid_argument("inverse: non-square matrix");
    int n = m.nrows;
    std::array<uint8_t, 8> a = m.rows;
    std::array<uint8_t, 8> inv{};
    for (int i = 0; i < n; ++i) inv[i] = static_cast<uint8_t>(1u << i);
    for (int j = 0; j < n; ++j) {
        int piv = -1;
        for (int i = j; i < n; ++i)
            if ((a[i] >> j) & 1) { piv = i; break; }
        if (piv < 0) return std::nullopt;
        std::swap(a[j], a[piv]);
        std::swap(inv[j], inv[piv]);
        for (int i = 0; i < n; ++i)
            if (i != j && ((a[i] >> j) & 1)) {
                a[i] ^= a[j];
                inv[i] ^= inv[j];
            }
    }
    Gf2Matrix out = Gf2Matrix::zero(n, n);
    out.rows = inv;
    return out;
}

Gf2Vector apply(const Gf2Matrix& m, const Gf2Vector& x) {
    if (x.len != m.ncols) throw std::invalid_argument("apply: vector length mismatch");
    Gf2Vector out{m.nrows, 0};
    for (int i = 0; i < m.nrows; ++i)
        out.bits |= static_cast<uint64_t>(std::popcount(static_cast<unsigned>(m.rows[i] & x.bits)) & 1) << i;
    return out;
}

int Gf2Poly::degree() const { return coeffs == 0 ? -1 : 31 - std::countl_zero(coeffs); }

int Gf2Poly::eval(int x) const {
    if ((x & 1) == 0) return coeffs & 1;
    return std::popcount(coeffs) & 1;
}

std::string Gf2Poly::to_string() const {
    if (coeffs == 0) return "0";
    std::string out;
    for (int k = degree(); k >= 0; --k) {
        if (!((coeffs >> k) & 1)) continue;
        if (!out.empty()) out += "+";
        if (k == 0)
            out += "1";
        else if (k == 1)
            out += "t";
        else
            out += "t^" + std::to_string(k);
    }
    return out;
}

Gf2Poly poly_add(Gf2Poly a, Gf2Poly b) { return Gf2Poly{a.coeffs ^ b.coeffs}; }

Gf2Poly poly_mul(Gf2Poly a, Gf2Poly b) {
    uint32_t acc = 0;
    uint32_t x = a.coeffs;
    while (x) {
        int k = std::countr_zero(x);
        x &= x - 1;
        acc ^= b.coeffs << k;
    }
    return Gf2Poly{acc};
}

namespace {

// Determinant of a k x k matrix of polynomials by Laplace expansion along
// the first remaining row; rows/cols picked through index vectors.
Gf2Poly poly_det(const std::array<std::array<Gf2Poly, 5>, 5>& a, uint32_t col_mask, int row) {
    if (col_mask == 0) return Gf2Poly{1};
    Gf2Poly acc{0};
    uint32_t cols = col_mask;
    while (cols) {
        int j = std::countr_zero(cols);
        cols &= cols - 1;
        if (a[row][j].coeffs == 0) continue;
        Gf2Poly minor = poly_det(a, col_mask & ~(1u << j), row + 1);
        acc = poly_add(acc, poly_mul(a[row][j], minor));
    }
    return acc;
}

}  // namespace

Gf2Poly charpoly(const Gf2Matrix& m) {
    if (!m.is_square()) throw std::invalid_argument("charpoly: non-square matrix");
    int n = m.nrows;
    if (n > 5) throw std::invalid_argument("charpoly: supported only for n <= 5");
    std::array<std::array<Gf2Poly, 5>, 5> a{};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            uint32_t c = static_cast<uint32_t>(m.get(i, j));
            if (i == j) c ^= 2u;  // t on the diagonal: tI + M = tI - M over F2
            a[i][j] = Gf2Poly{c};
        }
    return poly_det(a, (1u << n) - 1, 0);
}

std::vector<Gf2Matrix> enumerate_group(int n) {
    if (n < 1 || n > 4) throw std::invalid_argument("enumerate_group: n must be in 1..4");
    std::vector<Gf2Matrix> out;
    const uint64_t total = 1ull << (n * n);
    for (uint64_t s = 0; s < total; ++s) {
        Gf2Matrix m = Gf2Matrix::zero(n, n);
        uint64_t v = s;
        const uint64_t row_mask = (1u << n) - 1;
        for (int i = n - 1; i >= 0; --i) {
            m.rows[i] = static_cast<uint8_t>(v & row_mask);
            v >>= n;
        }
        if (rank(m) == n) out.push_back(m);
    }
    return out;
}

const std::vector<Gf2Matrix>& gl_group(int n) {
    static std::mutex mu;
    static std::map<int, std::vector<Gf2Matrix>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, enumerate_group(n)).first;
    return it->second;
}

const std::vector<uint32_t>& gl_inverse_index(int n) {
    static std::mutex mu;
    static std::map<int, std::vector<uint32_t>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) {
        const auto& g = gl_group(n);
        std::map<uint64_t, uint32_t> pos;
        for (uint32_t k = 0; k < g.size(); ++k) pos[g[k].serial()] = k;
        std::vector<uint32_t> inv(g.size());
        for (uint32_t k = 0; k < g.size(); ++k) inv[k] = pos.at(inverse(g[k])->serial());
        it = cache.emplace(n, std::move(inv)).first;
    }
    return it->second;
}

QuadForm QuadForm::from_matrix(const Gf2Matrix& p) {
    if (!p.is_square()) throw std::invalid_argument("QuadForm: non-square matrix");
    QuadForm q;
    q.n = p.nrows;
    q.rep = Gf2Matrix::zero(p.nrows, p.ncols);
    for (int i = 0; i < p.nrows; ++i) {
        q.rep.set(i, i, p.get(i, i));
        for (int j = i + 1; j < p.ncols; ++j) q.rep.set(i, j, p.get(i, j) ^ p.get(j, i));
    }
    return q;
}

int QuadForm::eval(const Gf2Vector& x) const {
    if (x.len != n) throw std::invalid_argument("QuadForm::eval: length mismatch");
    int acc = 0;
    for (int i = 0; i < n; ++i) {
        if (!x.get(i)) continue;
        acc ^= std::popcount(static_cast<unsigned>(rep.rows[i] & x.bits)) & 1;
    }
    return acc;
}

std::vector<Gf2Matrix> alternating_basis(int n) {
    std::vector<Gf2Matrix> out;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Gf2Matrix m = Gf2Matrix::zero(n, n);
            m.set(i, j, 1);
            m.set(j, i, 1);
            out.push_back(m);
        }
    return out;
}

std::optional<Gf2Matrix> quadform_has_nonsingular_rep(const QuadForm& q) {
    if (q.n % 2 == 0) throw std::invalid_argument("quadform_has_nonsingular_rep: even n not supported");
    if (q.n != 3 && q.n != 5)
        throw std::invalid_argument("quadform_has_nonsingular_rep: n must be 3 or 5");
    auto basis = alternating_basis(q.n);
    const uint64_t total = 1ull << basis.size();
    for (uint64_t c = 0; c < total; ++c) {
        Gf2Matrix m = q.rep;
        uint64_t v = c;
        while (v) {
            int k = std::countr_zero(v);
            v &= v - 1;
            for (int i = 0; i < q.n; ++i) m.rows[i] ^= basis[k].rows[i];
        }
        if (rank(m) == q.n) return m;
    }
    return std::nullopt;
}

std::string to_text(const Gf2Matrix& m) {
    std::string out;
    for (int i = 0; i < m.nrows; ++i) {
        if (i) out += ';';
        for (int j = 0; j < m.ncols; ++j) {
            if (j) out += ',';
            out += m.get(i, j) ? '1' : '0';
        }
    }
    return out;
}

Gf2Matrix matrix_from_text(const std::string& s) {
    std::vector<std::vector<int>> grid(1);
    for (char ch : s) {
        if (ch == ' ') continue;
        if (ch == ';') {
            grid.emplace_back();
        } else if (ch == ',') {
            // separator only
        } else if (ch == '0' || ch == '1') {
            grid.back().push_back(ch - '0');
        } else {
            throw std::invalid_argument(std::string("matrix_from_text: bad character '") + ch + "'");
        }
    }
    size_t n = grid.size();
    size_t p = grid[0].size();
    if (p == 0) throw std::invalid_argument("matrix_from_text: empty input");
    for (const auto& row : grid)
        if (row.size() != p) throw std::invalid_argument("matrix_from_text: ragged rows");
    Gf2Matrix m = Gf2Matrix::zero(static_cast<int>(n), static_cast<int>(p));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < p; ++j) m.set(static_cast<int>(i), static_cast<int>(j), grid[i][j]);
    return m;
}

namespace {

int hex_row_width(int p) { return (p + 3) / 4; }

}  // namespace

std::string to_hex(const Gf2Matrix& m) {
    static const char* digits = "0123456789ABCDEF";
    std::string out = std::to_string(m.nrows) + "x" + std::to_string(m.ncols) + ":h";
    int w = hex_row_width(m.ncols);
    for (int i = 0; i < m.nrows; ++i)
        for (int d = w - 1; d >= 0; --d) out += digits[(m.rows[i] >> (4 * d)) & 0xF];
    return out;
}

Gf2Matrix matrix_from_hex(const std::string& s) {
    size_t x = s.find('x');
    size_t colon = s.find(":h");
    if (x == std::string::npos || colon == std::string::npos || x > colon)
        throw std::invalid_argument("matrix_from_hex: expected \"<n>x<p>:h<HEX>\"");
    int n = std::stoi(s.substr(0, x));
    int p = std::stoi(s.substr(x + 1, colon - x - 1));
    check_shape(n, p);
    std::string hex = s.substr(colon + 2);
    int w = hex_row_width(p);
    if (static_cast<int>(hex.size()) != n * w)
        throw std::invalid_argument("matrix_from_hex: wrong payload length");
    Gf2Matrix m = Gf2Matrix::zero(n, p);
    for (int i = 0; i < n; ++i) {
        uint32_t row = 0;
        for (int d = 0; d < w; ++d) {
            char c = hex[i * w + d];
            int v;
            if (c >= '0' && c <= '9')
                v = c - '0';
            else if (c >= 'A' && c <= 'F')
                v = c - 'A' + 10;
            else if (c >= 'a' && c <= 'f')
                v = c - 'a' + 10;
            else
                throw std::invalid_argument("matrix_from_hex: bad hex digit");
            row = (row << 4) | static_cast<uint32_t>(v);
        }
        if (row >= (1u << p)) throw std::invalid_argument("matrix_from_hex: row bits out of range");
        m.rows[i] = static_cast<uint8_t>(row);
    }
    return m;
}

const std::vector<uint8_t>& rank_table(int n, int p) {
    if (n * p > 16) throw std::invalid_argument("rank_table: n*p must be <= 16");
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::vector<uint8_t>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(n, p);
    auto it = cache.find(key);
    if (it == cache.end()) {
        std::vector<uint8_t> t(1ull << (n * p));
        for (uint64_t bits = 0; bits < t.size(); ++bits)
            t[bits] = static_cast<uint8_t>(rank(Gf2Matrix::unflatten(bits, n, p)));
        it = cache.emplace(key, std::move(t)).first;
    }
    return it->second;
}

}  // namespace f2rank2
