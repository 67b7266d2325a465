#include "f2rank2/predicates.hpp"

#include <bit>
#include <stdexcept>

namespace f2rank2 {

namespace {

int rank_flat(const MatrixSpace& v, uint64_t bits) {
    if (v.n * v.p <= 16) return rank_table(v.n, v.p)[bits];
    return rank(Gf2Matrix::unflatten(bits, v.n, v.p));
}

}  // namespace

int upper_rank(const MatrixSpace& v) {
    if (v.dim() > 20) throw std::invalid_argument("upper_rank: dim > 20");
    int best = 0;
    int cap = std::min<int>(v.n, v.p);
    uint64_t cur = 0;
    for (uint64_t c = 1; c < (1ull << v.dim()); ++c) {
        cur ^= v.basis[std::countr_zero(c)];
        int r = rank_flat(v, cur);
        if (r > best) {
            best = r;
            if (best == cap) return best;
        }
    }
    return best;
}

bool is_reduced(const MatrixSpace& v) { return is_reduced_space(v); }

namespace {

// Basis of the kernel of a non-zero functional phi on F2^len.
std::vector<uint64_t> functional_kernel_basis(int len, uint64_t phi) {
    std::vector<uint64_t> out;
    int lead = 63 - std::countl_zero(phi);
    for (int j = 0; j < len; ++j) {
        if (j == lead) continue;
        uint64_t w = 1ull << j;
        if ((phi >> j) & 1) w |= 1ull << lead;
        out.push_back(w);
    }
    return out;
}

}  // namespace

MatrixSpace restrict_to_source(const MatrixSpace& v, const std::vector<uint64_t>& w_basis) {
    int k = static_cast<int>(w_basis.size());
    if (k == 0) return MatrixSpace::zero(v.n, 1);
    std::vector<Gf2Matrix> gens;
    for (const auto& a : v.basis_matrices()) {
        Gf2Matrix g = Gf2Matrix::zero(v.n, k);
        for (int c = 0; c < k; ++c) {
            for (int i = 0; i < v.n; ++i) {
                int bit = std::popcount(static_cast<unsigned>(a.rows[i] & w_basis[c])) & 1;
                if (bit) g.set(i, c, 1);
            }
        }
        gens.push_back(g);
    }
    return span(gens, v.n, std::max(k, 1));
}

bool satisfies_iii(const MatrixSpace& v, int r) {
    if (v.p < 2) return false;
    for (uint64_t phi = 1; phi < (1ull << v.p); ++phi) {
        auto w = functional_kernel_basis(v.p, phi);
        if (upper_rank(restrict_to_source(v, w)) < r) return false;
    }
    return true;
}

bool satisfies_iv(const MatrixSpace& v, int r) {
    if (v.n < 2) return false;
    for (uint64_t d = 1; d < (1ull << v.n); ++d) {
        // Quotient F2^n -> F2^n/<d>: drop the leading coordinate of d after
        // reducing by d.
        int lead = 63 - std::countl_zero(d);
        std::vector<Gf2Matrix> gens;
        for (const auto& a : v.basis_matrices()) {
            Gf2Matrix g = Gf2Matrix::zero(v.n - 1, v.p);
            int out_row = 0;
            for (int i = 0; i < v.n; ++i) {
                if (i == lead) continue;
                uint8_t row = a.rows[i];
                if ((d >> i) & 1) row ^= a.rows[lead];
                g.rows[out_row++] = row;
            }
            gens.push_back(g);
        }
        if (upper_rank(span(gens, v.n - 1, v.p)) < r) return false;
    }
    return true;
}

bool is_semi_primitive(const MatrixSpace& v) {
    if (!is_reduced(v)) return false;
    return satisfies_iii(v, upper_rank(v));
}

bool is_primitive(const MatrixSpace& v) {
    if (!is_reduced(v)) return false;
    int r = upper_rank(v);
    return satisfies_iii(v, r) && satisfies_iv(v, r);
}

bool is_rank_constant_2(const MatrixSpace& v) {
    if (v.dim() == 0) return false;
    uint64_t cur = 0;
    for (uint64_t c = 1; c < (1ull << v.dim()); ++c) {
        cur ^= v.basis[std::countr_zero(c)];
        if (rank_flat(v, cur) != 2) return false;
    }
    return true;
}

bool has_trivial_spectrum(const MatrixSpace& v) {
    if (v.n != v.p) throw std::invalid_argument("has_trivial_spectrum: square spaces only");
    uint64_t id = Gf2Matrix::identity(v.n).flatten();
    uint64_t cur = 0;
    if (rank_flat(v, id) != v.n) return false;
    for (uint64_t c = 1; c < (1ull << v.dim()); ++c) {
        cur ^= v.basis[std::countr_zero(c)];
        if (rank_flat(v, cur ^ id) != v.n) return false;
    }
    return true;
}

bool is_irreducible_action(const MatrixSpace& v) {
    if (v.n != v.p) throw std::invalid_argument("is_irreducible_action: square spaces only");
    if (v.n > 4) throw std::invalid_argument("is_irreducible_action: n <= 4 only");
    auto mats = v.basis_matrices();
    // Enumerate proper non-zero subspaces F of F2^n by spanning subsets.
    std::vector<std::vector<uint64_t>> seen;
    for (uint64_t gens = 1; gens < (1ull << ((1u << v.n) - 1)); ++gens) {
        std::vector<uint64_t> f;
        uint64_t g = gens;
        while (g) {
            int x = std::countr_zero(g);
            g &= g - 1;
            rref::insert(f, static_cast<uint64_t>(x + 1));
        }
        if (static_cast<int>(f.size()) >= v.n) continue;
        bool invariant = true;
        for (uint64_t b : f) {
            for (const auto& a : mats) {
                uint64_t y = 0;
                for (int i = 0; i < v.n; ++i)
                    y |= static_cast<uint64_t>(std::popcount(static_cast<unsigned>(a.rows[i] & b)) & 1)
                         << i;
                if (!rref::contains(f, y)) { invariant = false; break; }
            }
            if (!invariant) break;
        }
        if (invariant) return false;
    }
    return true;
}

bool is_lld(const MatrixSpace& v) {
    if (v.dim() == 0) return false;
    for (uint64_t x = 1; x < (1ull << v.p); ++x)
        if (evaluation_dim(v, x) >= v.dim()) return false;
    return true;
}

std::vector<MatrixSpace> hyperplane_subspaces(const MatrixSpace& v) {
    std::vector<MatrixSpace> out;
    int d = v.dim();
    for (uint64_t phi = 1; phi < (1ull << d); ++phi) {
        MatrixSpace h = MatrixSpace::zero(v.n, v.p);
        for (uint64_t w : functional_kernel_basis(d, phi)) {
            uint64_t vec = 0;
            uint64_t ww = w;
            while (ww) {
                int k = std::countr_zero(ww);
                ww &= ww - 1;
                vec ^= v.basis[k];
            }
            rref::insert(h.basis, vec);
        }
        out.push_back(std::move(h));
    }
    return out;
}

bool is_minimal_lld(const MatrixSpace& v) {
    if (!is_lld(v)) return false;
    for (const auto& h : hyperplane_subspaces(v))
        if (is_lld(h)) return false;
    return true;
}

bool is_maximal_with_urk(const MatrixSpace& v, int r) {
    if (v.n * v.p > 16) throw std::invalid_argument("is_maximal_with_urk: n*p <= 16 only");
    if (upper_rank(v) > r) throw std::invalid_argument("is_maximal_with_urk: upper rank already exceeds r");
    const auto& ranks = rank_table(v.n, v.p);
    auto els = elements_flat(v);
    for (uint64_t m = 0; m < (1ull << (v.n * v.p)); ++m) {
        if (v.contains_flat(m)) continue;
        bool raises = false;
        for (uint64_t e : els)
            if (ranks[m ^ e] > r) { raises = true; break; }
        if (!raises) return false;
    }
    return true;
}

MatrixSpace j3_space() {
    std::vector<Gf2Matrix> gens;
    Gf2Matrix a = Gf2Matrix::zero(3, 3);
    a.set(0, 0, 1);
    a.set(1, 1, 1);
    Gf2Matrix b = Gf2Matrix::zero(3, 3);
    b.set(1, 1, 1);
    b.set(2, 2, 1);
    gens.push_back(a);
    gens.push_back(b);
    gens.push_back(Gf2Matrix::elementary(3, 3, 0, 1));
    gens.push_back(Gf2Matrix::elementary(3, 3, 0, 2));
    gens.push_back(Gf2Matrix::elementary(3, 3, 1, 2));
    return span(gens, 3, 3);
}

VectorSpaceF2 trace_zero_hyperplane3() { return span_vectors(3, {0b011, 0b110}); }

bool j3_primitivity_criterion(const MatrixSpace& v) {
    if (!v.subset_of(j3_space())) throw std::invalid_argument("j3_primitivity_criterion: V not inside J3");
    std::vector<uint64_t> diag_gens;
    for (const auto& m : v.basis_matrices()) {
        uint64_t d = 0;
        for (int i = 0; i < 3; ++i) d |= static_cast<uint64_t>(m.get(i, i)) << i;
        diag_gens.push_back(d);
    }
    return span_vectors(3, diag_gens) == trace_zero_hyperplane3();
}

}  // namespace f2rank2
