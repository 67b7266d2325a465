#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "f2rank2/gf2.hpp"

namespace f2rank2 {

// Canonical reduced-row-echelon bases over F2, vectors as bitmask integers.
// Basis vectors are kept in decreasing order (equivalently, decreasing pivot,
// pivot = most significant set bit), each pivot bit is set in exactly one
// basis vector. Two equal subspaces always have identical bases.
namespace rref {

inline int pivot(uint64_t v) { return 63 - std::countl_zero(v); }

// Residue of v modulo the span; this is the minimum element of the coset
// v + span in integer order.
uint64_t reduce(const std::vector<uint64_t>& basis, uint64_t v);

// Inserts v, restoring RREF. Returns false if v was already in the span.
bool insert(std::vector<uint64_t>& basis, uint64_t v);

bool contains(const std::vector<uint64_t>& basis, uint64_t v);

}  // namespace rref

// Linear subspace of Mat_{n,p}(F2) in canonical RREF basis over the
// flattened coordinate space F2^{n*p} (row-major, bit i*p+j = entry (i,j)).
struct MatrixSpace {
    uint8_t n = 0;
    uint8_t p = 0;
    std::vector<uint64_t> basis;

    static MatrixSpace zero(int n, int p);
    static MatrixSpace full(int n, int p);

    int dim() const { return static_cast<int>(basis.size()); }
    bool contains(const Gf2Matrix& m) const;
    bool contains_flat(uint64_t bits) const { return rref::contains(basis, bits); }
    bool subset_of(const MatrixSpace& w) const;
    std::vector<Gf2Matrix> basis_matrices() const;
    Gf2Matrix basis_matrix(int k) const { return Gf2Matrix::unflatten(basis[k], n, p); }

    bool operator==(const MatrixSpace&) const = default;
    auto operator<=>(const MatrixSpace&) const = default;
};

// Linear subspace of F2^len with the same RREF canonicity.
struct VectorSpaceF2 {
    uint8_t len = 0;
    std::vector<uint64_t> basis;

    static VectorSpaceF2 zero(int len);
    int dim() const { return static_cast<int>(basis.size()); }
    bool contains(uint64_t v) const { return rref::contains(basis, v); }

    bool operator==(const VectorSpaceF2&) const = default;
};

VectorSpaceF2 span_vectors(int len, const std::vector<uint64_t>& gens);

// Affine subspace base + translation. The stored base is normalized to the
// minimal element of the affine set (minimal flattened serialization), so
// equal affine sets have equal representations.
struct AffineMatrixSpace {
    Gf2Matrix base;
    MatrixSpace translation;

    static AffineMatrixSpace make(const Gf2Matrix& base, const MatrixSpace& translation);
    static AffineMatrixSpace linear(const MatrixSpace& translation);

    bool is_linear() const { return base.is_zero(); }
    bool contains(const Gf2Matrix& m) const;

    bool operator==(const AffineMatrixSpace&) const = default;
};

MatrixSpace span(const std::vector<Gf2Matrix>& generators, int n, int p);
// Shape taken from the generators; rejects an empty list or mixed shapes.
MatrixSpace span(const std::vector<Gf2Matrix>& generators);

// All 2^dim elements, deterministic Gray-code order starting at 0. dim <= 20.
std::vector<Gf2Matrix> elements(const MatrixSpace& v);
std::vector<uint64_t> elements_flat(const MatrixSpace& v);

// Intersection of the kernels of all matrices of V, as a subspace of F2^p.
VectorSpaceF2 common_kernel(const MatrixSpace& v);
// Span of all ranges, as a subspace of F2^n.
VectorSpaceF2 image_sum(const MatrixSpace& v);
// Conditions (i) and (ii): zero common kernel and full image sum.
bool is_reduced_space(const MatrixSpace& v);

// Kernel of a single matrix as a subspace of F2^p.
VectorSpaceF2 kernel(const Gf2Matrix& m);

struct ReducedSpace {
    MatrixSpace space;
    int n = 0;
    int p = 0;
};

// The reduced operator space: every matrix induces a map from a complement
// of the common kernel onto coordinates of the image sum. Preserves dim and
// upper rank. The complement is spanned by the standard basis vectors at the
// non-pivot positions of the common kernel.
ReducedSpace reduced_space(const MatrixSpace& v);

// Zero-pads every basis matrix of W to shape (n,p).
MatrixSpace tilde_embed(const MatrixSpace& w, int n, int p);

// Block upper-triangular join: diagonal blocks from A and B, free
// off-diagonal block. dim = dim A + dim B + A.n * B.n.
MatrixSpace vee_join(const MatrixSpace& a, const MatrixSpace& b);

// span of { Mx : M in V }.
VectorSpaceF2 evaluation_image(const MatrixSpace& v, const Gf2Vector& x);
int evaluation_dim(const MatrixSpace& v, uint64_t x_bits);

// Dual operator space of a reduced V: the space in Mat_{n, dim V} spanned by
// [A_1 x | ... | A_m x] for x over the standard basis of F2^p, where
// (A_1,...,A_m) is the canonical basis of V. Rejects non-reduced input.
MatrixSpace dual_space(const MatrixSpace& v);

MatrixSpace transpose_space(const MatrixSpace& v);

// Block identity for M split along a 2x2 top-left block A, with B below A,
// C right of A and D the residual block:
//   det(A) * D == B * adj(A) * C.
// Holds whenever rk M <= 2. Needs n,p >= 3.
bool block_identity_check(const Gf2Matrix& m);

// Space text format: "span:" (or "affine:" with the base first) followed by
// hex matrix serializations joined by '|'.
std::string to_space_text(const MatrixSpace& v);
std::string to_space_text(const AffineMatrixSpace& s);
AffineMatrixSpace space_from_text(const std::string& s);

}  // namespace f2rank2
