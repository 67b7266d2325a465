#pragma once

#include "f2rank2/space.hpp"

namespace f2rank2 {

// Max rank over all 2^dim elements. dim <= 20.
int upper_rank(const MatrixSpace& v);

// Conditions (i)+(ii): zero common kernel, full image sum.
bool is_reduced(const MatrixSpace& v);

// Condition (iii) at upper rank r: for every hyperplane W of F2^p, the
// restriction of V to W (columns re-expressed in a basis of W) still has
// upper rank >= r. Equivalent to "V is not equivalent to a space whose last
// column can be deleted at upper rank <= r-1", since equivalence acts by
// basis change on the source.
bool satisfies_iii(const MatrixSpace& v, int r);
// Condition (iv): dual statement over every line D of F2^n and the
// compositions with the quotient F2^n -> F2^n/D.
bool satisfies_iv(const MatrixSpace& v, int r);

bool is_semi_primitive(const MatrixSpace& v);  // (i)+(ii)+(iii)
bool is_primitive(const MatrixSpace& v);       // (i)+(ii)+(iii)+(iv)

// Every non-zero element has rank exactly 2.
bool is_rank_constant_2(const MatrixSpace& v);

// Over F2: det(M + I) = 1 for every element M. Square spaces only.
bool has_trivial_spectrum(const MatrixSpace& v);

// No proper non-zero subspace F of F2^n with V F inside F. Square, n <= 4.
bool is_irreducible_action(const MatrixSpace& v);

// Every x in F2^p is annihilated by some non-zero element; requires dim >= 1.
bool is_lld(const MatrixSpace& v);
// LLD with no LLD proper subspace. Checked over the hyperplanes of V: any
// LLD proper subspace sits inside a hyperplane, and LLD passes upward to the
// hyperplane, so the hyperplane scan decides minimality.
bool is_minimal_lld(const MatrixSpace& v);

// No matrix outside V can be added without raising the upper rank above r.
// Needs n*p <= 16 and upper_rank(V) <= r.
bool is_maximal_with_urk(const MatrixSpace& v, int r);

// For subspaces of J3 (upper-triangular trace-zero 3x3): the diagonal
// vectors of V span the full trace-zero hyperplane of F2^3. Coincides with
// primitivity at upper rank 2 on subspaces of J3. Rejects V not inside J3.
bool j3_primitivity_criterion(const MatrixSpace& v);

// The 2^d - 1 hyperplane subspaces of V (kernels of non-zero functionals on
// coordinates), deterministic order.
std::vector<MatrixSpace> hyperplane_subspaces(const MatrixSpace& v);

// Restriction of V to the subspace of F2^p spanned by the given columns:
// matrices [A w_1 | ... | A w_k].
MatrixSpace restrict_to_source(const MatrixSpace& v, const std::vector<uint64_t>& w_basis);

// J3(F2) as a fixed object (used by the criterion and a few suites).
MatrixSpace j3_space();
// The upper-triangular trace-zero hyperplane of F2^3 as a vector space.
VectorSpaceF2 trace_zero_hyperplane3();

}  // namespace f2rank2
