#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace f2rank2 {

// Dense n x p matrix over F2, n,p <= 8. Row i is the bitmask rows[i],
// bit j = entry (i,j). Bits at positions >= ncols are always zero.
struct Gf2Matrix {
    uint8_t nrows = 0;
    uint8_t ncols = 0;
    std::array<uint8_t, 8> rows{};

    static Gf2Matrix zero(int n, int p);
    static Gf2Matrix identity(int n);
    // E_{i,j}: single 1 at the (i,j)-spot (0-indexed)
    static Gf2Matrix elementary(int n, int p, int i, int j);

    int get(int i, int j) const { return (rows[i] >> j) & 1; }
    void set(int i, int j, int v);
    bool is_square() const { return nrows == ncols; }
    bool is_zero() const;

    // Row-major flattening: bit (i*ncols + j) = entry (i,j).
    uint64_t flatten() const;
    static Gf2Matrix unflatten(uint64_t bits, int n, int p);

    // Row-concatenated integer with row 0 most significant; this is the
    // serialization order used by hex output and group enumeration.
    uint64_t serial() const;

    bool operator==(const Gf2Matrix&) const = default;
    auto operator<=>(const Gf2Matrix&) const = default;
};

Gf2Matrix add(const Gf2Matrix& a, const Gf2Matrix& b);
Gf2Matrix mul(const Gf2Matrix& a, const Gf2Matrix& b);
Gf2Matrix transpose(const Gf2Matrix& m);
Gf2Matrix submatrix(const Gf2Matrix& m, int r0, int r1, int c0, int c1);

// F2-rank by row reduction.
int rank(const Gf2Matrix& m);
// Determinant (0/1). Rejects non-square input.
int det(const Gf2Matrix& m);
// Transpose of the cofactor matrix; M * adj(M) = det(M) * I. n <= 3 only.
Gf2Matrix adjugate(const Gf2Matrix& m);
std::optional<Gf2Matrix> inverse(const Gf2Matrix& m);

// Column vector over F2, len <= 64, bit i = coordinate i.
struct Gf2Vector {
    uint8_t len = 0;
    uint64_t bits = 0;

    int get(int i) const { return (bits >> i) & 1; }
    bool operator==(const Gf2Vector&) const = default;
    auto operator<=>(const Gf2Vector&) const = default;
};

Gf2Vector apply(const Gf2Matrix& m, const Gf2Vector& x);  // m * x

// Polynomial over F2, bit k of coeffs = coefficient of t^k.
struct Gf2Poly {
    uint32_t coeffs = 0;

    int degree() const;  // -1 for the zero polynomial
    int eval(int x) const;
    std::string to_string() const;  // e.g. "t^3+t+1"

    bool operator==(const Gf2Poly&) const = default;
};

Gf2Poly poly_add(Gf2Poly a, Gf2Poly b);
Gf2Poly poly_mul(Gf2Poly a, Gf2Poly b);

// Characteristic polynomial of a square matrix, n <= 5, by cofactor
// expansion of tI + M over F2[t]. Monic of degree n; charpoly(M)(1) = det(M+I).
Gf2Poly charpoly(const Gf2Matrix& m);

// All of GL_n(F2) in ascending serial() order. n <= 4.
std::vector<Gf2Matrix> enumerate_group(int n);
// Cached copy of enumerate_group(n).
const std::vector<Gf2Matrix>& gl_group(int n);
// gl_inverse_index(n)[k] = position of gl_group(n)[k]^-1 within gl_group(n).
const std::vector<uint32_t>& gl_inverse_index(int n);

// Quadratic form q(X) = X^T P X with its unique upper-triangular
// representative (entries strictly below the diagonal are zero).
struct QuadForm {
    uint8_t n = 0;
    Gf2Matrix rep;

    // Reduces an arbitrary representing matrix to the upper-triangular one.
    static QuadForm from_matrix(const Gf2Matrix& p);
    int eval(const Gf2Vector& x) const;

    bool operator==(const QuadForm&) const = default;
};

// Basis of Mata_n(F2) (alternating matrices), pairs (i,j) i<j in lex order.
std::vector<Gf2Matrix> alternating_basis(int n);

// Scans the coset rep + Mata_n(F2) for a non-singular matrix representing q.
// Odd n in {3,5} only; the underlying statement is about odd n.
std::optional<Gf2Matrix> quadform_has_nonsingular_rep(const QuadForm& q);

// Text format, bit-exact: rows joined by ';', entries '0'/'1' joined by ','.
std::string to_text(const Gf2Matrix& m);
Gf2Matrix matrix_from_text(const std::string& s);

// Hex format: "<n>x<p>:h<HEX>", each row in fixed-width uppercase hex
// (ceil(p/4) digits), row 0 first (most significant).
std::string to_hex(const Gf2Matrix& m);
Gf2Matrix matrix_from_hex(const std::string& s);

// rank() of the matrix with flattening `bits` at shape (n,p), via a cached
// per-shape lookup table. Requires n*p <= 16.
const std::vector<uint8_t>& rank_table(int n, int p);

}  // namespace f2rank2
