#pragma once

#include <optional>
#include <string>

#include "f2rank2/space.hpp"

namespace f2rank2 {

enum class GroupAction : uint8_t { Equivalence = 0, Similarity = 1 };

// Total-order serialization of a space minimized over a group orbit.
// payload is the RREF basis (descending masks) of the minimal orbit image;
// equal keys certify equivalent (resp. similar) spaces.
struct CanonicalKey {
    uint8_t n = 0;
    uint8_t p = 0;
    GroupAction action = GroupAction::Equivalence;
    std::vector<uint64_t> payload;

    bool operator==(const CanonicalKey&) const = default;
    auto operator<=>(const CanonicalKey&) const = default;
};

struct Witness {
    Gf2Matrix P;
    Gf2Matrix Q;  // Q = P^-1 for similarity
};

MatrixSpace apply_action(const Gf2Matrix& P, const MatrixSpace& v, const Gf2Matrix& Q);
MatrixSpace conjugate_space(const Gf2Matrix& P, const MatrixSpace& v);

// Lexicographic minimum of the RREF serialization over GL_n x GL_p.
// Supported shapes: n,p <= 4 with min(n,p) <= 3 (a 20160^2 scan is out of
// budget); everything else is rejected.
CanonicalKey canonical_equiv(const MatrixSpace& v);
// Same under conjugation; square, n <= 4.
CanonicalKey canonical_sim(const MatrixSpace& v);

// The canonical representative encoded by a key.
MatrixSpace space_from_key(const CanonicalKey& key);

// Witness (P,Q) with P V Q = W, or absent. The witness is re-applied and
// checked before returning.
std::optional<Witness> are_equivalent(const MatrixSpace& v, const MatrixSpace& w);
// Conjugating witness (Q = P^-1), or absent.
std::optional<Witness> are_similar(const MatrixSpace& v, const MatrixSpace& w);
// (P,Q) mapping the affine set S onto T: P H_S Q = H_T and P base_S Q in T.
// Square shape, n = 3.
std::optional<Witness> affine_equivalent(const AffineMatrixSpace& s, const AffineMatrixSpace& t);

// Whether some orbit image P V Q lies inside W.
bool embeds_into(const MatrixSpace& v, const MatrixSpace& w);

// Persistent canonical-key cache. One append-only file per (action, shape),
// header "f2rank2-cache v1 <n>x<p>", then "<rref-hex> <canon-hex>" records.
// An empty directory name disables persistence; the in-memory cache is
// always active.
void set_cache_dir(const std::string& dir);
const std::string& cache_dir();

struct CacheStats {
    size_t entries = 0;
    size_t hits = 0;
    size_t misses = 0;
};
CacheStats cache_stats();
void reset_cache();  // drops in-memory entries and counters (files untouched)

// J2 = I_2 padded to n x p.
Gf2Matrix j2_matrix(int n, int p);

// The stabilizer of J2 in GL_n x GL_p, i.e. all (P,Q) with P J2 Q = J2,
// listed P-major. Sizes: 96 at 3x3, 2304 at 3x4/4x3, 55296 at 4x4.
const std::vector<Witness>& j2_stabilizer(int n, int p);

// Minimal RREF serialization over the J2-stabilizer orbit. This refines true
// equivalence (never merges inequivalent spaces) and is cheap enough for the
// shapes where the full orbit scan is not.
std::vector<uint64_t> stab_canonical_payload(int n, int p, const std::vector<uint64_t>& basis);

}  // namespace f2rank2
