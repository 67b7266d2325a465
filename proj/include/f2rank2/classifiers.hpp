#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "f2rank2/orbits.hpp"
#include "f2rank2/space.hpp"

namespace f2rank2 {

struct CheckResult {
    std::string check;
    bool pass = false;
    std::string detail;
};

// Structured record of one verification suite. Pass iff every check passed.
// Wall time is diagnostic only and never part of serialized output.
struct ClassificationReport {
    std::string suite;
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<CheckResult> checks;
    std::vector<std::string> classes;  // generic-matrix display of computed classes
    double wall_seconds = 0.0;

    bool pass() const;
    void add(const std::string& check, bool ok, const std::string& detail = "");
    void param(const std::string& key, const std::string& value);
};

using ElementFilter = std::function<bool(uint64_t)>;
using SpacePredicate = std::function<bool(const MatrixSpace&)>;

ElementFilter rank_le_filter(int n, int p, int r);
ElementFilter singular_filter(int n);
ElementFilter trivial_spectrum_filter(int n);  // det(M + I) = 1
ElementFilter nilpotent_filter(int n);

// Breadth-first extension with canonical dedupe: start from the canonical
// dim-1 classes over matrices passing element_filter, extend each canonical
// representative by one pool matrix, keep spaces whose new elements pass the
// filter, dedupe by canonical key under the chosen action. element_filter
// must be invariant under that action. Output: classes[d] for d in 1..max_dim,
// each sorted by canonical key.
std::map<int, std::vector<MatrixSpace>> enumerate_classes_by_dim(int n, int p, int max_dim,
                                                                 const ElementFilter& element_filter,
                                                                 GroupAction action);

// Classes at exactly `dim` that additionally satisfy space_predicate.
std::vector<MatrixSpace> enumerate_classes(int n, int p, int dim, const ElementFilter& element_filter,
                                           const SpacePredicate& space_predicate, GroupAction action);

// J2-anchored scan over spaces of rank <= 2 matrices: every class of spaces
// with a rank-2 element has a representative containing J2, and extensions
// are deduped under Stab(J2) (a sound refinement of equivalence). Used for
// the shapes where the full orbit scan is out of budget.
struct AnchoredScan {
    int n = 0;
    int p = 0;
    std::vector<size_t> reps_per_dim;       // index d-1: Stab(J2)-orbit reps of dim d
    std::vector<MatrixSpace> predicate_hits;
};
AnchoredScan anchored_rank2_scan(int n, int p, int max_dim, const SpacePredicate& predicate);

// Counts of non-zero x with dim Vx = 2 and dim Vx = 3. Requires V inside
// Mat_3(F2) and rank-constant 2; n2 then equals 1 + 3 * 2^(4-d) for
// d = dim V in {3,4}.
std::pair<int, int> counting_check_n2(const MatrixSpace& v);

int trace(const Gf2Matrix& m);

// Invariant fingerprint used in classify output.
struct SpaceFingerprint {
    int dim = 0;
    int urk = 0;
    std::vector<int> rank_histogram;  // index r: elements of rank r
    int n2 = 0;                       // non-zero x with dim Vx = 2
    std::string to_string() const;
};
SpaceFingerprint fingerprint(const MatrixSpace& v);

// Verification suites. Each runs one theorem-level procedure and returns a
// report whose checks all pass iff the classification holds as stated.
ClassificationReport verify_catalog();
ClassificationReport verify_main_theorem();
ClassificationReport verify_j3_classification(int dim);
ClassificationReport verify_trivial_spectrum();
ClassificationReport verify_affine_nonsingular();
ClassificationReport verify_maximal_six();
ClassificationReport verify_lld_theorem();
ClassificationReport verify_r11_and_nonprimitive();

// Oracle-equivalence property suites. The oracles are independent
// implementations (minor search, direct group search) supplied by the
// caller; they live in test-only code.
struct CoreOracles {
    std::function<int(const Gf2Matrix&)> rank_by_minors;
    std::function<bool(const MatrixSpace&, int)> iii_by_group_search;
};
ClassificationReport verify_core_properties(uint64_t seed, const CoreOracles& oracles);

// Suite names: catalog|core|main|j3|lld|spectrum|affine|maximal|r11|all.
// "core" requires oracles; pass the same struct everywhere for uniformity.
std::vector<ClassificationReport> run_suite(const std::string& name, uint64_t seed,
                                            const CoreOracles& oracles);
bool known_suite(const std::string& name);

}  // namespace f2rank2
