// Acceptance suite: one pass/fail line per criterion, non-zero exit on any
// failure. Criteria with a stated runtime budget are timed and fail when the
// budget is exceeded.

#include <chrono>
#include <cstdio>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "f2rank2/catalog.hpp"
#include "f2rank2/classifiers.hpp"
#include "f2rank2/genmatrix.hpp"
#include "f2rank2/predicates.hpp"
#include "oracles.hpp"

using namespace f2rank2;

namespace {

struct Criterion {
    int id;
    std::string name;
    bool pass;
    double seconds;
    std::string detail;
};

std::vector<Criterion> results;

struct Clock {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void record(int id, const std::string& name, bool pass, double seconds, double budget,
            const std::string& detail = "") {
    bool in_budget = budget <= 0 || seconds < budget;
    results.push_back({id, name, pass && in_budget, seconds,
                       detail + (in_budget ? "" : " [over time budget]")});
}

bool report_pass(const ClassificationReport& rep, std::string& detail) {
    std::ostringstream os;
    bool ok = true;
    for (const auto& c : rep.checks) {
        if (!c.pass) {
            ok = false;
            os << c.check << " failed (" << c.detail << "); ";
        }
    }
    detail = os.str();
    return ok;
}

std::vector<uint64_t> ekey(const MatrixSpace& v) { return canonical_equiv(v).payload; }

MatrixSpace cat(const std::string& name) { return Catalog::instance().get(name).linear_space(); }

}  // namespace

int main() {
    const CoreOracles oracles = oracles::core_oracles();

    // 1. Main theorem: primitive urk-2 classes at 3x3, dims 2..5.
    {
        Clock c;
        auto by_dim =
            enumerate_classes_by_dim(3, 3, 5, rank_le_filter(3, 3, 2), GroupAction::Equivalence);
        const std::map<int, std::vector<std::string>> expected = {
            {2, {"J3dim2"}},
            {3, {"M1", "M2", "M3", "M4", "Mata3", "U3"}},
            {4, {"N1", "N2", "N3", "N4", "V3"}},
            {5, {"J3"}}};
        bool ok = true;
        std::ostringstream detail;
        int total = 0;
        std::map<int, std::map<std::vector<uint64_t>, MatrixSpace>> prim;
        for (int d = 2; d <= 5; ++d) {
            for (const auto& v : by_dim[d])
                if (upper_rank(v) == 2 && is_primitive(v)) prim[d].emplace(ekey(v), v);
            std::set<std::vector<uint64_t>> want;
            for (const auto& name : expected.at(d)) want.insert(ekey(cat(name)));
            if (want.size() != expected.at(d).size()) ok = false;  // pairwise inequivalent
            std::set<std::vector<uint64_t>> got;
            for (const auto& [k, v] : prim[d]) got.insert(k);
            if (got != want) {
                ok = false;
                detail << "dim " << d << " classes mismatch; ";
            }
            total += static_cast<int>(got.size());
        }
        bool v3_corollary = false;
        {
            std::set<std::vector<uint64_t>> rc;
            for (const auto& [k, v] : prim[4])
                if (is_rank_constant_2(v)) rc.insert(k);
            v3_corollary = rc.size() == 1 && *rc.begin() == ekey(cat("V3"));
        }
        detail << total << " classes, dim split 1/6/5/1";
        record(1, "main theorem class set at 3x3", ok && v3_corollary && total == 13, c.seconds(),
               600, detail.str());
    }

    // 2. Shape negativity at (3,4), (4,3), (4,4).
    {
        Clock c;
        bool ok = true;
        std::ostringstream detail;
        for (auto [n, p] : {std::pair{3, 4}, std::pair{4, 3}, std::pair{4, 4}}) {
            auto scan =
                anchored_rank2_scan(n, p, 8, [](const MatrixSpace& v) { return is_primitive(v); });
            if (!scan.predicate_hits.empty()) {
                ok = false;
                detail << n << "x" << p << " has primitive survivors; ";
            }
            size_t reps = 0;
            for (size_t r : scan.reps_per_dim) reps += r;
            detail << n << "x" << p << ":" << reps << " reps ";
        }
        record(2, "no primitive urk-2 class at 3x4, 4x3, 4x4", ok, c.seconds(), 1800, detail.str());
    }

    // 3. Counting claim n2 = 1 + 3*2^(4-d).
    {
        Clock c;
        bool ok = true;
        for (auto [name, want] : {std::pair<std::string, int>{"Mata3", 7}, {"U3", 7}, {"V3", 4}}) {
            auto v = cat(name);
            auto [n2, n3] = counting_check_n2(v);
            if (n2 != want || n2 != 1 + 3 * (1 << (4 - v.dim())) || n2 + n3 != 7) ok = false;
        }
        record(3, "counting claim n2 on Mata3, U3, V3", ok, c.seconds(), 0);
    }

    // 4. J3 invariant tables at dims 3 and 4.
    {
        Clock c;
        std::string d3, d4;
        bool ok3 = report_pass(verify_j3_classification(3), d3);
        bool ok4 = report_pass(verify_j3_classification(4), d4);
        record(4, "J3 distinguishing invariant tables", ok3 && ok4, c.seconds(), 0, d3 + d4);
    }

    // 5. Trivial spectrum classification.
    {
        Clock c;
        std::string detail;
        bool ok = report_pass(verify_trivial_spectrum(), detail);
        record(5, "trivial spectrum: 3+3 classes at dim 3, none at dim 4", ok, c.seconds(), 300,
               detail);
    }

    // 6. Affine subspaces inside the invertible matrices.
    {
        Clock c;
        std::string detail;
        bool ok = report_pass(verify_affine_nonsingular(), detail);
        record(6, "five affine classes inside GL_3 with explicit T2~T3 witness", ok, c.seconds(), 0,
               detail);
    }

    // 7. Maximality of the six spaces; alternating maximal-singular at n=3,5.
    {
        Clock c;
        std::string detail;
        bool ok = report_pass(verify_maximal_six(), detail);
        record(7, "six maximal urk-2 spaces; alternating maximality", ok, c.seconds(), 600, detail);
    }

    // 8. Minimal LLD classification and dual correspondences.
    {
        Clock c;
        std::string detail;
        bool ok = report_pass(verify_lld_theorem(), detail);
        record(8, "minimal LLD spaces and dual correspondences", ok, c.seconds(), 0, detail);
    }

    // 9. The claimed-inequivalent pair: both primitive rank-2 and equivalent to V3.
    {
        Clock c;
        bool ok = true;
        std::ostringstream detail;
        for (const std::string name : {"Pair4a", "Pair4b"}) {
            auto v = cat(name);
            if (!is_rank_constant_2(v) || !is_primitive(v)) ok = false;
            auto wit = are_equivalent(v, cat("V3"));
            if (!wit) {
                ok = false;
                continue;
            }
            detail << name << ": P=[" << to_text(wit->P) << "] Q=[" << to_text(wit->Q) << "] ";
        }
        record(9, "claimed-inequivalent pair collapses onto V3", ok, c.seconds(), 0, detail.str());
    }

    // 10. Oracle-equivalence property suites.
    {
        Clock c;
        std::string detail;
        bool ok = report_pass(verify_core_properties(20250607, oracles), detail);
        record(10, "property suites against independent oracles", ok, c.seconds(), 120, detail);
    }

    bool all = true;
    for (const auto& r : results) {
        std::printf("[%s] criterion %2d: %s (%.1f s)%s%s\n", r.pass ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.seconds, r.detail.empty() ? "" : " -- ", r.detail.c_str());
        all = all && r.pass;
    }
    std::printf("%s\n", all ? "ACCEPTANCE: all criteria passed" : "ACCEPTANCE: FAILURES PRESENT");
    return all ? 0 : 1;
}
