#include "f2rank2/classifiers.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "f2rank2/parallel.hpp"
#include "f2rank2/predicates.hpp"

namespace f2rank2 {

bool ClassificationReport::pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

void ClassificationReport::add(const std::string& check, bool ok, const std::string& detail) {
    checks.push_back(CheckResult{check, ok, detail});
}

void ClassificationReport::param(const std::string& key, const std::string& value) {
    params.emplace_back(key, value);
}

ElementFilter rank_le_filter(int n, int p, int r) {
    const auto& t = rank_table(n, p);
    return [&t, r](uint64_t m) { return t[m] <= r; };
}

ElementFilter singular_filter(int n) {
    const auto& t = rank_table(n, n);
    return [&t, n](uint64_t m) { return t[m] < n; };
}

ElementFilter trivial_spectrum_filter(int n) {
    const auto& t = rank_table(n, n);
    uint64_t id = Gf2Matrix::identity(n).flatten();
    return [&t, n, id](uint64_t m) { return t[m ^ id] == n; };
}

ElementFilter nilpotent_filter(int n) {
    Gf2Poly tn{1u << n};
    return [n, tn](uint64_t m) { return charpoly(Gf2Matrix::unflatten(m, n, n)) == tn; };
}

namespace {

struct VecHash {
    size_t operator()(const std::vector<uint64_t>& v) const {
        size_t h = 0x9e3779b97f4a7c15ull ^ v.size();
        for (uint64_t x : v) h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return h;
    }
};

using RawSet = std::unordered_set<std::vector<uint64_t>, VecHash>;

std::vector<uint64_t> filtered_pool(int n, int p, const ElementFilter& filter) {
    std::vector<uint64_t> pool;
    for (uint64_t m = 1; m < (1ull << (n * p)); ++m)
        if (filter(m)) pool.push_back(m);
    return pool;
}

std::vector<uint64_t> canonical_payload(const MatrixSpace& v, GroupAction action) {
    return action == GroupAction::Equivalence ? canonical_equiv(v).payload : canonical_sim(v).payload;
}

}  // namespace

std::map<int, std::vector<MatrixSpace>> enumerate_classes_by_dim(int n, int p, int max_dim,
                                                                 const ElementFilter& element_filter,
                                                                 GroupAction action) {
    if (max_dim < 1 || max_dim > 16) throw std::invalid_argument("enumerate_classes_by_dim: bad max_dim");
    auto pool = filtered_pool(n, p, element_filter);

    std::map<int, std::map<std::vector<uint64_t>, MatrixSpace>> levels;
    for (uint64_t m : pool) {
        MatrixSpace v = MatrixSpace::zero(n, p);
        v.basis.push_back(m);
        levels[1].emplace(canonical_payload(v, action), MatrixSpace{});
    }
    for (auto& [key, rep] : levels[1]) {
        CanonicalKey k{static_cast<uint8_t>(n), static_cast<uint8_t>(p), action, key};
        rep = space_from_key(k);
    }

    for (int d = 1; d < max_dim; ++d) {
        if (!levels.count(d)) break;
        RawSet raw_seen;
        for (const auto& [key, rep] : levels[d]) {
            auto els = elements_flat(rep);
            for (uint64_t m : pool) {
                if (rref::contains(rep.basis, m)) continue;
                bool closed = true;
                for (uint64_t e : els)
                    if (!element_filter(e ^ m)) { closed = false; break; }
                if (!closed) continue;
                std::vector<uint64_t> basis2 = rep.basis;
                rref::insert(basis2, m);
                if (!raw_seen.insert(basis2).second) continue;
                MatrixSpace cand = MatrixSpace::zero(n, p);
                cand.basis = basis2;
                auto payload = canonical_payload(cand, action);
                auto& level = levels[d + 1];
                if (!level.count(payload)) {
                    CanonicalKey k{static_cast<uint8_t>(n), static_cast<uint8_t>(p), action, payload};
                    level.emplace(payload, space_from_key(k));
                }
            }
        }
    }

    std::map<int, std::vector<MatrixSpace>> out;
    for (auto& [d, level] : levels) {
        auto& v = out[d];
        for (auto& [key, rep] : level) v.push_back(rep);
    }
    return out;
}

std::vector<MatrixSpace> enumerate_classes(int n, int p, int dim, const ElementFilter& element_filter,
                                           const SpacePredicate& space_predicate, GroupAction action) {
    if (dim > 6) throw std::invalid_argument("enumerate_classes: dim <= 6");
    auto by_dim = enumerate_classes_by_dim(n, p, dim, element_filter, action);
    std::vector<MatrixSpace> out;
    for (const auto& v : by_dim[dim])
        if (space_predicate(v)) out.push_back(v);
    return out;
}

// ---- J2-anchored engine ------------------------------------------------------

namespace {

// Per-shape transform tables for the Stab(J2) scan: the stabilizer pairs are
// grouped by the left factor P, and both factors act through flat lookup
// tables (at most 576 x 65536 entries each at 4x4).
struct StabTables {
    int n = 0, p = 0;
    size_t flat_size = 0;
    std::vector<uint16_t> left;   // [pi * flat_size + m] = P_pi * M
    std::vector<uint16_t> right;  // [qi * flat_size + m] = M * Q_qi
    struct Group {
        uint32_t p_index;
        std::vector<uint32_t> q_indices;
    };
    std::vector<Group> groups;
};

const StabTables& stab_tables(int n, int p) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, StabTables> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(n, p);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    const auto& stab = j2_stabilizer(n, p);
    StabTables t;
    t.n = n;
    t.p = p;
    t.flat_size = 1ull << (n * p);

    std::map<uint64_t, uint32_t> p_index, q_index;
    std::vector<Gf2Matrix> ps, qs;
    for (const auto& w : stab) {
        uint64_t ph = w.P.serial();
        if (!p_index.count(ph)) {
            p_index[ph] = static_cast<uint32_t>(ps.size());
            ps.push_back(w.P);
            t.groups.push_back({p_index[ph], {}});
        }
        uint64_t qh = w.Q.serial();
        if (!q_index.count(qh)) {
            q_index[qh] = static_cast<uint32_t>(qs.size());
            qs.push_back(w.Q);
        }
        t.groups.back().q_indices.push_back(q_index[qh]);
    }

    auto build = [&](const std::vector<Gf2Matrix>& mats, bool left_side) {
        std::vector<uint16_t> table(mats.size() * t.flat_size);
        par::map_reduce(
            mats.size(), 0,
            [&](size_t b, size_t e, int&) {
                for (size_t k = b; k < e; ++k) {
                    const Gf2Matrix& g = mats[k];
                    for (uint64_t m = 0; m < t.flat_size; ++m) {
                        Gf2Matrix x = Gf2Matrix::unflatten(m, n, p);
                        Gf2Matrix y = left_side ? mul(g, x) : mul(x, g);
                        table[k * t.flat_size + m] = static_cast<uint16_t>(y.flatten());
                    }
                }
            },
            [](int a, int) { return a; });
        return table;
    };
    t.left = build(ps, true);
    t.right = build(qs, false);
    it = cache.emplace(key, std::move(t)).first;
    return it->second;
}

// Minimal RREF payload over Stab(J2) using the tables.
std::vector<uint64_t> stab_payload_fast(const StabTables& t, const std::vector<uint64_t>& basis) {
    int d = static_cast<int>(basis.size());
    struct Best {
        std::array<uint16_t, 16> v{};
        bool valid = false;
    };
    auto chunk = [&](size_t gb, size_t ge, Best& best) {
        std::array<uint16_t, 16> moved{};
        std::array<uint16_t, 16> cand{};
        for (size_t gi = gb; gi < ge; ++gi) {
            const auto& grp = t.groups[gi];
            const uint16_t* lt = &t.left[grp.p_index * t.flat_size];
            for (int i = 0; i < d; ++i) moved[i] = lt[basis[i]];
            for (uint32_t qi : grp.q_indices) {
                const uint16_t* rt = &t.right[qi * t.flat_size];
                int cd = 0;
                for (int i = 0; i < d; ++i) {
                    uint16_t x = rt[moved[i]];
                    for (int j = 0; j < cd; ++j) {
                        int piv = 15 - std::countl_zero(cand[j]);
                        if ((x >> piv) & 1) x ^= cand[j];
                    }
                    if (!x) continue;
                    int px = 15 - std::countl_zero(x);
                    for (int j = 0; j < cd; ++j)
                        if ((cand[j] >> px) & 1) cand[j] ^= x;
                    int pos = cd;
                    while (pos > 0 && cand[pos - 1] < x) {
                        cand[pos] = cand[pos - 1];
                        --pos;
                    }
                    cand[pos] = x;
                    ++cd;
                }
                if (!best.valid) {
                    best.valid = true;
                    for (int i = 0; i < d; ++i) best.v[i] = cand[i];
                } else {
                    for (int i = 0; i < d; ++i) {
                        if (cand[i] == best.v[i]) continue;
                        if (cand[i] < best.v[i])
                            for (int j = 0; j < d; ++j) best.v[j] = cand[j];
                        break;
                    }
                }
            }
        }
    };
    Best best = par::map_reduce(t.groups.size(), Best{}, chunk, [&](Best a, const Best& b) {
        if (!b.valid) return a;
        if (!a.valid) return b;
        for (int i = 0; i < d; ++i) {
            if (a.v[i] == b.v[i]) continue;
            return a.v[i] < b.v[i] ? a : b;
        }
        return a;
    });
    std::vector<uint64_t> out(d);
    for (int i = 0; i < d; ++i) out[i] = best.v[i];
    return out;
}

}  // namespace

AnchoredScan anchored_rank2_scan(int n, int p, int max_dim, const SpacePredicate& predicate) {
    if (n * p > 16) throw std::invalid_argument("anchored_rank2_scan: n*p <= 16 only");
    const auto& ranks = rank_table(n, p);
    const auto& tables = stab_tables(n, p);

    std::vector<uint64_t> pool;
    for (uint64_t m = 1; m < (1ull << (n * p)); ++m)
        if (ranks[m] <= 2) pool.push_back(m);

    AnchoredScan result;
    result.n = n;
    result.p = p;

    uint64_t j2 = j2_matrix(n, p).flatten();
    std::map<std::vector<uint64_t>, MatrixSpace> level;
    {
        std::vector<uint64_t> basis{j2};
        auto payload = stab_payload_fast(tables, basis);
        MatrixSpace rep = MatrixSpace::zero(n, p);
        for (uint64_t b : payload) rref::insert(rep.basis, b);
        level.emplace(payload, rep);
    }

    for (int d = 1; d <= max_dim && !level.empty(); ++d) {
        result.reps_per_dim.push_back(level.size());
        for (const auto& [key, rep] : level)
            if (predicate(rep)) result.predicate_hits.push_back(rep);
        if (d == max_dim) break;

        RawSet raw_seen;
        std::map<std::vector<uint64_t>, MatrixSpace> next;
        for (const auto& [key, rep] : level) {
            auto els = elements_flat(rep);
            for (uint64_t m : pool) {
                if (rref::contains(rep.basis, m)) continue;
                bool closed = true;
                for (uint64_t e : els)
                    if (ranks[e ^ m] > 2) { closed = false; break; }
                if (!closed) continue;
                std::vector<uint64_t> basis2 = rep.basis;
                rref::insert(basis2, m);
                if (!raw_seen.insert(basis2).second) continue;
                auto payload = stab_payload_fast(tables, basis2);
                if (!next.count(payload)) {
                    MatrixSpace cand = MatrixSpace::zero(n, p);
                    for (uint64_t b : payload) rref::insert(cand.basis, b);
                    next.emplace(payload, cand);
                }
            }
        }
        level = std::move(next);
    }
    return result;
}

std::pair<int, int> counting_check_n2(const MatrixSpace& v) {
    if (v.n != 3 || v.p != 3)
        throw std::invalid_argument("counting_check_n2: requires a subspace of Mat_3(F2)");
    if (!is_rank_constant_2(v))
        throw std::invalid_argument("counting_check_n2: requires a rank-constant-2 space");
    int n2 = 0, n3 = 0;
    for (uint64_t x = 1; x < 8; ++x) {
        int dim = evaluation_dim(v, x);
        if (dim == 2) ++n2;
        if (dim == 3) ++n3;
    }
    return {n2, n3};
}

int trace(const Gf2Matrix& m) {
    int t = 0;
    for (int i = 0; i < m.nrows && i < m.ncols; ++i) t ^= m.get(i, i);
    return t;
}

SpaceFingerprint fingerprint(const MatrixSpace& v) {
    SpaceFingerprint f;
    f.dim = v.dim();
    f.rank_histogram.assign(std::min<int>(v.n, v.p) + 1, 0);
    uint64_t cur = 0;
    f.rank_histogram[0] = 1;
    for (uint64_t c = 1; c < (1ull << v.dim()); ++c) {
        cur ^= v.basis[std::countr_zero(c)];
        int r = v.n * v.p <= 16 ? rank_table(v.n, v.p)[cur] : rank(Gf2Matrix::unflatten(cur, v.n, v.p));
        ++f.rank_histogram[r];
        f.urk = std::max(f.urk, r);
    }
    for (uint64_t x = 1; x < (1ull << v.p); ++x)
        if (evaluation_dim(v, x) == 2) ++f.n2;
    return f;
}

std::string SpaceFingerprint::to_string() const {
    std::ostringstream os;
    os << "dim=" << dim << " urk=" << urk << " ranks=[";
    for (size_t i = 0; i < rank_histogram.size(); ++i) {
        if (i) os << ",";
        os << rank_histogram[i];
    }
    os << "] n2=" << n2;
    return os.str();
}

}  // namespace f2rank2
