#include "f2rank2/orbits.hpp"

#include <algorithm>
#include <bit>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

#include "f2rank2/parallel.hpp"

namespace f2rank2 {

MatrixSpace apply_action(const Gf2Matrix& P, const MatrixSpace& v, const Gf2Matrix& Q) {
    std::vector<Gf2Matrix> gens;
    for (const auto& b : v.basis_matrices()) gens.push_back(mul(mul(P, b), Q));
    return span(gens, P.nrows, Q.ncols);
}

MatrixSpace conjugate_space(const Gf2Matrix& P, const MatrixSpace& v) {
    auto pinv = inverse(P);
    if (!pinv) throw std::invalid_argument("conjugate_space: singular P");
    return apply_action(P, v, *pinv);
}

namespace {

// ---- packed scan machinery -------------------------------------------------
// Basis vectors as uint16 flattened masks (n*p <= 16 at all scanned shapes).

struct SmallBasis {
    int d = 0;
    std::array<uint16_t, 16> v{};

    void insert(uint16_t x) {
        for (int i = 0; i < d; ++i) {
            int piv = 15 - std::countl_zero(static_cast<uint16_t>(v[i]));
            if ((x >> piv) & 1) x ^= v[i];
        }
        if (!x) return;
        int px = 15 - std::countl_zero(x);
        for (int i = 0; i < d; ++i)
            if ((v[i] >> px) & 1) v[i] ^= x;
        int pos = d;
        while (pos > 0 && v[pos - 1] < x) {
            v[pos] = v[pos - 1];
            --pos;
        }
        v[pos] = x;
        ++d;
    }
};

// -1 / 0 / +1 comparison against a reference payload of the same dim.
int cmp_payload(const SmallBasis& a, const std::array<uint16_t, 16>& ref, int d) {
    for (int i = 0; i < d; ++i) {
        if (a.v[i] != ref[i]) return a.v[i] < ref[i] ? -1 : 1;
    }
    return 0;
}

struct PackedMat {
    std::array<uint8_t, 8> rows{};
};

PackedMat pack_rows(const Gf2Matrix& m) {
    PackedMat out;
    out.rows = m.rows;
    return out;
}

// dst = P * M (P: n x n, M given as n rows).
inline void left_mul(const PackedMat& P, int n, const uint8_t* src, uint8_t* dst) {
    for (int i = 0; i < n; ++i) {
        uint8_t acc = 0;
        uint8_t row = P.rows[i];
        while (row) {
            int k = std::countr_zero(row);
            row &= static_cast<uint8_t>(row - 1);
            acc ^= src[k];
        }
        dst[i] = acc;
    }
}

// dst = M * Q (M: n rows of p_in bits, Q: p_in x p_out).
inline void right_mul(const PackedMat& Q, int n, const uint8_t* src, uint8_t* dst) {
    for (int i = 0; i < n; ++i) {
        uint8_t acc = 0;
        uint8_t row = src[i];
        while (row) {
            int k = std::countr_zero(row);
            row &= static_cast<uint8_t>(row - 1);
            acc ^= Q.rows[k];
        }
        dst[i] = acc;
    }
}

inline uint16_t pack_flat(const uint8_t* rows, int n, int p) {
    uint16_t out = 0;
    for (int i = 0; i < n; ++i) out |= static_cast<uint16_t>(rows[i]) << (i * p);
    return out;
}

inline void unpack_flat(uint16_t bits, int n, int p, uint8_t* rows) {
    uint16_t mask = static_cast<uint16_t>((1u << p) - 1);
    for (int i = 0; i < n; ++i) rows[i] = static_cast<uint8_t>((bits >> (i * p)) & mask);
}

// Multiplication tables for the order-168-or-less side of the action.
// table[g * (1<<np) + m] = flattening of (G_g applied to matrix m).
const std::vector<uint16_t>& side_table(int n, int p, bool left) {
    static std::mutex mu;
    static std::map<std::tuple<int, int, bool>, std::vector<uint16_t>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(n, p, left);
    auto it = cache.find(key);
    if (it == cache.end()) {
        const auto& g = gl_group(left ? n : p);
        size_t total = 1ull << (n * p);
        std::vector<uint16_t> t(g.size() * total);
        uint8_t rows[8], out[8];
        for (size_t k = 0; k < g.size(); ++k) {
            PackedMat G = pack_rows(g[k]);
            for (uint16_t m = 0; m < total; ++m) {
                unpack_flat(m, n, p, rows);
                if (left)
                    left_mul(G, n, rows, out);
                else
                    right_mul(G, n, rows, out);
                t[k * total + m] = pack_flat(out, n, p);
            }
        }
        it = cache.emplace(key, std::move(t)).first;
    }
    return it->second;
}

struct ScanResult {
    std::array<uint16_t, 16> payload{};
    int d = 0;
    uint32_t p_idx = 0;
    uint32_t q_idx = 0;
    bool valid = false;
};

// Keeps the lexicographically smallest payload; ties broken by (p,q) index.
void consider(ScanResult& best, const SmallBasis& cand, uint32_t p_idx, uint32_t q_idx) {
    if (best.valid) {
        int c = cmp_payload(cand, best.payload, best.d);
        if (c > 0) return;
        if (c == 0 && std::pair(p_idx, q_idx) >= std::pair(best.p_idx, best.q_idx)) return;
    }
    best.valid = true;
    best.d = cand.d;
    for (int i = 0; i < cand.d; ++i) best.payload[i] = cand.v[i];
    best.p_idx = p_idx;
    best.q_idx = q_idx;
}

ScanResult combine_best(ScanResult a, const ScanResult& b) {
    if (!b.valid) return a;
    if (!a.valid) return b;
    SmallBasis tmp;
    tmp.d = b.d;
    for (int i = 0; i < b.d; ++i) tmp.v[i] = b.payload[i];
    consider(a, tmp, b.p_idx, b.q_idx);
    return a;
}

// Full orbit scan under GL_n x GL_p. The side whose group is smaller runs as
// the inner loop through a lookup table; the other side is applied directly.
ScanResult equiv_scan(const MatrixSpace& v) {
    int n = v.n, p = v.p;
    int np = n * p;
    const auto& gln = gl_group(n);
    const auto& glp = gl_group(p);
    bool inner_is_right = glp.size() <= gln.size();
    const auto& table = side_table(n, p, !inner_is_right);
    const auto& outer = inner_is_right ? gln : glp;
    size_t inner_count = inner_is_right ? glp.size() : gln.size();
    size_t total = 1ull << np;
    int d = v.dim();
    if (d > 16) throw std::invalid_argument("canonical_equiv: dim > 16");
    std::array<uint16_t, 16> base{};
    for (int i = 0; i < d; ++i) base[i] = static_cast<uint16_t>(v.basis[i]);

    auto chunk = [&](size_t b, size_t e, ScanResult& acc) {
        uint8_t rows[8], tmp[8];
        for (size_t oi = b; oi < e; ++oi) {
            PackedMat O = pack_rows(outer[oi]);
            std::array<uint16_t, 16> moved{};
            for (int i = 0; i < d; ++i) {
                unpack_flat(base[i], n, p, rows);
                if (inner_is_right)
                    left_mul(O, n, rows, tmp);
                else
                    right_mul(O, n, rows, tmp);
                moved[i] = pack_flat(tmp, n, p);
            }
            for (size_t ii = 0; ii < inner_count; ++ii) {
                const uint16_t* row = &table[ii * total];
                SmallBasis cand;
                for (int i = 0; i < d; ++i) cand.insert(row[moved[i]]);
                uint32_t p_idx = static_cast<uint32_t>(inner_is_right ? oi : ii);
                uint32_t q_idx = static_cast<uint32_t>(inner_is_right ? ii : oi);
                consider(acc, cand, p_idx, q_idx);
            }
        }
    };
    return par::map_reduce(outer.size(), ScanResult{}, chunk, combine_best);
}

ScanResult sim_scan(const MatrixSpace& v) {
    int n = v.n;
    const auto& g = gl_group(n);
    const auto& inv_idx = gl_inverse_index(n);
    int d = v.dim();
    if (d > 16) throw std::invalid_argument("canonical_sim: dim > 16");
    std::array<uint16_t, 16> base{};
    for (int i = 0; i < d; ++i) base[i] = static_cast<uint16_t>(v.basis[i]);

    auto chunk = [&](size_t b, size_t e, ScanResult& acc) {
        uint8_t rows[8], tmp[8], tmp2[8];
        for (size_t k = b; k < e; ++k) {
            PackedMat P = pack_rows(g[k]);
            PackedMat Pi = pack_rows(g[inv_idx[k]]);
            SmallBasis cand;
            for (int i = 0; i < d; ++i) {
                unpack_flat(base[i], n, n, rows);
                left_mul(P, n, rows, tmp);
                right_mul(Pi, n, tmp, tmp2);
                cand.insert(pack_flat(tmp2, n, n));
            }
            consider(acc, cand, static_cast<uint32_t>(k), inv_idx[k]);
        }
    };
    return par::map_reduce(g.size(), ScanResult{}, chunk, combine_best);
}

void check_equiv_shape(int n, int p) {
    if (n > 4 || p > 4 || std::min(n, p) > 3)
        throw std::invalid_argument("canonical_equiv: unsupported shape (need n,p <= 4, min <= 3)");
    if (n < 1 || p < 1) throw std::invalid_argument("canonical_equiv: bad shape");
}

// ---- persistent cache --------------------------------------------------------

struct VecHash {
    size_t operator()(const std::vector<uint64_t>& v) const {
        size_t h = 0x9e3779b97f4a7c15ull ^ v.size();
        for (uint64_t x : v) {
            h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }
};

struct ShapeCache {
    std::unordered_map<std::vector<uint64_t>, std::vector<uint64_t>, VecHash> map;
    bool file_loaded = false;
};

struct CacheState {
    std::mutex mu;
    std::string dir;
    std::map<std::tuple<int, int, int>, ShapeCache> shapes;
    size_t hits = 0;
    size_t misses = 0;
};

CacheState& cache_state() {
    static CacheState s;
    return s;
}

std::string payload_hex(const std::vector<uint64_t>& payload, int np) {
    static const char* digits = "0123456789ABCDEF";
    if (payload.empty()) return "-";
    int w = (np + 3) / 4;
    std::string out;
    for (size_t k = 0; k < payload.size(); ++k) {
        if (k) out += '.';
        for (int dd = w - 1; dd >= 0; --dd) out += digits[(payload[k] >> (4 * dd)) & 0xF];
    }
    return out;
}

std::vector<uint64_t> payload_from_hex(const std::string& s) {
    std::vector<uint64_t> out;
    if (s == "-") return out;
    uint64_t cur = 0;
    bool any = false;
    for (char c : s) {
        if (c == '.') {
            out.push_back(cur);
            cur = 0;
            any = false;
            continue;
        }
        int v;
        if (c >= '0' && c <= '9')
            v = c - '0';
        else if (c >= 'A' && c <= 'F')
            v = c - 'A' + 10;
        else
            throw std::runtime_error("cache: bad hex digit");
        cur = (cur << 4) | static_cast<uint64_t>(v);
        any = true;
    }
    if (any) out.push_back(cur);
    return out;
}

std::string cache_file_name(const std::string& dir, GroupAction action, int n, int p) {
    const char* tag = action == GroupAction::Equivalence ? "equiv" : "sim";
    return dir + "/" + tag + "-" + std::to_string(n) + "x" + std::to_string(p) + ".cache";
}

void load_cache_file(ShapeCache& sc, GroupAction action, int n, int p) {
    auto& st = cache_state();
    sc.file_loaded = true;
    if (st.dir.empty()) return;
    std::ifstream in(cache_file_name(st.dir, action, n, p));
    if (!in) return;
    std::string header;
    std::getline(in, header);
    std::string expected = "f2rank2-cache v1 " + std::to_string(n) + "x" + std::to_string(p);
    if (header != expected) return;  // stale or foreign file: ignore
    std::string raw, canon;
    while (in >> raw >> canon) {
        try {
            sc.map.emplace(payload_from_hex(raw), payload_from_hex(canon));
        } catch (const std::exception&) {
            break;  // tolerate a truncated trailing record
        }
    }
}

void append_cache_record(GroupAction action, int n, int p, const std::vector<uint64_t>& raw,
                         const std::vector<uint64_t>& canon) {
    auto& st = cache_state();
    if (st.dir.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(st.dir, ec);
    std::string fname = cache_file_name(st.dir, action, n, p);
    bool fresh = !std::filesystem::exists(fname);
    std::ofstream out(fname, std::ios::app);
    if (!out) return;
    if (fresh) out << "f2rank2-cache v1 " << n << "x" << p << "\n";
    int np = n * p;
    out << payload_hex(raw, np) << " " << payload_hex(canon, np) << "\n";
    out.flush();
}

std::optional<std::vector<uint64_t>> cache_get(GroupAction action, int n, int p,
                                               const std::vector<uint64_t>& raw) {
    auto& st = cache_state();
    std::lock_guard<std::mutex> lock(st.mu);
    auto& sc = st.shapes[{static_cast<int>(action), n, p}];
    if (!sc.file_loaded) load_cache_file(sc, action, n, p);
    auto it = sc.map.find(raw);
    if (it == sc.map.end()) {
        ++st.misses;
        return std::nullopt;
    }
    ++st.hits;
    return it->second;
}

void cache_put(GroupAction action, int n, int p, const std::vector<uint64_t>& raw,
               const std::vector<uint64_t>& canon) {
    auto& st = cache_state();
    std::lock_guard<std::mutex> lock(st.mu);
    auto& sc = st.shapes[{static_cast<int>(action), n, p}];
    if (sc.map.emplace(raw, canon).second) append_cache_record(action, n, p, raw, canon);
}

std::vector<uint64_t> payload_vec(const ScanResult& r) {
    std::vector<uint64_t> out(r.d);
    for (int i = 0; i < r.d; ++i) out[i] = r.payload[i];
    return out;
}

}  // namespace

CanonicalKey canonical_equiv(const MatrixSpace& v) {
    check_equiv_shape(v.n, v.p);
    CanonicalKey key;
    key.n = v.n;
    key.p = v.p;
    key.action = GroupAction::Equivalence;
    if (auto hit = cache_get(key.action, v.n, v.p, v.basis)) {
        key.payload = *hit;
        return key;
    }
    key.payload = payload_vec(equiv_scan(v));
    cache_put(key.action, v.n, v.p, v.basis, key.payload);
    return key;
}

CanonicalKey canonical_sim(const MatrixSpace& v) {
    if (v.n != v.p) throw std::invalid_argument("canonical_sim: square spaces only");
    if (v.n > 4) throw std::invalid_argument("canonical_sim: n <= 4 only");
    CanonicalKey key;
    key.n = v.n;
    key.p = v.p;
    key.action = GroupAction::Similarity;
    if (auto hit = cache_get(key.action, v.n, v.p, v.basis)) {
        key.payload = *hit;
        return key;
    }
    key.payload = payload_vec(sim_scan(v));
    cache_put(key.action, v.n, v.p, v.basis, key.payload);
    return key;
}

MatrixSpace space_from_key(const CanonicalKey& key) {
    MatrixSpace v = MatrixSpace::zero(key.n, key.p);
    for (uint64_t b : key.payload) rref::insert(v.basis, b);
    return v;
}

std::optional<Witness> are_equivalent(const MatrixSpace& v, const MatrixSpace& w) {
    if (v.n != w.n || v.p != w.p) throw std::invalid_argument("are_equivalent: shape mismatch");
    check_equiv_shape(v.n, v.p);
    if (v.dim() != w.dim()) return std::nullopt;
    ScanResult rv = equiv_scan(v);
    ScanResult rw = equiv_scan(w);
    if (payload_vec(rv) != payload_vec(rw)) return std::nullopt;
    const auto& gn = gl_group(v.n);
    const auto& gp = gl_group(v.p);
    Gf2Matrix P = mul(*inverse(gn[rw.p_idx]), gn[rv.p_idx]);
    Gf2Matrix Q = mul(gp[rv.q_idx], *inverse(gp[rw.q_idx]));
    Witness wit{P, Q};
    if (apply_action(wit.P, v, wit.Q) != w)
        throw std::logic_error("are_equivalent: witness failed re-verification");
    return wit;
}

std::optional<Witness> are_similar(const MatrixSpace& v, const MatrixSpace& w) {
    if (v.n != w.n || v.p != w.p) throw std::invalid_argument("are_similar: shape mismatch");
    if (v.n != v.p || v.n > 4) throw std::invalid_argument("are_similar: square, n <= 4 only");
    if (v.dim() != w.dim()) return std::nullopt;
    ScanResult rv = sim_scan(v);
    ScanResult rw = sim_scan(w);
    if (payload_vec(rv) != payload_vec(rw)) return std::nullopt;
    const auto& g = gl_group(v.n);
    Gf2Matrix P = mul(*inverse(g[rw.p_idx]), g[rv.p_idx]);
    Witness wit{P, *inverse(P)};
    if (apply_action(wit.P, v, wit.Q) != w)
        throw std::logic_error("are_similar: witness failed re-verification");
    return wit;
}

std::optional<Witness> affine_equivalent(const AffineMatrixSpace& s, const AffineMatrixSpace& t) {
    int n = s.translation.n;
    if (n != 3 || s.translation.p != 3 || t.translation.n != 3 || t.translation.p != 3)
        throw std::invalid_argument("affine_equivalent: 3x3 square spaces only");
    if (s.translation.dim() != t.translation.dim()) return std::nullopt;
    const auto& g = gl_group(3);
    for (const auto& P : g) {
        for (const auto& Q : g) {
            MatrixSpace moved = apply_action(P, s.translation, Q);
            if (moved != t.translation) continue;
            Gf2Matrix base_image = mul(mul(P, s.base), Q);
            if (!t.contains(base_image)) continue;
            return Witness{P, Q};
        }
    }
    return std::nullopt;
}

bool embeds_into(const MatrixSpace& v, const MatrixSpace& w) {
    if (v.n != w.n || v.p != w.p) throw std::invalid_argument("embeds_into: shape mismatch");
    if (v.dim() > w.dim()) return false;
    const auto& gn = gl_group(v.n);
    const auto& gp = gl_group(v.p);
    auto mats = v.basis_matrices();
    for (const auto& P : gn) {
        std::vector<Gf2Matrix> left;
        left.reserve(mats.size());
        for (const auto& m : mats) left.push_back(mul(P, m));
        for (const auto& Q : gp) {
            bool inside = true;
            for (const auto& m : left) {
                if (!w.contains_flat(mul(m, Q).flatten())) { inside = false; break; }
            }
            if (inside) return true;
        }
    }
    return false;
}

void set_cache_dir(const std::string& dir) {
    auto& st = cache_state();
    std::lock_guard<std::mutex> lock(st.mu);
    st.dir = dir;
    st.shapes.clear();  // reload lazily against the new directory
}

const std::string& cache_dir() { return cache_state().dir; }

CacheStats cache_stats() {
    auto& st = cache_state();
    std::lock_guard<std::mutex> lock(st.mu);
    CacheStats out;
    out.hits = st.hits;
    out.misses = st.misses;
    for (const auto& [k, sc] : st.shapes) out.entries += sc.map.size();
    return out;
}

void reset_cache() {
    auto& st = cache_state();
    std::lock_guard<std::mutex> lock(st.mu);
    st.shapes.clear();
    st.hits = st.misses = 0;
}

Gf2Matrix j2_matrix(int n, int p) {
    Gf2Matrix m = Gf2Matrix::zero(n, p);
    m.set(0, 0, 1);
    m.set(1, 1, 1);
    return m;
}

namespace {

// All invertible matrices of GL_k for k in 0..2 used by the stabilizer
// parameterization; GL_0 is represented by a single empty slot.
std::vector<Gf2Matrix> small_gl(int k) {
    if (k == 0) return {Gf2Matrix::zero(1, 1)};  // placeholder, rows unused
    return gl_group(k);
}

}  // namespace

const std::vector<Witness>& j2_stabilizer(int n, int p) {
    if (n < 2 || n > 4 || p < 2 || p > 4) throw std::invalid_argument("j2_stabilizer: shapes 2..4 only");
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::vector<Witness>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(n, p);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    // P J2 Q = J2  <=>  P = [[A,B],[0,D]] and Q^-1 = [[A,0],[C,D']]
    // with A in GL_2, D in GL_{n-2}, D' in GL_{p-2}, B and C free.
    std::vector<Witness> out;
    const auto& gl2 = gl_group(2);
    auto gln2 = small_gl(n - 2);
    auto glp2 = small_gl(p - 2);
    for (const auto& A : gl2) {
        for (uint32_t bbits = 0; bbits < (1u << (2 * (n - 2))); ++bbits) {
            for (const auto& D : gln2) {
                Gf2Matrix P = Gf2Matrix::zero(n, n);
                for (int i = 0; i < 2; ++i)
                    P.rows[i] = static_cast<uint8_t>(A.rows[i] |
                                                     (((bbits >> (i * (n - 2))) & ((1u << (n - 2)) - 1)) << 2));
                for (int i = 0; i + 2 < n; ++i) P.rows[2 + i] = static_cast<uint8_t>(D.rows[i] << 2);
                for (uint32_t cbits = 0; cbits < (1u << (2 * (p - 2))); ++cbits) {
                    for (const auto& Dp : glp2) {
                        Gf2Matrix R = Gf2Matrix::zero(p, p);
                        for (int i = 0; i < 2; ++i) R.rows[i] = A.rows[i];
                        for (int i = 0; i + 2 < p; ++i)
                            R.rows[2 + i] = static_cast<uint8_t>(((cbits >> (i * 2)) & 3u) |
                                                                 (Dp.rows[i] << 2));
                        out.push_back(Witness{P, *inverse(R)});
                    }
                }
            }
        }
    }
    it = cache.emplace(key, std::move(out)).first;
    return it->second;
}

std::vector<uint64_t> stab_canonical_payload(int n, int p, const std::vector<uint64_t>& basis) {
    const auto& stab = j2_stabilizer(n, p);
    int d = static_cast<int>(basis.size());
    if (d > 16) throw std::invalid_argument("stab_canonical_payload: dim > 16");
    std::array<uint16_t, 16> base{};
    for (int i = 0; i < d; ++i) base[i] = static_cast<uint16_t>(basis[i]);

    auto chunk = [&](size_t b, size_t e, ScanResult& acc) {
        uint8_t rows[8], tmp[8], tmp2[8];
        std::array<uint16_t, 16> moved{};
        size_t have_p = SIZE_MAX;
        for (size_t k = b; k < e; ++k) {
            PackedMat P = pack_rows(stab[k].P);
            PackedMat Q = pack_rows(stab[k].Q);
            // Stabilizer pairs are P-major; reuse P * basis across equal-P runs.
            if (have_p == SIZE_MAX || !(stab[k].P == stab[have_p].P)) {
                for (int i = 0; i < d; ++i) {
                    unpack_flat(base[i], n, p, rows);
                    left_mul(P, n, rows, tmp);
                    moved[i] = pack_flat(tmp, n, p);
                }
                have_p = k;
            }
            SmallBasis cand;
            for (int i = 0; i < d; ++i) {
                unpack_flat(moved[i], n, p, rows);
                right_mul(Q, n, rows, tmp2);
                cand.insert(pack_flat(tmp2, n, p));
            }
            consider(acc, cand, static_cast<uint32_t>(k), 0);
        }
    };
    ScanResult r = par::map_reduce(stab.size(), ScanResult{}, chunk, combine_best);
    return payload_vec(r);
}

}  // namespace f2rank2
