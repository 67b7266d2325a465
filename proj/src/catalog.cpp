#include "f2rank2/catalog.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "f2rank2/genmatrix.hpp"
#include "f2rank2/predicates.hpp"

namespace f2rank2 {

const MatrixSpace& CatalogEntry::linear_space() const {
    if (!space.is_linear())
        throw std::invalid_argument("catalog entry '" + name + "' is not a linear space");
    return space.translation;
}

std::string default_catalog_path() {
    if (const char* env = std::getenv("F2RANK2_CATALOG")) return env;
#ifdef F2RANK2_ASSET_DIR
    return std::string(F2RANK2_ASSET_DIR) + "/catalog.txt";
#else
    return "assets/catalog.txt";
#endif
}

const Catalog& Catalog::instance() {
    static Catalog c = load(default_catalog_path());
    return c;
}

Catalog Catalog::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("catalog: cannot open " + path);
    Catalog c;
    CatalogEntry cur;
    bool have = false;
    auto flush = [&] {
        if (!have) return;
        if (cur.generic_text.empty())
            throw std::runtime_error("catalog: entry '" + cur.name + "' has no matrix");
        cur.space = parse_generic(cur.generic_text);
        c.index_[cur.name] = c.entries_.size();
        c.entries_.push_back(cur);
        cur = CatalogEntry{};
        have = false;
    };
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        size_t colon = line.find(':');
        if (colon == std::string::npos)
            throw std::runtime_error("catalog: bad line " + std::to_string(lineno));
        std::string key = line.substr(0, colon);
        std::string value = line.substr(colon + 1);
        while (!value.empty() && value.front() == ' ') value.erase(value.begin());
        if (key == "name") {
            flush();
            cur.name = value;
            have = true;
        } else if (key == "matrix") {
            cur.generic_text = value;
        } else if (key == "expect") {
            std::stringstream ss(value);
            std::string item;
            while (std::getline(ss, item, ',')) {
                size_t eq = item.find('=');
                if (eq == std::string::npos)
                    throw std::runtime_error("catalog: bad expect item '" + item + "'");
                cur.expect[item.substr(0, eq)] = std::stoi(item.substr(eq + 1));
            }
        } else if (key == "note") {
            cur.note = value;
        } else {
            throw std::runtime_error("catalog: unknown key '" + key + "'");
        }
    }
    flush();
    return c;
}

bool Catalog::has(const std::string& name) const { return index_.count(name) > 0; }

const CatalogEntry& Catalog::get(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw std::invalid_argument("catalog: unknown name '" + name + "'");
    return entries_[it->second];
}

std::vector<std::string> Catalog::names() const {
    std::vector<std::string> out;
    for (const auto& e : entries_) out.push_back(e.name);
    return out;
}

namespace {

int eval_expect_key(const CatalogEntry& e, const std::string& key) {
    const MatrixSpace& tr = e.space.translation;
    if (key == "dim") return tr.dim();
    if (key == "urk") return upper_rank(tr);
    if (key == "reduced") return is_reduced(tr);
    if (key == "primitive") return is_primitive(tr);
    if (key == "semi_primitive") return is_semi_primitive(tr);
    if (key == "rank_constant_2") return is_rank_constant_2(tr);
    if (key == "trivial_spectrum") return has_trivial_spectrum(tr);
    if (key == "irreducible") return is_irreducible_action(tr);
    if (key == "lld") return is_lld(tr);
    if (key == "minimal_lld") return is_minimal_lld(tr);
    if (key == "linear") return e.space.is_linear();
    if (key == "equals_transpose") return tr == transpose_space(tr);
    if (key == "singular_all") {
        for (const auto& m : elements(tr))
            if (det(m) != 0) return 0;
        return 1;
    }
    if (key == "nilpotent_all") {
        for (const auto& m : elements(tr))
            if (charpoly(m) != Gf2Poly{1u << m.nrows}) return 0;
        return 1;
    }
    if (key == "all_invertible") {
        for (uint64_t t : elements_flat(tr)) {
            Gf2Matrix m = Gf2Matrix::unflatten(t ^ e.space.base.flatten(), tr.n, tr.p);
            if (!m.is_square() || det(m) != 1) return 0;
        }
        return 1;
    }
    throw std::runtime_error("catalog: unknown expect key '" + key + "'");
}

}  // namespace

std::vector<std::string> Catalog::self_check() const {
    std::vector<std::string> failures;
    for (const auto& e : entries_) {
        for (const auto& [key, want] : e.expect) {
            int got;
            try {
                got = eval_expect_key(e, key);
            } catch (const std::exception& ex) {
                failures.push_back(e.name + ": " + key + " raised: " + ex.what());
                continue;
            }
            if (got != want)
                failures.push_back(e.name + ": " + key + " expected " + std::to_string(want) +
                                   ", got " + std::to_string(got));
        }
    }
    return failures;
}

MatrixSpace r_space(int s, int t, int n, int p) {
    if (s < 0 || s > n || t < 0 || t > p) throw std::invalid_argument("r_space: bad (s,t)");
    MatrixSpace v = MatrixSpace::zero(n, p);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < p; ++j)
            if (i < s || j < t) rref::insert(v.basis, 1ull << (i * p + j));
    return v;
}

MatrixSpace r11_family(int r, bool with_corner, int n, int p) {
    if (n < 2 || p < 2) throw std::invalid_argument("r11_family: need n,p >= 2");
    if (r < 0 || r > std::min(n - 1, p - 1)) throw std::invalid_argument("r11_family: bad r");
    std::vector<Gf2Matrix> gens;
    if (with_corner) gens.push_back(Gf2Matrix::elementary(n, p, 0, 0));
    for (int k = 1; k <= r; ++k) {
        Gf2Matrix x = Gf2Matrix::zero(n, p);
        x.set(0, k, 1);
        x.set(k, 0, 1);
        gens.push_back(x);
    }
    for (int k = r + 1; k < n; ++k) gens.push_back(Gf2Matrix::elementary(n, p, k, 0));
    for (int k = r + 1; k < p; ++k) gens.push_back(Gf2Matrix::elementary(n, p, 0, k));
    return span(gens, n, p);
}

}  // namespace f2rank2
