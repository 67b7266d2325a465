#pragma once

#include <map>
#include <string>
#include <vector>

#include "f2rank2/space.hpp"

namespace f2rank2 {

// Named fixture with self-check metadata. `expect` holds "key=value" pairs
// re-verified against the predicates module by self_check().
struct CatalogEntry {
    std::string name;
    std::string generic_text;
    AffineMatrixSpace space;
    std::map<std::string, int> expect;
    std::string note;

    const MatrixSpace& linear_space() const;  // rejects affine (non-linear) entries
};

class Catalog {
public:
    // Asset location: F2RANK2_CATALOG env var, else the built-in asset path.
    static const Catalog& instance();
    static Catalog load(const std::string& path);

    const CatalogEntry& get(const std::string& name) const;  // throws on unknown name
    bool has(const std::string& name) const;
    const std::vector<CatalogEntry>& entries() const { return entries_; }
    std::vector<std::string> names() const;

    // Re-verifies every expected property; returns one message per failure.
    std::vector<std::string> self_check() const;

private:
    std::vector<CatalogEntry> entries_;
    std::map<std::string, size_t> index_;
};

std::string default_catalog_path();

// R(s,t): matrices supported on the union of the first s rows and first t
// columns of Mat_{n,p}. dim = s*p + n*t - s*t.
MatrixSpace r_space(int s, int t, int n, int p);

// The parametric reduced subspaces of R(1,1): corner entry a (free or pinned
// to zero), symmetric pairing X between the first row and first column on
// r slots, then free column C and free row L tails.
MatrixSpace r11_family(int r, bool with_corner, int n, int p);

}  // namespace f2rank2
