#include "f2rank2/genmatrix.hpp"

#include <algorithm>

namespace f2rank2 {

namespace {

struct Entry {
    int constant = 0;
    uint32_t vars = 0;  // bit k = letter 'a'+k
};

struct Parser {
    const std::string& text;
    size_t pos = 0;

    explicit Parser(const std::string& t) : text(t) {}

    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n'))
            ++pos;
    }

    [[noreturn]] void fail(const std::string& msg) { throw GenMatrixParseError(msg, pos); }

    char peek() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of input");
        return text[pos];
    }

    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos;
    }

    Entry parse_expr() {
        Entry e;
        while (true) {
            char c = peek();
            if (c == '0') {
                ++pos;
            } else if (c == '1') {
                e.constant ^= 1;
                ++pos;
            } else if (c >= 'a' && c <= 'z') {
                e.vars ^= 1u << (c - 'a');
                ++pos;
            } else {
                fail("expected '0', '1' or a letter");
            }
            skip_ws();
            if (pos < text.size() && text[pos] == '+')
                ++pos;
            else
                break;
        }
        return e;
    }

    std::vector<std::vector<Entry>> parse_matrix() {
        skip_ws();
        if (pos >= text.size()) fail("empty input");
        expect('[');
        std::vector<std::vector<Entry>> rows(1);
        while (true) {
            rows.back().push_back(parse_expr());
            char c = peek();
            if (c == ',') {
                ++pos;
            } else if (c == ';') {
                ++pos;
                rows.emplace_back();
            } else if (c == ']') {
                ++pos;
                break;
            } else {
                fail("expected ',', ';' or ']'");
            }
        }
        skip_ws();
        if (pos != text.size()) fail("trailing characters after ']'");
        return rows;
    }
};

}  // namespace

AffineMatrixSpace parse_generic(const std::string& text) {
    Parser parser(text);
    auto grid = parser.parse_matrix();
    size_t n = grid.size();
    size_t p = grid[0].size();
    for (const auto& row : grid)
        if (row.size() != p) throw GenMatrixParseError("non-rectangular matrix", text.size());
    if (n > 8 || p > 8) throw GenMatrixParseError("matrix larger than 8x8", text.size());

    uint32_t used = 0;
    for (const auto& row : grid)
        for (const auto& e : row) used |= e.vars;

    Gf2Matrix base = Gf2Matrix::zero(static_cast<int>(n), static_cast<int>(p));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < p; ++j)
            base.set(static_cast<int>(i), static_cast<int>(j), grid[i][j].constant);

    // Coefficient matrix of each letter: evaluate at the unit assignment.
    std::vector<Gf2Matrix> coeffs;
    for (int k = 0; k < 26; ++k) {
        if (!((used >> k) & 1)) continue;
        Gf2Matrix a = Gf2Matrix::zero(static_cast<int>(n), static_cast<int>(p));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < p; ++j)
                a.set(static_cast<int>(i), static_cast<int>(j), (grid[i][j].vars >> k) & 1);
        coeffs.push_back(a);
    }
    MatrixSpace translation = span(coeffs, static_cast<int>(n), static_cast<int>(p));
    return AffineMatrixSpace::make(base, translation);
}

std::string format_generic(const AffineMatrixSpace& s) {
    const MatrixSpace& tr = s.translation;
    if (tr.dim() > 26) throw std::invalid_argument("format_generic: dim > 26");
    auto mats = tr.basis_matrices();
    std::string out = "[";
    for (int i = 0; i < tr.n; ++i) {
        if (i) out += ';';
        for (int j = 0; j < tr.p; ++j) {
            if (j) out += ',';
            std::string entry;
            for (size_t k = 0; k < mats.size(); ++k) {
                if (!mats[k].get(i, j)) continue;
                if (!entry.empty()) entry += '+';
                entry += static_cast<char>('a' + k);
            }
            if (s.base.get(i, j)) {
                if (!entry.empty()) entry += '+';
                entry += '1';
            }
            out += entry.empty() ? "0" : entry;
        }
    }
    out += ']';
    return out;
}

std::string format_generic(const MatrixSpace& v) {
    return format_generic(AffineMatrixSpace::linear(v));
}

}  // namespace f2rank2
