#include <doctest.h>

#include <stdexcept>

#include <map>
#include <random>
#include <set>

#include "f2rank2/gf2.hpp"
#include "oracles.hpp"

using namespace f2rank2;

namespace {

Gf2Matrix M(const std::string& text) { return matrix_from_text(text); }

}  // namespace

TEST_CASE("rank: fixed examples") {
    CHECK(rank(M("1,0,0;0,1,0;0,0,0")) == 2);  // J2 inside Mat_3
    CHECK(rank(M("0,0,1;0,0,0;0,1,0")) == 2);
    CHECK(rank(Gf2Matrix::identity(3)) == 3);
    CHECK(rank(Gf2Matrix::zero(4, 3)) == 0);
}

TEST_CASE("rank: echelon agrees with the minor-search oracle on all of Mat_3") {
    std::map<int, int> histogram;
    for (uint64_t bits = 0; bits < 512; ++bits) {
        Gf2Matrix m = Gf2Matrix::unflatten(bits, 3, 3);
        int r = rank(m);
        CHECK(r == oracles::rank_by_minors(m));
        ++histogram[r];
    }
    CHECK(histogram[0] == 1);
    CHECK(histogram[1] == 49);
    CHECK(histogram[2] == 294);
    CHECK(histogram[3] == 168);
}

TEST_CASE("rank: equals rank of the transpose") {
    for (uint64_t bits = 0; bits < 512; ++bits) {
        Gf2Matrix m = Gf2Matrix::unflatten(bits, 3, 3);
        CHECK(rank(m) == rank(transpose(m)));
    }
    for (uint64_t bits = 0; bits < (1ull << 12); ++bits) {
        Gf2Matrix m = Gf2Matrix::unflatten(bits, 3, 4);
        CHECK(rank(m) == rank(transpose(m)));
    }
}

TEST_CASE("det: examples and multiplicativity") {
    CHECK(det(Gf2Matrix::identity(3)) == 1);
    CHECK(det(M("1,0,1;1,1,1;0,1,1")) == 1);
    CHECK_THROWS_AS(det(Gf2Matrix::zero(2, 3)), std::invalid_argument);

    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 100; ++trial) {
        Gf2Matrix a = Gf2Matrix::unflatten(rng() & 0xFFFF, 4, 4);
        Gf2Matrix b = Gf2Matrix::unflatten(rng() & 0xFFFF, 4, 4);
        CHECK(det(mul(a, b)) == (det(a) & det(b)));
    }
    for (uint64_t bits = 0; bits < 512; ++bits) {
        Gf2Matrix m = Gf2Matrix::unflatten(bits, 3, 3);
        CHECK(det(m) == (rank(m) == 3 ? 1 : 0));
    }
}

TEST_CASE("adjugate: laws") {
    CHECK(adjugate(Gf2Matrix::identity(2)) == Gf2Matrix::identity(2));
    CHECK(adjugate(M("0,1;0,0")) == M("0,1;0,0"));
    CHECK_THROWS_AS(adjugate(Gf2Matrix::identity(4)), std::invalid_argument);

    // M * adj(M) = det(M) * I on every 3x3 matrix.
    for (uint64_t bits = 0; bits < 512; ++bits) {
        Gf2Matrix m = Gf2Matrix::unflatten(bits, 3, 3);
        Gf2Matrix want = det(m) ? Gf2Matrix::identity(3) : Gf2Matrix::zero(3, 3);
        CHECK(mul(m, adjugate(m)) == want);
    }
    // Additivity over all 2x2 pairs: the adjugate is linear there.
    for (uint64_t a = 0; a < 16; ++a)
        for (uint64_t b = 0; b < 16; ++b) {
            Gf2Matrix ma = Gf2Matrix::unflatten(a, 2, 2);
            Gf2Matrix mb = Gf2Matrix::unflatten(b, 2, 2);
            CHECK(adjugate(add(ma, mb)) == add(adjugate(ma), adjugate(mb)));
        }
}

TEST_CASE("charpoly: examples") {
    Gf2Matrix a = M("1,0,1;1,0,0;0,1,1");
    CHECK(charpoly(a) == Gf2Poly{0b1011});  // t^3 + t + 1
    CHECK(charpoly(add(Gf2Matrix::identity(3), a)) == Gf2Poly{0b1101});  // t^3 + t^2 + 1
    CHECK(charpoly(Gf2Matrix::zero(4, 4)) == Gf2Poly{1u << 4});
    CHECK(charpoly(Gf2Matrix::zero(5, 5)) == Gf2Poly{1u << 5});
    CHECK_THROWS_AS(charpoly(Gf2Matrix::zero(6, 6)), std::invalid_argument);
    CHECK(Gf2Poly{0b1011}.to_string() == "t^3+t+1");
}

TEST_CASE("charpoly: evaluation at 1 equals det(M + I)") {
    for (uint64_t bits = 0; bits < 512; ++bits) {
        Gf2Matrix m = Gf2Matrix::unflatten(bits, 3, 3);
        CHECK(charpoly(m).eval(1) == det(add(m, Gf2Matrix::identity(3))));
    }
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        Gf2Matrix m = Gf2Matrix::unflatten(rng() & 0xFFFF, 4, 4);
        CHECK(charpoly(m).eval(1) == det(add(m, Gf2Matrix::identity(4))));
    }
    for (int trial = 0; trial < 50; ++trial) {
        Gf2Matrix m = Gf2Matrix::unflatten(rng() & ((1ull << 25) - 1), 5, 5);
        CHECK(charpoly(m).eval(1) == det(add(m, Gf2Matrix::identity(5))));
    }
}

TEST_CASE("enumerate_group: counts and order") {
    CHECK(enumerate_group(1).size() == 1);
    CHECK(enumerate_group(2).size() == 6);
    CHECK(enumerate_group(3).size() == 168);
    CHECK(enumerate_group(4).size() == 20160);
    CHECK_THROWS_AS(enumerate_group(5), std::invalid_argument);

    const auto& g3 = gl_group(3);
    for (size_t i = 1; i < g3.size(); ++i) CHECK(g3[i - 1].serial() < g3[i].serial());
}

TEST_CASE("enumerate_group: closed under product and inverse") {
    const auto& g3 = gl_group(3);
    std::set<uint64_t> serials;
    for (const auto& g : g3) serials.insert(g.serial());
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 1000; ++trial) {
        const Gf2Matrix& a = g3[rng() % g3.size()];
        const Gf2Matrix& b = g3[rng() % g3.size()];
        CHECK(serials.count(mul(a, b).serial()) == 1);
        CHECK(serials.count(inverse(a)->serial()) == 1);
    }
    const auto& inv = gl_inverse_index(3);
    for (size_t k = 0; k < g3.size(); ++k)
        CHECK(mul(g3[k], g3[inv[k]]) == Gf2Matrix::identity(3));
}

TEST_CASE("quadform: coset search for a non-singular representative") {
    // The zero form: its coset is the alternating space, all singular.
    QuadForm zero{3, Gf2Matrix::zero(3, 3)};
    CHECK(!quadform_has_nonsingular_rep(zero).has_value());

    // x1*x2 as a 3-variable form has a non-singular representative.
    QuadForm split = QuadForm::from_matrix(M("0,1,0;0,0,0;0,0,0"));
    auto wit = quadform_has_nonsingular_rep(split);
    REQUIRE(wit.has_value());
    CHECK(det(*wit) == 1);
    CHECK(QuadForm::from_matrix(*wit) == split);

    // The displayed witness for that coset is indeed in it and non-singular.
    Gf2Matrix displayed = M("0,1,1;0,0,1;1,1,0");
    CHECK(det(displayed) == 1);
    CHECK(QuadForm::from_matrix(displayed) == split);

    // Same for the witness of x1^2 + x1*x2 + x2^2 padded by a zero variable.
    Gf2Matrix displayed2 = M("1,1,0;0,1,1;0,1,0");
    CHECK(det(displayed2) == 1);
    CHECK(QuadForm::from_matrix(displayed2) == QuadForm::from_matrix(M("1,1,0;0,1,0;0,0,0")));

    // Every non-zero form on 3 variables is represented by a non-singular
    // matrix; witnesses re-verify.
    for (uint64_t bits = 1; bits < 64; ++bits) {
        Gf2Matrix rep = Gf2Matrix::zero(3, 3);
        int k = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j, ++k)
                if ((bits >> k) & 1) rep.set(i, j, 1);
        QuadForm q{3, rep};
        auto w = quadform_has_nonsingular_rep(q);
        REQUIRE(w.has_value());
        CHECK(det(*w) == 1);
        CHECK(QuadForm::from_matrix(*w) == q);
    }

    CHECK_THROWS_AS(quadform_has_nonsingular_rep(QuadForm{4, Gf2Matrix::zero(4, 4)}),
                    std::invalid_argument);
}

TEST_CASE("quadform: evaluation matches the representative") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        Gf2Matrix p = Gf2Matrix::unflatten(rng() & 0x1FF, 3, 3);
        QuadForm q = QuadForm::from_matrix(p);
        for (uint64_t x = 0; x < 8; ++x) {
            Gf2Vector v{3, x};
            // q(x) = x^T P x computed directly
            int direct = 0;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) direct ^= v.get(i) & p.get(i, j) & v.get(j);
            CHECK(q.eval(v) == direct);
        }
    }
}

TEST_CASE("matrix text and hex round-trips") {
    Gf2Matrix j2 = M("1,0,0;0,1,0;0,0,0");
    CHECK(to_text(j2) == "1,0,0;0,1,0;0,0,0");
    CHECK(matrix_from_text(to_text(j2)) == j2);
    CHECK(matrix_from_hex(to_hex(j2)) == j2);
    CHECK(to_hex(j2) == "3x3:h120");

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 1 + rng() % 5, p = 1 + rng() % 5;
        Gf2Matrix m = Gf2Matrix::unflatten(rng() & ((1ull << (n * p)) - 1), n, p);
        CHECK(matrix_from_text(to_text(m)) == m);
        CHECK(matrix_from_hex(to_hex(m)) == m);
    }
    CHECK_THROWS(matrix_from_text("1,0;1"));
    CHECK_THROWS(matrix_from_hex("3x3:hZZZ"));
}

TEST_CASE("rank_table matches rank") {
    const auto& t = rank_table(3, 4);
    for (uint64_t bits = 0; bits < (1ull << 12); ++bits)
        CHECK(t[bits] == rank(Gf2Matrix::unflatten(bits, 3, 4)));
}
