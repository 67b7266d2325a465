#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <random>
#include <set>

#include "f2rank2/genmatrix.hpp"
#include "f2rank2/predicates.hpp"
#include "f2rank2/space.hpp"

using namespace f2rank2;

namespace {

Gf2Matrix M(const std::string& text) { return matrix_from_text(text); }

MatrixSpace G(const std::string& generic) {
    auto s = parse_generic(generic);
    REQUIRE(s.is_linear());
    return s.translation;
}

}  // namespace

TEST_CASE("span: canonical RREF basis") {
    Gf2Matrix j2 = M("1,0,0;0,1,0;0,0,0");
    MatrixSpace v = span({j2});
    CHECK(v.dim() == 1);
    CHECK(v.contains(j2));

    MatrixSpace u3 = G("[0,a,a+c;a,0,b;a+b,c,0]");
    CHECK(u3.dim() == 3);
    MatrixSpace v3 = G("[0,a,c+d;c,0,b;a+b,d,0]");
    CHECK(v3.dim() == 4);
    CHECK(u3.subset_of(v3));

    CHECK_THROWS_AS(span({j2, Gf2Matrix::zero(2, 2)}), std::invalid_argument);
    CHECK(span({}, 3, 3).dim() == 0);
}

TEST_CASE("span: canonicity under re-generation") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        MatrixSpace v = MatrixSpace::zero(3, 3);
        int d = 1 + rng() % 4;
        for (int k = 0; k < d; ++k) rref::insert(v.basis, 1 + rng() % 511);
        // random regeneration: span of random elements that cover the space
        auto els = elements_flat(v);
        std::vector<Gf2Matrix> gens;
        for (int k = 0; k < 20; ++k)
            gens.push_back(Gf2Matrix::unflatten(els[rng() % els.size()], 3, 3));
        MatrixSpace w = span(gens, 3, 3);
        if (w.dim() == v.dim()) CHECK(w == v);
        CHECK(w.subset_of(v));
        // span is idempotent
        CHECK(span(elements(v), 3, 3) == v);
    }
}

TEST_CASE("elements: counts and membership") {
    MatrixSpace zero = MatrixSpace::zero(3, 3);
    auto els = elements(zero);
    REQUIRE(els.size() == 1);
    CHECK(els[0].is_zero());

    MatrixSpace mata3 = G("[0,a,b;a,0,c;b,c,0]");
    auto alt = elements(mata3);
    CHECK(alt.size() == 8);
    for (const auto& m : alt) {
        CHECK(m == transpose(m));
        for (int i = 0; i < 3; ++i) CHECK(m.get(i, i) == 0);
    }

    MatrixSpace j3 = G("[a,c,d;0,a+b,e;0,0,b]");
    auto upper = elements(j3);
    CHECK(upper.size() == 32);
    std::set<uint64_t> distinct;
    for (const auto& m : upper) {
        distinct.insert(m.flatten());
        CHECK((m.get(0, 0) ^ m.get(1, 1) ^ m.get(2, 2)) == 0);
        CHECK(m.get(1, 0) == 0);
        CHECK(m.get(2, 0) == 0);
        CHECK(m.get(2, 1) == 0);
    }
    CHECK(distinct.size() == 32);
}

TEST_CASE("common_kernel and image_sum") {
    MatrixSpace vj2 = span({M("1,0,0;0,1,0;0,0,0")});
    VectorSpaceF2 ker = common_kernel(vj2);
    CHECK(ker.dim() == 1);
    CHECK(ker.contains(0b100));  // e3
    VectorSpaceF2 im = image_sum(vj2);
    CHECK(im.dim() == 2);
    CHECK(im.contains(0b001));
    CHECK(im.contains(0b010));
    CHECK(!im.contains(0b100));

    MatrixSpace u3 = G("[0,a,a+c;a,0,b;a+b,c,0]");
    CHECK(common_kernel(u3).dim() == 0);
    CHECK(image_sum(u3).dim() == 3);
    CHECK(is_reduced_space(u3));

    MatrixSpace r11 = G("[a,b,c;d,0,0;e,0,0]");
    CHECK(common_kernel(r11).dim() == 0);
    CHECK(image_sum(r11).dim() == 3);
}

TEST_CASE("reduced_space: preserves dim and upper rank") {
    MatrixSpace mata3 = G("[0,a,b;a,0,c;b,c,0]");
    MatrixSpace padded = tilde_embed(mata3, 4, 5);
    ReducedSpace red = reduced_space(padded);
    CHECK(red.n == 3);
    CHECK(red.p == 3);
    CHECK(red.space.dim() == 3);
    CHECK(upper_rank(red.space) == 2);

    // already reduced input: shape kept, urk kept
    ReducedSpace same = reduced_space(mata3);
    CHECK(same.n == 3);
    CHECK(same.p == 3);
    CHECK(upper_rank(same.space) == upper_rank(mata3));

    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        MatrixSpace v = MatrixSpace::zero(4, 4);
        for (int k = 0; k < 3; ++k) rref::insert(v.basis, 1 + (rng() & 0xFFFF) % 0xFFFF);
        if (v.dim() == 0) continue;
        ReducedSpace r = reduced_space(v);
        CHECK(r.space.dim() == v.dim());
        CHECK(upper_rank(r.space) == upper_rank(v));
        CHECK(is_reduced_space(r.space));
    }
}

TEST_CASE("tilde_embed: dims and upper rank preserved") {
    MatrixSpace mata3 = G("[0,a,b;a,0,c;b,c,0]");
    CHECK(tilde_embed(mata3, 3, 3) == mata3);
    MatrixSpace padded = tilde_embed(mata3, 4, 4);
    CHECK(padded.dim() == 3);
    CHECK(upper_rank(padded) == 2);
    CHECK_THROWS_AS(tilde_embed(mata3, 2, 3), std::invalid_argument);

    for (const char* g : {"[a,c,d;0,a+b,e;0,0,b]", "[0,a,a+c;a,0,b;a+b,c,0]",
                          "[0,a,c+d;c,0,b;a+b,d,0]"}) {
        MatrixSpace v = G(g);
        CHECK(tilde_embed(v, 4, 5).dim() == v.dim());
        CHECK(upper_rank(tilde_embed(v, 4, 5)) == upper_rank(v));
    }
}

TEST_CASE("vee_join: shapes, dims, fixed examples") {
    MatrixSpace z1 = MatrixSpace::zero(1, 1);
    MatrixSpace z2 = MatrixSpace::zero(2, 2);
    MatrixSpace j = vee_join(z1, z2);
    CHECK(j.n == 3);
    CHECK(j.dim() == 2);
    for (const auto& m : elements(j)) {
        CHECK(m.get(0, 0) == 0);
        CHECK(m.get(1, 0) == 0);
        CHECK(m.get(2, 0) == 0);
        CHECK(m.get(1, 1) == 0);
        CHECK(m.get(2, 1) == 0);
        CHECK(m.get(2, 2) == 0);
    }

    // {0} v {0} v {0} = strictly upper-triangular 3x3
    MatrixSpace nt3 = vee_join(vee_join(z1, z1), z1);
    CHECK(nt3 == G("[0,a,b;0,0,c;0,0,0]"));

    // F2 C v {0} and {0} v F2 C: 3-dimensional with trivial spectrum
    MatrixSpace c = span({M("0,1;1,1")});
    MatrixSpace cl = vee_join(c, z1);
    CHECK(cl.dim() == 3);
    CHECK(has_trivial_spectrum(cl));
    CHECK(cl == G("[0,a,b;a,a,c;0,0,0]"));
    MatrixSpace cr = vee_join(z1, c);
    CHECK(cr == G("[0,b,c;0,0,a;0,a,a]"));
    CHECK(has_trivial_spectrum(cr));
    CHECK(has_trivial_spectrum(nt3));
}

TEST_CASE("evaluation_image") {
    MatrixSpace u3 = G("[0,a,a+c;a,0,b;a+b,c,0]");
    CHECK(evaluation_image(u3, Gf2Vector{3, 0}).dim() == 0);
    for (uint64_t x = 1; x < 8; ++x) CHECK(evaluation_image(u3, Gf2Vector{3, x}).dim() == 2);

    MatrixSpace v3 = G("[0,a,c+d;c,0,b;a+b,d,0]");
    int twos = 0, threes = 0;
    for (uint64_t x = 1; x < 8; ++x) {
        int d = evaluation_image(v3, Gf2Vector{3, x}).dim();
        if (d == 2) ++twos;
        if (d == 3) ++threes;
    }
    CHECK(twos == 4);
    CHECK(threes == 3);

    CHECK_THROWS_AS(evaluation_image(u3, Gf2Vector{2, 1}), std::invalid_argument);
}

TEST_CASE("dual_space") {
    MatrixSpace u3 = G("[0,a,a+c;a,0,b;a+b,c,0]");
    MatrixSpace du3 = dual_space(u3);
    CHECK(du3.n == 3);
    CHECK(du3.p == 3);
    CHECK(du3.dim() == 3);

    // dual dimension equals the source dimension on reduced spaces
    MatrixSpace j3 = G("[a,c,d;0,a+b,e;0,0,b]");
    CHECK(dual_space(j3).p == 5);
    CHECK(dual_space(j3).dim() == 3);

    MatrixSpace not_reduced = span({M("1,0,0;0,1,0;0,0,0")});
    CHECK_THROWS_AS(dual_space(not_reduced), std::invalid_argument);
}

TEST_CASE("transpose_space") {
    MatrixSpace mata3 = G("[0,a,b;a,0,c;b,c,0]");
    CHECK(transpose_space(mata3) == mata3);
    MatrixSpace u3 = G("[0,a,a+c;a,0,b;a+b,c,0]");
    CHECK(transpose_space(u3) == u3);

    MatrixSpace j3 = G("[a,c,d;0,a+b,e;0,0,b]");
    CHECK(transpose_space(transpose_space(j3)) == j3);

    // transpose of J3 = K J3 K^-1 for the anti-diagonal K
    Gf2Matrix k = M("0,0,1;0,1,0;1,0,0");
    std::vector<Gf2Matrix> conj;
    for (const auto& b : j3.basis_matrices()) conj.push_back(mul(mul(k, b), k));
    CHECK(transpose_space(j3) == span(conj, 3, 3));
}

TEST_CASE("block_identity_check") {
    CHECK(block_identity_check(M("1,0,0;0,1,0;0,0,0")));
    // at 3x3 the identity is exactly singularity
    int rank3_failures = 0;
    for (uint64_t bits = 0; bits < 512; ++bits) {
        Gf2Matrix m = Gf2Matrix::unflatten(bits, 3, 3);
        CHECK(block_identity_check(m) == (det(m) == 0));
        if (rank(m) == 3 && !block_identity_check(m)) ++rank3_failures;
    }
    CHECK(rank3_failures == 168);

    // holds for every rank <= 2 matrix at 3x4
    for (uint64_t bits = 0; bits < (1ull << 12); ++bits) {
        Gf2Matrix m = Gf2Matrix::unflatten(bits, 3, 4);
        if (rank(m) <= 2) CHECK(block_identity_check(m));
    }
    CHECK_THROWS_AS(block_identity_check(M("1,0;0,1")), std::invalid_argument);
}

TEST_CASE("affine normalization") {
    MatrixSpace t = span({M("1,0;0,0"), M("0,1;0,0")});
    AffineMatrixSpace s1 = AffineMatrixSpace::make(M("1,1;0,1"), t);
    AffineMatrixSpace s2 = AffineMatrixSpace::make(M("0,1;0,1"), t);  // same affine set
    CHECK(s1 == s2);
    CHECK(s1.base == M("0,0;0,1"));
    CHECK(s1.contains(M("1,1;0,1")));
    CHECK(!s1.contains(M("0,0;1,1")));
    CHECK(!s1.is_linear());
    AffineMatrixSpace lin = AffineMatrixSpace::make(M("1,0;0,0"), t);
    CHECK(lin.is_linear());
}

TEST_CASE("space text round-trip") {
    MatrixSpace u3 = G("[0,a,a+c;a,0,b;a+b,c,0]");
    AffineMatrixSpace aff = AffineMatrixSpace::make(Gf2Matrix::identity(3), u3);
    CHECK(space_from_text(to_space_text(u3)) == AffineMatrixSpace::linear(u3));
    CHECK(space_from_text(to_space_text(aff)) == aff);
    CHECK_THROWS(space_from_text("nonsense"));
}
