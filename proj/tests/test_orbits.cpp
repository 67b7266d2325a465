#include <doctest.h>

#include <stdexcept>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "f2rank2/genmatrix.hpp"
#include "f2rank2/orbits.hpp"
#include "f2rank2/parallel.hpp"
#include "f2rank2/predicates.hpp"

using namespace f2rank2;

namespace {

MatrixSpace G(const std::string& generic) { return parse_generic(generic).translation; }

MatrixSpace random_image(const MatrixSpace& v, std::mt19937_64& rng) {
    const auto& gn = gl_group(v.n);
    const auto& gp = gl_group(v.p);
    return apply_action(gn[rng() % gn.size()], v, gp[rng() % gp.size()]);
}

}  // namespace

TEST_CASE("canonical_equiv: orbit invariance on U3") {
    MatrixSpace u3 = G("[0,a,a+c;a,0,b;a+b,c,0]");
    auto key = canonical_equiv(u3);
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 100; ++trial)
        CHECK(canonical_equiv(random_image(u3, rng)) == key);
}

TEST_CASE("canonical_equiv: unsupported shapes rejected") {
    CHECK_THROWS_AS(canonical_equiv(MatrixSpace::zero(4, 4)), std::invalid_argument);
    CHECK_THROWS_AS(canonical_equiv(MatrixSpace::zero(5, 3)), std::invalid_argument);
    CHECK_NOTHROW(canonical_equiv(MatrixSpace::zero(3, 4)));
    CHECK_NOTHROW(canonical_equiv(MatrixSpace::zero(4, 3)));
}

TEST_CASE("J3 is equivalent and similar to its transpose") {
    MatrixSpace j3 = G("[a,c,d;0,a+b,e;0,0,b]");
    MatrixSpace j3t = transpose_space(j3);
    CHECK(canonical_equiv(j3) == canonical_equiv(j3t));
    auto sim = are_similar(j3, j3t);
    REQUIRE(sim.has_value());
    // the anti-diagonal permutation works and so must the found witness
    CHECK(apply_action(sim->P, j3, sim->Q) == j3t);
    CHECK(mul(sim->P, sim->Q) == Gf2Matrix::identity(3));
}

TEST_CASE("are_equivalent: witnesses and negatives") {
    MatrixSpace u3 = G("[0,a,a+c;a,0,b;a+b,c,0]");
    MatrixSpace mata3 = G("[0,a,b;a,0,c;b,c,0]");

    auto self = are_equivalent(u3, u3);
    REQUIRE(self.has_value());
    CHECK(apply_action(self->P, u3, self->Q) == u3);

    CHECK(!are_equivalent(u3, mata3).has_value());

    // the claimed-inequivalent pair collapses onto V3
    MatrixSpace v3 = G("[0,a,c+d;c,0,b;a+b,d,0]");
    MatrixSpace b1 = G("[a,c,c;d,a+b,c;d,d,b]");
    MatrixSpace b2 = G("[a,0,c;d,a+b,0;0,c+d,b]");
    auto w1 = are_equivalent(b1, v3);
    auto w2 = are_equivalent(b2, v3);
    REQUIRE(w1.has_value());
    REQUIRE(w2.has_value());
    CHECK(canonical_equiv(b1) == canonical_equiv(b2));
}

TEST_CASE("are_similar vs are_equivalent on T2, T3") {
    MatrixSpace t2 = G("[a,b,a;a,a,c;0,a,a]");
    MatrixSpace t3 = G("[a,b,a;a,0,c;0,a,a]");
    CHECK(are_equivalent(t2, t3).has_value());
    CHECK(!are_similar(t2, t3).has_value());
    auto self = are_similar(t2, t2);
    REQUIRE(self.has_value());
    CHECK(apply_action(self->P, t2, self->Q) == t2);
}

TEST_CASE("are_equivalent agrees with canonical keys on random pairs") {
    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 500; ++trial) {
        MatrixSpace v = MatrixSpace::zero(3, 3);
        MatrixSpace w = MatrixSpace::zero(3, 3);
        int d = 1 + rng() % 3;
        for (int k = 0; k < d; ++k) rref::insert(v.basis, 1 + rng() % 511);
        if (rng() & 1) {
            w = random_image(v, rng);
        } else {
            for (int k = 0; k < d; ++k) rref::insert(w.basis, 1 + rng() % 511);
        }
        if (v.dim() != w.dim()) continue;
        bool keys_match = canonical_equiv(v) == canonical_equiv(w);
        auto wit = are_equivalent(v, w);
        CHECK(keys_match == wit.has_value());
        if (wit) CHECK(apply_action(wit->P, v, wit->Q) == w);
    }
}

TEST_CASE("canonical_sim: conjugation invariance, distinct from equiv keys") {
    MatrixSpace t2 = G("[a,b,a;a,a,c;0,a,a]");
    auto key = canonical_sim(t2);
    std::mt19937_64 rng(4321);
    const auto& g3 = gl_group(3);
    for (int trial = 0; trial < 100; ++trial)
        CHECK(canonical_sim(conjugate_space(g3[rng() % g3.size()], t2)) == key);
    CHECK(key.action == GroupAction::Similarity);
    CHECK(canonical_equiv(t2).action == GroupAction::Equivalence);
}

TEST_CASE("space_from_key reconstructs the canonical representative") {
    MatrixSpace v3 = G("[0,a,c+d;c,0,b;a+b,d,0]");
    auto key = canonical_equiv(v3);
    MatrixSpace rep = space_from_key(key);
    CHECK(canonical_equiv(rep) == key);
    CHECK(rep.dim() == v3.dim());
}

TEST_CASE("affine_equivalent") {
    auto afft2 = parse_generic("[a+1,b,a;a,a+1,c;0,a,a+1]");
    auto afft3 = parse_generic("[a+1,b,a;a,1,c;0,a,a+1]");
    auto afft1 = parse_generic("[a+1,b,a;a,a+1,c;b+c,a,a+1]");
    auto affnt3 = parse_generic("[1,a,b;0,1,c;0,0,1]");
    auto affcl = parse_generic("[1,a,b;a,a+1,c;0,0,1]");

    auto wit = affine_equivalent(afft2, afft3);
    REQUIRE(wit.has_value());
    // re-apply: P (base + H) Q = target set
    {
        MatrixSpace moved = apply_action(wit->P, afft2.translation, wit->Q);
        CHECK(moved == afft3.translation);
        CHECK(afft3.contains(mul(mul(wit->P, afft2.base), wit->Q)));
    }

    CHECK(!affine_equivalent(afft1, afft2).has_value());
    CHECK(!affine_equivalent(affnt3, affcl).has_value());
    auto self = affine_equivalent(afft1, afft1);
    CHECK(self.has_value());

    // equivalent affine spaces have equivalent translation spaces
    CHECK(are_equivalent(afft2.translation, afft3.translation).has_value());
}

TEST_CASE("reduced_space recovers the embedded space up to equivalence") {
    MatrixSpace mata3 = G("[0,a,b;a,0,c;b,c,0]");
    ReducedSpace red = reduced_space(tilde_embed(mata3, 4, 5));
    REQUIRE(red.n == 3);
    REQUIRE(red.p == 3);
    CHECK(are_equivalent(red.space, mata3).has_value());

    // the same through a random move of the padded space
    std::mt19937_64 rng(55);
    const auto& g4 = gl_group(4);
    MatrixSpace padded = tilde_embed(mata3, 4, 4);
    for (int trial = 0; trial < 10; ++trial) {
        MatrixSpace image = apply_action(g4[rng() % g4.size()], padded, g4[rng() % g4.size()]);
        ReducedSpace r = reduced_space(image);
        REQUIRE(r.n == 3);
        REQUIRE(r.p == 3);
        CHECK(are_equivalent(r.space, mata3).has_value());
    }
}

TEST_CASE("embeds_into") {
    MatrixSpace u3 = G("[0,a,a+c;a,0,b;a+b,c,0]");
    MatrixSpace v3 = G("[0,a,c+d;c,0,b;a+b,d,0]");
    MatrixSpace j3 = G("[a,c,d;0,a+b,e;0,0,b]");
    CHECK(embeds_into(u3, v3));
    CHECK(!embeds_into(u3, j3));
    CHECK(embeds_into(j3, j3));
}

TEST_CASE("j2_stabilizer: sizes and correctness") {
    for (auto [n, p, want] : {std::tuple{3, 3, 96}, {3, 4, 2304}, {4, 3, 2304}, {4, 4, 55296}}) {
        const auto& stab = j2_stabilizer(n, p);
        CHECK(stab.size() == static_cast<size_t>(want));
        Gf2Matrix j2 = j2_matrix(n, p);
        for (size_t k = 0; k < stab.size(); k += 97)
            CHECK(mul(mul(stab[k].P, j2), stab[k].Q) == j2);
    }
}

TEST_CASE("stab_canonical_payload refines equivalence") {
    // Stab(J2)-equal payloads imply truly equivalent spaces; J2-containing
    // images under the stabilizer land in the same stab class.
    std::mt19937_64 rng(2024);
    const auto& stab = j2_stabilizer(3, 3);
    MatrixSpace v = MatrixSpace::zero(3, 3);
    v.basis.push_back(j2_matrix(3, 3).flatten());
    rref::insert(v.basis, matrix_from_text("0,0,1;0,0,0;0,1,0").flatten());
    auto payload = stab_canonical_payload(3, 3, v.basis);
    for (int trial = 0; trial < 50; ++trial) {
        const auto& w = stab[rng() % stab.size()];
        MatrixSpace image = apply_action(w.P, v, w.Q);
        CHECK(image.contains(j2_matrix(3, 3)));
        CHECK(stab_canonical_payload(3, 3, image.basis) == payload);
    }
}

TEST_CASE("affine equivalence preserves irreducibility of the translation") {
    // Sample affine-equivalent pairs I+H1 ~ I+H2: move I+H1 by a random
    // (P,Q) and keep the image only when it contains the identity again.
    std::mt19937_64 rng(808);
    const auto& g3 = gl_group(3);
    std::vector<MatrixSpace> pool;
    for (const char* g : {"[0,a,b;0,0,c;0,0,0]", "[0,a,b;a,a,c;0,0,0]", "[a,b,a;a,a,c;b+c,a,a]",
                          "[a,b,a;a,a,c;0,a,a]", "[a,b,a;a,0,c;0,a,a]"})
        pool.push_back(parse_generic(g).translation);
    Gf2Matrix id = Gf2Matrix::identity(3);
    int hits = 0;
    for (int trial = 0; trial < 4000 && hits < 60; ++trial) {
        const MatrixSpace& h1 = pool[rng() % pool.size()];
        const Gf2Matrix& p = g3[rng() % g3.size()];
        const Gf2Matrix& q = g3[rng() % g3.size()];
        AffineMatrixSpace image =
            AffineMatrixSpace::make(mul(p, q), apply_action(p, h1, q));
        if (!image.contains(id)) continue;
        ++hits;
        // image = I + H2 with H2 = the image translation
        CHECK(is_irreducible_action(h1) == is_irreducible_action(image.translation));
    }
    CHECK(hits >= 30);
}

TEST_CASE("scans are deterministic across thread counts") {
    MatrixSpace v3 = G("[0,a,c+d;c,0,b;a+b,d,0]");
    MatrixSpace t2 = G("[a,b,a;a,a,c;0,a,a]");
    par::set_threads(1);
    reset_cache();
    auto e1 = canonical_equiv(v3);
    auto s1 = canonical_sim(t2);
    auto st1 = stab_canonical_payload(3, 3, v3.basis);
    par::set_threads(3);
    reset_cache();
    CHECK(canonical_equiv(v3) == e1);
    CHECK(canonical_sim(t2) == s1);
    CHECK(stab_canonical_payload(3, 3, v3.basis) == st1);
    par::set_threads(0);
    reset_cache();
}

TEST_CASE("persistent cache round-trip and warm determinism") {
    std::string dir = std::filesystem::temp_directory_path() / "f2rank2-cache-test";
    std::filesystem::remove_all(dir);
    set_cache_dir(dir);
    reset_cache();

    MatrixSpace u3 = G("[0,a,a+c;a,0,b;a+b,c,0]");
    auto key1 = canonical_equiv(u3);
    auto stats1 = cache_stats();
    CHECK(stats1.entries >= 1);

    // a fresh in-memory state must reload the same key from the file
    reset_cache();
    auto key2 = canonical_equiv(u3);
    CHECK(key1 == key2);
    auto stats2 = cache_stats();
    CHECK(stats2.hits >= 1);

    // file has the documented header
    std::ifstream in(dir + "/equiv-3x3.cache");
    std::string header;
    std::getline(in, header);
    CHECK(header == "f2rank2-cache v1 3x3");

    set_cache_dir("");
    reset_cache();
    std::filesystem::remove_all(dir);
}
