#include <doctest.h>

#include <stdexcept>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "f2rank2/catalog.hpp"
#include "f2rank2/genmatrix.hpp"
#include "f2rank2/orbits.hpp"
#include "f2rank2/predicates.hpp"

using namespace f2rank2;

TEST_CASE("catalog loads and self-checks") {
    const auto& cat = Catalog::instance();
    CHECK(cat.entries().size() >= 40);
    auto failures = cat.self_check();
    for (const auto& f : failures) MESSAGE(f);
    CHECK(failures.empty());
}

TEST_CASE("catalog: fixed expectations") {
    const auto& cat = Catalog::instance();
    CHECK(cat.get("J3").linear_space().dim() == 5);
    CHECK(upper_rank(cat.get("J3").linear_space()) == 2);
    CHECK(cat.get("V3").linear_space().dim() == 4);
    CHECK(is_rank_constant_2(cat.get("V3").linear_space()));
    CHECK(cat.get("Mata3").linear_space().dim() == 3);
    CHECK(transpose_space(cat.get("Mata3").linear_space()) == cat.get("Mata3").linear_space());
    CHECK(cat.get("U3").linear_space().subset_of(cat.get("V3").linear_space()));
    CHECK_THROWS_AS(cat.get("nonesuch"), std::invalid_argument);
    CHECK_THROWS_AS(cat.get("C").linear_space(), std::invalid_argument);  // affine point
}

TEST_CASE("r_space: dims and upper ranks") {
    CHECK(r_space(1, 1, 3, 3).dim() == 5);
    CHECK(r_space(0, 0, 3, 3).dim() == 0);
    CHECK(r_space(2, 0, 3, 3).dim() == 6);
    CHECK(upper_rank(r_space(2, 0, 3, 3)) == 2);
    CHECK(upper_rank(r_space(1, 1, 3, 3)) == 2);
    CHECK(r_space(1, 1, 4, 4).dim() == 7);
    CHECK(upper_rank(r_space(1, 1, 4, 4)) == 2);
    CHECK_THROWS_AS(r_space(4, 0, 3, 3), std::invalid_argument);
}

TEST_CASE("r11_family: members are reduced subspaces of R(1,1)") {
    MatrixSpace r11 = r_space(1, 1, 3, 3);
    CHECK(r11_family(0, true, 3, 3) == r11);
    CHECK(r11_family(1, false, 3, 3).dim() == 3);
    CHECK(r11_family(2, false, 3, 3).dim() == 2);
    for (int r = 0; r <= 2; ++r)
        for (bool corner : {true, false}) {
            MatrixSpace m = r11_family(r, corner, 3, 3);
            CHECK(m.subset_of(r11));
            CHECK(is_reduced(m));
            CHECK(upper_rank(m) == 2);
        }
    CHECK_THROWS_AS(r11_family(3, true, 3, 3), std::invalid_argument);
}

TEST_CASE("catalog: corrupted asset shows up in self_check") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "f2rank2-catalog-test";
    fs::create_directories(dir);
    {
        std::ofstream out(dir / "catalog.txt");
        out << "name: broken\n";
        out << "matrix: [a,0;0,a]\n";
        out << "expect: dim=2\n";  // actual dim is 1
    }
    Catalog c = Catalog::load((dir / "catalog.txt").string());
    auto failures = c.self_check();
    REQUIRE(failures.size() == 1);
    CHECK(failures[0].find("broken") != std::string::npos);
    fs::remove_all(dir);
}
