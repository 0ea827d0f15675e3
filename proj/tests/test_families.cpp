#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "maxcomm/families.hpp"

using namespace maxcomm;

TEST_CASE("constant family") {
    const Grid g(2, 4, 0.25);
    const GridFunction b = sample(constant_family(2, 3.0), g);
    for (std::int64_t i = 0; i < g.cell_count(); ++i) CHECK(b[i] == 3.0);
}

TEST_CASE("power family vanishes at its center") {
    const Grid g(1, 8, 0.125);
    // x0 at the center of cell 3
    const FunctionFamily f = power_family({g.center(3)}, 0.7);
    const GridFunction b = sample(f, g);
    CHECK(b[3] == 0.0);
    CHECK(b[4] == doctest::Approx(std::pow(0.125, 0.7)).epsilon(1e-12));
    CHECK(f.in_lipschitz());
    CHECK(f.nonnegative());
}

TEST_CASE("single-anchor cone-min is a shifted power family") {
    const Grid g(1, 16, 1.0 / 16.0);
    FunctionFamily::Anchor a;
    a.point = {0.4};
    a.offset = 0.3;
    const GridFunction cone = sample(cone_min_family({a}, 2.0, 0.5), g);
    const GridFunction pw = sample(power_family({0.4}, 0.5), g);
    for (std::int64_t i = 0; i < g.cell_count(); ++i) {
        CHECK(cone[i] == doctest::Approx(0.3 + 2.0 * pw[i]).epsilon(1e-12));
    }
}

TEST_CASE("cone-min nonnegativity tracks the smallest offset") {
    CHECK(random_cone_min(1, 3, 1.0, 0.5, 0.1, 0.5, 7).nonnegative());
    CHECK_FALSE(random_cone_min(1, 3, 1.0, 0.5, -0.2, 0.5, 7).nonnegative());
    const Grid g(1, 32, 1.0 / 32.0);
    const GridFunction b = sample(random_cone_min(1, 3, 1.0, 0.5, 0.1, 0.5, 7), g);
    for (std::int64_t i = 0; i < g.cell_count(); ++i) CHECK(b[i] >= 0.0);
}

TEST_CASE("clipped log freezes one cell from the singularity") {
    const Grid g(1, 8, 0.125);
    const FunctionFamily f = clipped_log_family({g.center(4)});
    const GridFunction b = sample(f, g);
    CHECK(b[4] == doctest::Approx(std::log(0.125)).epsilon(1e-12));
    CHECK(b[5] == doctest::Approx(std::log(0.125)).epsilon(1e-12));  // distance h exactly
    CHECK(b[6] == doctest::Approx(std::log(0.25)).epsilon(1e-12));
    CHECK_FALSE(f.in_lipschitz());
    CHECK_FALSE(f.nonnegative());
}

TEST_CASE("random smooth sampling is deterministic in the seed") {
    const Grid g(2, 8, 0.125);
    const GridFunction a = sample(random_smooth_family(2, 4, 2.0, 99), g);
    const GridFunction b = sample(random_smooth_family(2, 4, 2.0, 99), g);
    const GridFunction c = sample(random_smooth_family(2, 4, 2.0, 100), g);
    bool differs = false;
    for (std::int64_t i = 0; i < g.cell_count(); ++i) {
        CHECK(a[i] == b[i]);
        differs = differs || a[i] != c[i];
    }
    CHECK(differs);
    CHECK(random_smooth_family(2, 4, 3.0, 99).nonnegative());  // shift beats total amplitude
}

TEST_CASE("family construction rejects bad parameters") {
    CHECK_THROWS_AS(power_family({0.5}, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(power_family({0.5}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(cone_min_family({}, 1.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(make_family("zigzag", 1, {}, 0), std::invalid_argument);

    const Grid g(2, 4, 0.25);
    CHECK_THROWS_AS(sample(constant_family(1, 0.0), g), std::invalid_argument);
}

TEST_CASE("make_family resolves names and parameters") {
    const std::vector<std::pair<std::string, double>> params = {{"value", 2.5}};
    const FunctionFamily c = make_family("constant", 1, params, 0);
    CHECK(c.kind == FamilyKind::Constant);
    CHECK(c.value == 2.5);

    const std::vector<std::pair<std::string, double>> cone_params = {
        {"K", 2.0}, {"anchors", 2.0}, {"beta", 0.5}, {"drop", 1.0},
        {"offset_lo", 0.2}, {"offset_hi", 0.5}};
    const FunctionFamily cone = make_family("cone_min", 1, cone_params, 17);
    CHECK(cone.kind == FamilyKind::ConeMin);
    CHECK(cone.anchors.size() == 2);
    CHECK_FALSE(cone.nonnegative());  // dropped by 1.0 from offsets <= 0.5
}

TEST_CASE("cell mass is a one-hot function") {
    const Grid g(2, 4, 0.25);
    const std::vector<int> coord = {2, 1};
    const GridFunction f = cell_mass(g, coord);
    CHECK(f.at(coord) == 1.0);
    double sum = 0.0;
    for (std::int64_t i = 0; i < g.cell_count(); ++i) sum += f[i];
    CHECK(sum == 1.0);
}
