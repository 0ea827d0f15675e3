#include <doctest.h>

#include <cmath>
#include <set>

#include "maxcomm/families.hpp"
#include "maxcomm/grid.hpp"
#include "maxcomm/scales.hpp"

using namespace maxcomm;

TEST_CASE("make_grid basics and preconditions") {
    const Grid g1(1, 4, 0.25);
    CHECK(g1.cell_count() == 4);
    CHECK(g1.domain_measure() == doctest::Approx(1.0));
    CHECK(g1.center(0) == doctest::Approx(0.125));

    const Grid g2(2, 8, 0.125);
    CHECK(g2.cell_count() == 64);
    CHECK(g2.domain_measure() == doctest::Approx(1.0));

    CHECK_THROWS_AS(Grid(1, 0, 0.25), std::invalid_argument);
    CHECK_THROWS_AS(Grid(0, 4, 0.25), std::invalid_argument);
    CHECK_THROWS_AS(Grid(1, 4, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(Grid(1, 4, -1.0), std::invalid_argument);
}

TEST_CASE("flat index round trip") {
    const Grid g(3, 5, 0.1);
    std::vector<int> coord(3);
    for (std::int64_t i = 0; i < g.cell_count(); ++i) {
        g.coord_of(i, coord);
        CHECK(g.flat_index(coord) == i);
    }
}

TEST_CASE("cube validation") {
    const Grid g(2, 8, 0.125);
    CHECK_NOTHROW(validate_cube(g, Cube{{0, 0}, 8}));
    CHECK_NOTHROW(validate_cube(g, Cube{{7, 7}, 1}));
    CHECK_THROWS_AS(validate_cube(g, Cube{{7, 7}, 2}), std::invalid_argument);
    CHECK_THROWS_AS(validate_cube(g, Cube{{-1, 0}, 1}), std::invalid_argument);
    CHECK_THROWS_AS(validate_cube(g, Cube{{0, 0}, 0}), std::invalid_argument);
    CHECK_THROWS_AS(validate_cube(g, Cube{{0}, 1}), std::invalid_argument);  // dim mismatch
    CHECK(measure(g, Cube{{0, 0}, 4}) == doctest::Approx(0.25));
    CHECK(cell_count(Cube{{0, 0}, 4}, 2) == 16);
}

TEST_CASE("cube literals") {
    const Grid g(2, 8, 0.125);
    const Cube q = parse_cube_literal("2,3:4", g);
    CHECK(q.offset == std::vector<int>{2, 3});
    CHECK(q.side == 4);
    CHECK(cube_literal(q) == "2,3:4");
    CHECK_THROWS_AS(parse_cube_literal("2,3", g), std::invalid_argument);
    CHECK_THROWS_AS(parse_cube_literal("2:9", g), std::invalid_argument);
    CHECK_THROWS_AS(parse_cube_literal("a,b:2", g), std::invalid_argument);
}

TEST_CASE("grid function invariants") {
    const Grid g(1, 4, 0.25);
    CHECK_THROWS_AS(GridFunction(g, {1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(GridFunction(g, {1.0, 2.0, std::nan(""), 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(GridFunction(g, {1.0, 2.0, INFINITY, 0.0}), std::invalid_argument);
}

TEST_CASE("indicator") {
    const Grid g(2, 4, 0.25);
    const GridFunction whole = indicator(Cube{{0, 0}, 4}, g);
    for (std::int64_t i = 0; i < g.cell_count(); ++i) CHECK(whole[i] == 1.0);

    const GridFunction one = indicator(Cube{{0, 0}, 1}, g);
    CHECK(one[0] == 1.0);
    double sum = 0.0;
    for (std::int64_t i = 0; i < g.cell_count(); ++i) sum += one[i];
    CHECK(sum == 1.0);

    // L1 norm equals the cube measure
    for (const Cube& q : enumerate_cubes(g, ScaleSet::all(4).sides())) {
        const GridFunction chi = indicator(q, g);
        double l1 = 0.0;
        for (std::int64_t i = 0; i < g.cell_count(); ++i) l1 += chi[i] * 0.25 * 0.25;
        CHECK(l1 == doctest::Approx(measure(g, q)).epsilon(1e-12));
    }

    CHECK_THROWS_AS(indicator(Cube{{3, 3}, 2}, g), std::invalid_argument);
}

TEST_CASE("average") {
    const Grid g(1, 4, 0.25);
    const GridFunction c = GridFunction::constant(g, 3.5);
    CHECK(average(c, Cube{{1}, 2}) == doctest::Approx(3.5));

    const GridFunction f(g, {1.0, 0.0, 0.0, 0.0});
    CHECK(average(f, Cube{{0}, 4}) == doctest::Approx(0.25));

    // indicator average: chi_Q averaged over R >= Q is |Q|/|R|
    const Grid g2(2, 6, 1.0 / 6.0);
    const Cube q{{1, 1}, 2};
    const Cube r{{0, 0}, 5};
    const GridFunction chi = indicator(q, g2);
    CHECK(average(chi, r) == doctest::Approx(measure(g2, q) / measure(g2, r)).epsilon(1e-12));
}

TEST_CASE("average is linear and respects bounds") {
    const Grid g(2, 5, 0.2);
    const GridFunction f = random_function(g, 11, -2.0, 2.0);
    const GridFunction h = random_function(g, 12, -1.0, 3.0);
    std::vector<double> combo(g.cell_count());
    for (std::int64_t i = 0; i < g.cell_count(); ++i) combo[i] = 2.0 * f[i] - 0.5 * h[i];
    const GridFunction fh(g, std::move(combo));

    for (const Cube& q : enumerate_cubes(g, ScaleSet::all(5).sides())) {
        CHECK(average(fh, q) ==
              doctest::Approx(2.0 * average(f, q) - 0.5 * average(h, q)).epsilon(1e-12));
        double lo = 1e300, hi = -1e300;
        for_each_cell(g, q, [&](std::int64_t i) {
            lo = std::min(lo, f[i]);
            hi = std::max(hi, f[i]);
        });
        const double mean = average(f, q);
        CHECK(mean >= lo - 1e-12);
        CHECK(mean <= hi + 1e-12);
    }
}

TEST_CASE("cube enumeration counts") {
    const Grid g1(1, 4, 0.25);
    CHECK(enumerate_cubes(g1, ScaleSet::all(4).sides()).size() == 10);

    const Grid g2(2, 2, 0.5);
    CHECK(enumerate_cubes(g2, ScaleSet::all(2).sides()).size() == 5);

    // count formula per scale
    const Grid g3(2, 7, 1.0 / 7.0);
    const std::vector<int> sides = {2, 3, 5};
    std::int64_t expected = 0;
    for (int s : sides) expected += (7 - s + 1) * (7 - s + 1);
    const std::vector<Cube> cubes = enumerate_cubes(g3, sides);
    CHECK(static_cast<std::int64_t>(cubes.size()) == expected);

    // all distinct, all valid
    std::set<std::string> seen;
    for (const Cube& q : cubes) {
        validate_cube(g3, q);
        seen.insert(cube_literal(q));
    }
    CHECK(seen.size() == cubes.size());

    CHECK_THROWS_AS(ScaleSet::custom({}, 4), std::invalid_argument);
    CHECK_THROWS_AS(CubeEnumeration(g1, {}), std::invalid_argument);
    CHECK_THROWS_AS(CubeEnumeration(g1, {5}), std::invalid_argument);
}

TEST_CASE("scale sets") {
    const ScaleSet all = ScaleSet::all(6);
    CHECK(all.sides().size() == 6);
    const ScaleSet geo = ScaleSet::geometric(6);
    CHECK(geo.sides().front() == 1);
    CHECK(geo.sides().back() == 6);  // 1, 2, 4, 6
    CHECK(geo.sides().size() == 4);
    const ScaleSet geo8 = ScaleSet::geometric(8);
    CHECK(geo8.sides().back() == 8);
    CHECK(geo8.sides().size() == 4);  // 1, 2, 4, 8
    CHECK_THROWS_AS(ScaleSet::from_mode_string("half", 4), std::invalid_argument);
}

TEST_CASE("for_each_cell visits the cube in row-major order") {
    const Grid g(2, 4, 0.25);
    const Cube q{{1, 2}, 2};
    std::vector<std::int64_t> visited;
    for_each_cell(g, q, [&](std::int64_t i) { visited.push_back(i); });
    CHECK(visited == std::vector<std::int64_t>{1 * 4 + 2, 1 * 4 + 3, 2 * 4 + 2, 2 * 4 + 3});
}

TEST_CASE("oscillation has zero mean and the E/F split balances") {
    const Grid g(1, 16, 1.0 / 16.0);
    const double cell = 1.0 / 16.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const GridFunction b = random_function(g, 100 + seed, -1.0, 1.0);
        for (const Cube& q : enumerate_cubes(g, ScaleSet::all(16).sides())) {
            const double mean = average(b, q);
            double zero_sum = 0.0, below = 0.0, above = 0.0;
            for_each_cell(g, q, [&](std::int64_t i) {
                zero_sum += (b[i] - mean) * cell;
                if (b[i] <= mean) {
                    below += (mean - b[i]) * cell;
                } else {
                    above += (b[i] - mean) * cell;
                }
            });
            CHECK(std::abs(zero_sum) <= 1e-9 * std::max(1.0, std::abs(mean)));
            CHECK(below == doctest::Approx(above).epsilon(1e-9));
        }
    }
}
