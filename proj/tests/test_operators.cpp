#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "maxcomm/families.hpp"
#include "maxcomm/norms.hpp"
#include "maxcomm/operators.hpp"
#include "maxcomm/parallel.hpp"

using namespace maxcomm;

namespace {

// Independent quadratic-cost oracle for the maximal commutator.
GridFunction mb_oracle(const GridFunction& b, const GridFunction& f, const ScaleSet& scales) {
    const Grid& grid = b.grid();
    std::vector<double> out(grid.cell_count(), 0.0);
    for (const Cube& q : enumerate_cubes(grid, scales.sides())) {
        std::vector<std::int64_t> cells;
        for_each_cell(grid, q, [&](std::int64_t i) { cells.push_back(i); });
        for (std::int64_t x : cells) {
            double sum = 0.0;
            for (std::int64_t y : cells) sum += std::abs(b[x] - b[y]) * std::abs(f[y]);
            out[x] = std::max(out[x], sum / static_cast<double>(cells.size()));
        }
    }
    return GridFunction(grid, std::move(out));
}

double rel_gap(double a, double b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0});
}

}  // namespace

TEST_CASE("maximal function of a constant") {
    const Grid g(2, 4, 0.25);
    const ScaleSet scales = ScaleSet::all(4);
    const GridFunction c = GridFunction::constant(g, -2.0);
    const GridFunction m = mf_brute(c, scales);
    for (std::int64_t i = 0; i < g.cell_count(); ++i) CHECK(m[i] == doctest::Approx(2.0));
}

TEST_CASE("maximal function four-cell fixture") {
    const Grid g(1, 4, 0.25);
    const GridFunction f(g, {1.0, 0.0, 0.0, 0.0});
    const GridFunction m = mf_brute(f, ScaleSet::all(4));
    CHECK(m[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(m[2] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(m[3] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("maximal function equals one on indicator cubes") {
    const Grid g(1, 8, 0.125);
    const ScaleSet scales = ScaleSet::all(8);
    for (const Cube& q : enumerate_cubes(g, scales.sides())) {
        const GridFunction m = mf_brute(indicator(q, g), scales);
        for_each_cell(g, q, [&](std::int64_t i) { CHECK(m[i] == 1.0); });
        // off the cube the discrete value stays positive
        for (std::int64_t i = 0; i < g.cell_count(); ++i) CHECK(m[i] > 0.0);
    }
}

TEST_CASE("fast kernel matches the brute oracle") {
    for (int dim : {1, 2, 3}) {
        const int cells = dim == 1 ? 32 : dim == 2 ? 8 : 4;
        const Grid g = Grid::unit(dim, cells);
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const GridFunction f = random_function(g, 500 + seed, -1.0, 1.0);
            for (const ScaleSet& scales :
                 {ScaleSet::all(cells), ScaleSet::geometric(cells),
                  ScaleSet::custom({1, cells / 2, cells}, cells)}) {
                const GridFunction fast = mf_fast(f, scales);
                const GridFunction brute = mf_brute(f, scales);
                for (std::int64_t i = 0; i < g.cell_count(); ++i) {
                    CHECK(rel_gap(fast[i], brute[i]) <= 1e-12);
                }
            }
        }
    }
}

TEST_CASE("maximal function is monotone and sublinear") {
    const Grid g = Grid::unit(1, 32);
    const ScaleSet scales = ScaleSet::all(32);
    const GridFunction f = random_function(g, 21, -1.0, 1.0);
    const GridFunction h = random_function(g, 22, -1.0, 1.0);

    std::vector<double> bigger(g.cell_count()), sum(g.cell_count());
    for (std::int64_t i = 0; i < g.cell_count(); ++i) {
        bigger[i] = 2.0 * std::abs(f[i]) + 0.5;
        sum[i] = f[i] + h[i];
    }
    const GridFunction mf = mf_fast(f, scales);
    const GridFunction mh = mf_fast(h, scales);
    const GridFunction mbig = mf_fast(GridFunction(g, std::move(bigger)), scales);
    const GridFunction msum = mf_fast(GridFunction(g, std::move(sum)), scales);
    for (std::int64_t i = 0; i < g.cell_count(); ++i) {
        CHECK(mf[i] <= mbig[i] * (1.0 + 1e-12));
        CHECK(msum[i] <= (mf[i] + mh[i]) * (1.0 + 1e-12));
        CHECK(mf[i] >= std::abs(f[i]) * (1.0 - 1e-12));  // scale 1 present
    }
}

TEST_CASE("fractional maximal function") {
    const Grid g(1, 4, 0.25);
    const ScaleSet scales = ScaleSet::all(4);

    SUBCASE("constant on the unit domain") {
        const GridFunction c = GridFunction::constant(g, -1.5);
        const GridFunction m = frac_mf(c, 0.3, scales);
        for (int i = 0; i < 4; ++i) CHECK(m[i] == doctest::Approx(1.5).epsilon(1e-12));
    }

    SUBCASE("single-cell mass closed form") {
        const GridFunction f(g, {1.0, 0.0, 0.0, 0.0});
        const GridFunction m = frac_mf(f, 0.5, scales);
        for (int k = 0; k < 4; ++k) {
            CHECK(m[k] == doctest::Approx(0.5 / std::sqrt(k + 1.0)).epsilon(1e-12));
        }
    }

    SUBCASE("dominates every enumerated term") {
        const Grid g8 = Grid::unit(1, 8);
        const ScaleSet s8 = ScaleSet::all(8);
        const GridFunction f = random_function(g8, 31, -1.0, 1.0);
        std::vector<double> absf(g8.cell_count());
        for (std::int64_t i = 0; i < g8.cell_count(); ++i) absf[i] = std::abs(f[i]);
        const GridFunction af(g8, std::move(absf));
        const GridFunction m = frac_mf(f, 0.5, s8);
        for (const Cube& q : enumerate_cubes(g8, s8.sides())) {
            const double term = std::pow(measure(g8, q), 0.5) * average(af, q);
            for_each_cell(g8, q, [&](std::int64_t i) {
                CHECK(m[i] >= term * (1.0 - 1e-12));
            });
        }
    }

    SUBCASE("alpha to zero recovers M") {
        const GridFunction f = random_function(g, 41, 0.0, 1.0);
        const GridFunction frac = frac_mf(f, 1e-9, scales);
        const GridFunction m = mf_fast(f, scales);
        for (int i = 0; i < 4; ++i) CHECK(rel_gap(frac[i], m[i]) <= 1e-7);
    }

    SUBCASE("alpha range enforced") {
        const GridFunction f(g, {1.0, 0.0, 0.0, 0.0});
        CHECK_THROWS_AS(frac_mf(f, 0.0, scales), std::invalid_argument);
        CHECK_THROWS_AS(frac_mf(f, 1.0, scales), std::invalid_argument);
        CHECK_THROWS_AS(frac_mf(f, -0.5, scales), std::invalid_argument);
    }
}

TEST_CASE("cube-local maximal function") {
    const Grid g = Grid::unit(1, 8);
    const GridFunction b = random_function(g, 51, -1.0, 1.0);

    SUBCASE("constant symbol") {
        const GridFunction c = GridFunction::constant(g, -3.0);
        const GridFunction local = local_mf(c, Cube{{2}, 4});
        CHECK(local.size() == 4);
        for (int i = 0; i < 4; ++i) CHECK(local[i] == 3.0);
    }

    SUBCASE("single cell gives |b|") {
        const GridFunction local = local_mf(b, Cube{{5}, 1});
        CHECK(local.size() == 1);
        CHECK(local[0] == std::abs(b[5]));
    }

    SUBCASE("agrees with the global operator on b * chi_Q") {
        const ScaleSet scales = ScaleSet::all(8);
        for (const Cube& q : enumerate_cubes(g, scales.sides())) {
            const GridFunction chi = indicator(q, g);
            std::vector<double> prod(g.cell_count());
            for (std::int64_t i = 0; i < g.cell_count(); ++i) prod[i] = b[i] * chi[i];
            const GridFunction global = mf_brute(GridFunction(g, std::move(prod)), scales);
            const GridFunction local = local_mf(b, q);
            std::int64_t k = 0;
            for_each_cell(g, q, [&](std::int64_t i) {
                CHECK(global[i] == local[k]);
                ++k;
            });
        }
    }

    SUBCASE("point evaluation respects the domain") {
        const Cube q{{2}, 4};
        const std::vector<int> inside = {3};
        const std::vector<int> outside = {1};
        const GridFunction field = local_mf(b, q);
        CHECK(local_mf_at(b, q, inside) == field[1]);
        CHECK_THROWS_AS(local_mf_at(b, q, outside), std::domain_error);
    }
}

TEST_CASE("maximal commutator") {
    SUBCASE("constant symbol gives exactly zero") {
        const Grid g = Grid::unit(1, 16);
        const GridFunction b = GridFunction::constant(g, 0.7);
        const GridFunction f = random_function(g, 61, -1.0, 1.0);
        const GridFunction mb = maximal_commutator(b, f, ScaleSet::all(16));
        for (std::int64_t i = 0; i < g.cell_count(); ++i) CHECK(mb[i] == 0.0);
    }

    SUBCASE("four-cell fixture") {
        const Grid g(1, 4, 0.25);
        const GridFunction b(g, {0.0, 1.0, 2.0, 3.0});
        const GridFunction f(g, {1.0, 0.0, 0.0, 0.0});
        const GridFunction mb = maximal_commutator(b, f, ScaleSet::all(4));
        CHECK(mb[0] == doctest::Approx(0.0));
        CHECK(mb[1] == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(mb[2] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
        CHECK(mb[3] == doctest::Approx(0.75).epsilon(1e-12));
    }

    SUBCASE("sorted-prefix path matches the quadratic oracle") {
        for (int dim : {1, 2}) {
            const int cells = dim == 1 ? 16 : 6;
            const Grid g = Grid::unit(dim, cells);
            const ScaleSet scales = ScaleSet::all(cells);
            for (std::uint64_t seed = 0; seed < 10; ++seed) {
                const GridFunction b = random_function(g, 700 + seed, -1.0, 1.0);
                const GridFunction f = random_function(g, 800 + seed, -1.0, 1.0);
                const GridFunction fast = maximal_commutator(b, f, scales);
                const GridFunction slow = mb_oracle(b, f, scales);
                for (std::int64_t i = 0; i < g.cell_count(); ++i) {
                    CHECK(rel_gap(fast[i], slow[i]) <= 1e-12);
                }
            }
        }
    }

    SUBCASE("ties in b do not disturb the value") {
        const Grid g = Grid::unit(1, 8);
        const GridFunction b(g, {1.0, 1.0, 2.0, 2.0, 2.0, 0.0, 0.0, 1.0});
        const GridFunction f = random_function(g, 91, -1.0, 1.0);
        const ScaleSet scales = ScaleSet::all(8);
        const GridFunction fast = maximal_commutator(b, f, scales);
        const GridFunction slow = mb_oracle(b, f, scales);
        for (std::int64_t i = 0; i < 8; ++i) CHECK(rel_gap(fast[i], slow[i]) <= 1e-12);
    }

    SUBCASE("grid mismatch is rejected") {
        const GridFunction b = GridFunction::constant(Grid::unit(1, 4), 1.0);
        const GridFunction f = GridFunction::constant(Grid::unit(1, 8), 1.0);
        CHECK_THROWS_AS(maximal_commutator(b, f, ScaleSet::all(4)), std::invalid_argument);
    }
}

TEST_CASE("nonlinear commutator") {
    SUBCASE("power-of-two constant symbol gives bitwise zero") {
        const Grid g = Grid::unit(1, 16);
        const GridFunction b = GridFunction::constant(g, 2.0);
        const GridFunction f = random_function(g, 101, -1.0, 1.0);
        const GridFunction nc = nonlinear_commutator(b, f, ScaleSet::all(16));
        for (std::int64_t i = 0; i < g.cell_count(); ++i) CHECK(nc[i] == 0.0);
    }

    SUBCASE("general nonnegative constant vanishes to rounding") {
        const Grid g = Grid::unit(1, 16);
        const GridFunction b = GridFunction::constant(g, 3.0);
        const GridFunction f = random_function(g, 102, -1.0, 1.0);
        const GridFunction nc = nonlinear_commutator(b, f, ScaleSet::all(16));
        for (std::int64_t i = 0; i < g.cell_count(); ++i) CHECK(std::abs(nc[i]) <= 1e-12);
    }

    SUBCASE("four-cell fixture") {
        const Grid g(1, 4, 0.25);
        const GridFunction b(g, {0.0, 1.0, 2.0, 3.0});
        const GridFunction f(g, {1.0, 0.0, 0.0, 0.0});
        const GridFunction nc = nonlinear_commutator(b, f, ScaleSet::all(4));
        CHECK(nc[0] == doctest::Approx(0.0));
        CHECK(nc[1] == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(nc[2] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
        CHECK(nc[3] == doctest::Approx(0.75).epsilon(1e-12));
    }

    SUBCASE("bounded by the maximal commutator for nonnegative symbols") {
        const Grid g = Grid::unit(1, 32);
        const ScaleSet scales = ScaleSet::all(32);
        const GridFunction b = sample(random_cone_min(1, 3, 1.0, 0.5, 0.1, 0.9, 111), g);
        const GridFunction f = random_function(g, 112, -1.0, 1.0);
        const GridFunction nc = nonlinear_commutator(b, f, scales);
        const GridFunction mb = maximal_commutator(b, f, scales);
        for (std::int64_t i = 0; i < g.cell_count(); ++i) {
            CHECK(std::abs(nc[i]) <= mb[i] + 1e-12 * std::max(1.0, mb[i]));
        }
    }

    SUBCASE("sign-changing symbol witnesses the failure of the lower bound") {
        // b negative where f sits: [b,M](x0) = -2 while M_b(x0) = 0
        const Grid g(1, 4, 0.25);
        const GridFunction b(g, {-1.0, 0.0, 0.0, 0.0});
        const GridFunction f(g, {1.0, 0.0, 0.0, 0.0});
        const ScaleSet scales = ScaleSet::all(4);
        const GridFunction nc = nonlinear_commutator(b, f, scales);
        const GridFunction mb = maximal_commutator(b, f, scales);
        bool witness = false;
        for (std::int64_t i = 0; i < 4; ++i) {
            if (nc[i] < -mb[i] - 1e-12) witness = true;
        }
        CHECK(witness);
        CHECK(nc[0] == doctest::Approx(-2.0).epsilon(1e-12));
    }
}

TEST_CASE("commutator is dominated by the fractional maximal function") {
    // M_b(f) <= n^(beta/2) ||b||_pair fracM_beta(f), here over 100 random f >= 0
    const Grid g = Grid::unit(1, 16);
    const ScaleSet scales = ScaleSet::all(16);
    const double beta = 0.5;
    const GridFunction b = sample(random_cone_min(1, 3, 1.0, beta, 0.2, 1.0, 900), g);
    const double constant = lipschitz_pairwise(b, beta);  // n = 1, so n^(beta/2) = 1
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const GridFunction f = random_function(g, 901 + seed, 0.0, 1.0);
        const GridFunction mb = maximal_commutator(b, f, scales);
        const GridFunction frac = frac_mf(f, beta, scales);
        for (std::int64_t i = 0; i < g.cell_count(); ++i) {
            CHECK(mb[i] <= constant * frac[i] * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("operators are independent of the thread cap") {
    const Grid g = Grid::unit(1, 32);
    const ScaleSet scales = ScaleSet::all(32);
    const GridFunction b = random_function(g, 121, -1.0, 1.0);
    const GridFunction f = random_function(g, 122, -1.0, 1.0);

    const int previous = thread_cap();
    set_thread_cap(1);
    const GridFunction serial_m = mf_brute(f, scales);
    const GridFunction serial_c = maximal_commutator(b, f, scales);
    set_thread_cap(4);
    const GridFunction parallel_m = mf_brute(f, scales);
    const GridFunction parallel_c = maximal_commutator(b, f, scales);
    set_thread_cap(previous);

    for (std::int64_t i = 0; i < g.cell_count(); ++i) {
        CHECK(serial_m[i] == parallel_m[i]);
        CHECK(serial_c[i] == parallel_c[i]);
    }
}
