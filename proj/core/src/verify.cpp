#include "maxcomm/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <sstream>

#include "maxcomm/families.hpp"
#include "maxcomm/norms.hpp"
#include "maxcomm/operators.hpp"
#include "maxcomm/parallel.hpp"
#include "maxcomm/report_io.hpp"
#include "maxcomm/scan.hpp"

namespace maxcomm {

namespace {

constexpr double kTol = 1e-12;

double rel_diff(double a, double b) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / scale;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

// -- 1. mf_fast against mf_brute ---------------------------------------------

CriterionResult oracle_equivalence() {
    CriterionResult r{1, "oracle equivalence mf_fast == mf_brute", true, ""};
    double worst = 0.0;
    bool all_exact = true;
    auto run = [&](const Grid& grid, std::uint64_t seed_base) {
        const ScaleSet scales = ScaleSet::all(grid.cells_per_axis());
        for (int k = 0; k < 200; ++k) {
            const GridFunction f = random_function(grid, seed_base + k, -1.0, 1.0);
            const GridFunction brute = mf_brute(f, scales);
            const GridFunction fast = mf_fast(f, scales);
            for (std::int64_t i = 0; i < f.size(); ++i) {
                if (fast[i] != brute[i]) {
                    all_exact = false;
                    worst = std::max(worst, rel_diff(fast[i], brute[i]));
                }
            }
        }
    };
    run(Grid::unit(1, 64), 1000);
    run(Grid::unit(2, 16), 2000);
    r.pass = worst <= kTol;
    r.detail = all_exact ? "bitwise equal on all 400 functions"
                         : "max relative difference " + fmt(worst) + " (reduction order differs)";
    return r;
}

// -- 2. hand fixtures ---------------------------------------------------------

CriterionResult hand_fixtures() {
    CriterionResult r{2, "hand fixtures on the 4-cell grid", true, ""};
    const Grid grid(1, 4, 0.25);
    const ScaleSet scales = ScaleSet::all(4);
    const GridFunction f(grid, {1.0, 0.0, 0.0, 0.0});
    const GridFunction b(grid, {0.0, 1.0, 2.0, 3.0});

    double worst = 0.0;
    const GridFunction mf = mf_brute(f, scales);
    const double expected_mf[] = {1.0, 0.5, 1.0 / 3.0, 0.25};
    for (int i = 0; i < 4; ++i) worst = std::max(worst, rel_diff(mf[i], expected_mf[i]));

    const GridFunction mb = maximal_commutator(b, f, scales);
    const double expected_mb[] = {0.0, 0.5, 2.0 / 3.0, 0.75};
    for (int i = 0; i < 4; ++i) worst = std::max(worst, std::abs(mb[i] - expected_mb[i]));

    const Cube whole{{0}, 4};
    const LayerCakeRecord cake = layer_cake_check(b, whole, 0.5);
    worst = std::max(worst, std::abs(cake.direct_integral - 1.0));
    worst = std::max(worst, std::abs(cake.layer_cake_integral - 1.0));

    r.pass = worst <= kTol;
    r.detail = "max deviation " + fmt(worst);
    return r;
}

// -- 3. cube identities -------------------------------------------------------

CriterionResult cube_identities() {
    CriterionResult r{3, "M(chi_Q)=1 on Q and M_Q(b)=M(b chi_Q) on Q", true, ""};
    const Grid grid = Grid::unit(1, 16);
    const ScaleSet scales = ScaleSet::all(16);
    const std::vector<Cube> cubes = enumerate_cubes(grid, scales.sides());

    double worst = 0.0;
    for (const Cube& q : cubes) {
        const GridFunction chi = indicator(q, grid);
        const GridFunction m_chi = mf_brute(chi, scales);
        for_each_cell(grid, q, [&](std::int64_t i) {
            worst = std::max(worst, std::abs(m_chi[i] - 1.0));
        });
    }
    for (int k = 0; k < 20; ++k) {
        const GridFunction b = random_function(grid, 3000 + k, -1.0, 1.0);
        for (const Cube& q : cubes) {
            const GridFunction chi = indicator(q, grid);
            std::vector<double> product(grid.cell_count());
            for (std::int64_t i = 0; i < grid.cell_count(); ++i) product[i] = b[i] * chi[i];
            const GridFunction global = mf_brute(GridFunction(grid, std::move(product)), scales);
            const GridFunction local = local_mf(b, q);
            std::int64_t cell = 0;
            for_each_cell(grid, q, [&](std::int64_t i) {
                worst = std::max(worst, std::abs(global[i] - local[cell]));
                ++cell;
            });
        }
    }
    r.pass = worst <= kTol;
    r.detail = "max deviation " + fmt(worst) + " over all cubes, 20 symbols";
    return r;
}

// -- 4. pointwise domination by the fractional maximal function ---------------

CriterionResult fractional_domination() {
    CriterionResult r{4, "M_b(f) <= n^(beta/2) ||b||_pair fracM_beta(f) pointwise", true, ""};
    double worst_ratio = 0.0;
    std::int64_t violations = 0;
    auto run = [&](const Grid& grid, double beta, std::uint64_t seed_base) {
        const ScaleSet scales = ScaleSet::all(grid.cells_per_axis());
        const int n = grid.dim();
        for (int k = 0; k < 50; ++k) {
            const GridFunction b =
                sample(random_cone_min(n, 3, 1.0, beta, 0.0, 1.0, seed_base + 2 * k), grid);
            const GridFunction f =
                sample(random_cone_min(n, 3, 1.0, beta, 0.0, 1.0, seed_base + 2 * k + 1), grid);
            const GridFunction mb = maximal_commutator(b, f, scales);
            const GridFunction frac = frac_mf(f, beta, scales);
            const double constant =
                std::pow(static_cast<double>(n), beta / 2.0) * lipschitz_pairwise(b, beta);
            for (std::int64_t i = 0; i < grid.cell_count(); ++i) {
                const double bound = constant * frac[i];
                if (mb[i] > bound * (1.0 + kTol)) ++violations;
                if (bound > 0.0) worst_ratio = std::max(worst_ratio, mb[i] / bound);
            }
        }
    };
    int salt = 0;
    for (double beta : {0.3, 0.5, 0.7}) {
        run(Grid::unit(1, 32), beta, 4000 + 100 * salt);
        run(Grid::unit(2, 8), beta, 4050 + 100 * salt);
        ++salt;
    }
    r.pass = violations == 0;
    r.detail = std::to_string(violations) + " violations; max ratio to bound " + fmt(worst_ratio);
    return r;
}

// -- 5. |[b,M](f)| <= M_b(f) for b >= 0 ---------------------------------------

CriterionResult nonlinear_bound() {
    CriterionResult r{5, "|[b,M](f)| <= M_b(f) pointwise for b >= 0", true, ""};
    std::int64_t violations = 0;
    double worst_excess = 0.0;
    auto run = [&](const Grid& grid, double beta, std::uint64_t seed_base) {
        const ScaleSet scales = ScaleSet::all(grid.cells_per_axis());
        const int n = grid.dim();
        for (int k = 0; k < 50; ++k) {
            const GridFunction b =
                sample(random_cone_min(n, 3, 1.0, beta, 0.0, 1.0, seed_base + 2 * k), grid);
            const GridFunction f =
                sample(random_cone_min(n, 3, 1.0, beta, 0.0, 1.0, seed_base + 2 * k + 1), grid);
            const GridFunction nc = nonlinear_commutator(b, f, scales);
            const GridFunction mb = maximal_commutator(b, f, scales);
            for (std::int64_t i = 0; i < grid.cell_count(); ++i) {
                const double slack = kTol * std::max(1.0, mb[i]);
                if (std::abs(nc[i]) > mb[i] + slack) {
                    ++violations;
                    worst_excess = std::max(worst_excess, std::abs(nc[i]) - mb[i]);
                }
            }
        }
    };
    int salt = 0;
    for (double beta : {0.3, 0.5, 0.7}) {
        run(Grid::unit(1, 32), beta, 6000 + 100 * salt);
        run(Grid::unit(2, 8), beta, 6050 + 100 * salt);
        ++salt;
    }
    r.pass = violations == 0;
    r.detail = std::to_string(violations) + " violations; worst excess " + fmt(worst_excess);
    return r;
}

// -- 6. |b(x) - b_Q| <= M_b(chi_Q)(x) ------------------------------------------

CriterionResult oscillation_lower_bound() {
    CriterionResult r{6, "|b(x) - b_Q| <= M_b(chi_Q)(x) on Q", true, ""};
    const Grid grid = Grid::unit(1, 16);
    const ScaleSet scales = ScaleSet::all(16);
    const std::vector<Cube> cubes = enumerate_cubes(grid, scales.sides());
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        const GridFunction b = random_function(grid, 7000 + k, -1.0, 1.0);
        for (const Cube& q : cubes) {
            const GridFunction chi = indicator(q, grid);
            const GridFunction mb_chi = maximal_commutator(b, chi, scales);
            const double mean = average(b, q);
            for_each_cell(grid, q, [&](std::int64_t i) {
                worst = std::max(worst, std::abs(b[i] - mean) - mb_chi[i]);
            });
        }
    }
    r.pass = worst <= kTol;
    r.detail = "worst excess " + fmt(worst);
    return r;
}

// -- 7. Morrey norm of an indicator -------------------------------------------

CriterionResult morrey_indicator_fixture() {
    CriterionResult r{7, "morrey_norm(chi_Q, p, lambda) = |Q|^((n-lambda)/(n p))", true, ""};
    double worst = 0.0;
    auto run = [&](const Grid& grid) {
        const int n = grid.dim();
        const ScaleSet scales = ScaleSet::all(grid.cells_per_axis());
        for (const Cube& q : enumerate_cubes(grid, scales.sides())) {
            const GridFunction chi = indicator(q, grid);
            for (double p : {1.0, 2.0}) {
                for (double lambda : {0.25, 0.5}) {
                    const double got = morrey_norm(chi, p, lambda, scales);
                    const double expected =
                        std::pow(measure(grid, q), (n - lambda) / (n * p));
                    worst = std::max(worst, rel_diff(got, expected));
                }
            }
        }
    };
    run(Grid::unit(1, 16));
    run(Grid::unit(2, 8));
    r.pass = worst <= 1e-10;
    r.detail = "max relative deviation " + fmt(worst);
    return r;
}

// -- 8. discrimination scans ---------------------------------------------------

/// Cone-min fixture for the refinement criteria: one anchor on the N=8
/// cell-boundary lattice so the cusp geometry repeats identically at every
/// dyadic size in {8,16,32,64}, which keeps the discretization transient
/// out of the fitted slopes. Steepness and height stay random per seed.
FunctionFamily lattice_cone_fixture(std::uint64_t seed) {
    Rng rng(seed);
    std::vector<FunctionFamily::Anchor> anchors(1);
    anchors[0].point = {rng.uniform_int(1, 7) / 8.0};
    anchors[0].offset = rng.uniform(0.2, 0.5);
    FunctionFamily f = cone_min_family(std::move(anchors), rng.uniform(2.0, 4.0), 0.5);
    f.seed = seed;
    return f;
}

CriterionResult discrimination_scan() {
    CriterionResult r{8, "refinement slopes classify cone_min vs clipped_log", true, ""};
    const std::vector<int> sizes = {8, 16, 32, 64};
    const Exponents exps = Exponents::lebesgue(1, 0.5, 1.5);
    const ScanThresholds thresholds;  // bounded 0.15 (calibrated), diverging beta/2
    int correct = 0, total = 0;
    double lip_worst = 0.0, log_worst = 1e9;
    for (const std::string& functional : {std::string("lipschitz_oscillation"),
                                          std::string("mq_deviation")}) {
        for (int k = 0; k < 20; ++k) {
            const FunctionFamily lip = lattice_cone_fixture(8000 + k);
            const ScanReport rep = refinement_scan(lip, functional, sizes, exps);
            const double slope = rep.items[0].fit->slope;
            lip_worst = std::max(lip_worst, slope);
            ++total;
            if (slope < thresholds.bounded_slope) ++correct;
        }
        for (int k = 0; k < 20; ++k) {
            const FunctionFamily log_family = random_clipped_log(1, 8100 + k);
            const ScanReport rep = refinement_scan(log_family, functional, sizes, exps);
            const double slope = rep.items[0].fit->slope;
            log_worst = std::min(log_worst, slope);
            ++total;
            if (slope > 0.25) ++correct;
        }
    }
    r.pass = correct == total;
    r.detail = std::to_string(correct) + "/" + std::to_string(total) +
               " classified (bounded<0.15, diverging>0.25); cone_min max slope " +
               fmt(lip_worst) + ", clipped_log min slope " + fmt(log_worst);
    return r;
}

// -- 9. sign necessity ---------------------------------------------------------

CriterionResult sign_necessity() {
    CriterionResult r{9, "negativity_defect and mq_deviation detect sign violations", true, ""};
    const std::vector<int> sizes = {8, 16, 32, 64};
    const Exponents exps = Exponents::lebesgue(1, 0.5, 1.5);
    const ScanThresholds thresholds;
    bool ok = true;
    double diverging_min = 1e9, bounded_max = 0.0;
    for (int k = 0; k < 5; ++k) {
        FunctionFamily nonneg = lattice_cone_fixture(9000 + k);
        FunctionFamily shifted = nonneg;
        double offset_min = shifted.anchors.front().offset;
        for (const auto& a : shifted.anchors) offset_min = std::min(offset_min, a.offset);
        // deep enough that cells next to the cusp stay negative at N = 8
        for (auto& a : shifted.anchors) a.offset -= offset_min + 1.5;

        for (const std::string& functional : {std::string("negativity_defect"),
                                              std::string("mq_deviation")}) {
            const double bad_slope =
                refinement_scan(shifted, functional, sizes, exps).items[0].fit->slope;
            const double good_slope =
                refinement_scan(nonneg, functional, sizes, exps).items[0].fit->slope;
            diverging_min = std::min(diverging_min, bad_slope);
            bounded_max = std::max(bounded_max, good_slope);
            if (!(bad_slope >= 0.5 * 0.8) || !(good_slope < thresholds.bounded_slope)) ok = false;
        }
    }
    r.pass = ok;
    r.detail = "sign-violating min slope " + fmt(diverging_min) + ", nonnegative max slope " +
               fmt(bounded_max);
    return r;
}

// -- 10. weak-type constants stay bounded --------------------------------------

CriterionResult weak_type_scan() {
    CriterionResult r{10, "weak-type constants of M_b(f) and [b,M](f) stay bounded", true, ""};
    const std::vector<int> sizes = {8, 16, 32, 64};
    const Exponents exps = Exponents::lebesgue(1, 0.5, 1.5);
    double worst_ratio = 0.0;
    for (int k = 0; k < 5; ++k) {
        const FunctionFamily b = lattice_cone_fixture(9500 + k);
        for (const std::string& functional : {std::string("weak_mb"),
                                              std::string("weak_nonlinear")}) {
            const ScanReport rep = refinement_scan(b, functional, sizes, exps);
            double lo = 1e300, hi = 0.0;
            for (const ScanValue& v : rep.items[0].values) {
                lo = std::min(lo, v.value);
                hi = std::max(hi, v.value);
            }
            if (lo > 0.0) worst_ratio = std::max(worst_ratio, hi / lo);
        }
    }
    r.pass = worst_ratio < 3.0;
    r.detail = "max over symbols of (max constant)/(min constant) = " + fmt(worst_ratio);
    return r;
}

// -- 11. determinism ------------------------------------------------------------

CriterionResult determinism() {
    CriterionResult r{11, "reports are byte-identical across reruns and thread counts", true, ""};
    ScanConfig config;
    config.kind = "theorem";
    config.theorem = "1.6";
    config.family.name = "cone_min";
    config.family.seed = 42;
    config.family.seed_set = true;
    config.family.params = {{"K", 1.0}, {"anchors", 3.0}, {"beta", 0.5},
                            {"offset_hi", 1.0}, {"offset_lo", 0.2}};
    config.exponents = Exponents::lebesgue(1, 0.5, 1.5);
    config.grid_sizes = {8, 16, 32};
    config.dictionary_random = 8;
    config.seed = 42;

    const int previous_cap = thread_cap();
    set_thread_cap(1);
    const std::string once = write_report_json(theorem_suite("1.6", config));
    const std::string csv_once = write_report_csv(theorem_suite("1.6", config));
    set_thread_cap(4);
    const std::string again = write_report_json(theorem_suite("1.6", config));
    const std::string csv_again = write_report_csv(theorem_suite("1.6", config));
    set_thread_cap(previous_cap);

    r.pass = once == again && csv_once == csv_again;
    r.detail = r.pass ? "json and csv identical for thread caps 1 and 4"
                      : "outputs differ across thread caps";
    return r;
}

}  // namespace

VerifyReport run_verification(std::ostream* out) {
    VerifyReport report;
    CriterionResult (*const checks[])() = {
        oracle_equivalence,   hand_fixtures, cube_identities,          fractional_domination,
        nonlinear_bound,      oscillation_lower_bound, morrey_indicator_fixture,
        discrimination_scan,  sign_necessity, weak_type_scan,          determinism,
    };
    for (auto check : checks) {
        const auto start = std::chrono::steady_clock::now();
        report.criteria.push_back(check());
        report.criteria.back().seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (out) {
            // timing goes elsewhere; this stream stays byte-identical across runs
            const CriterionResult& c = report.criteria.back();
            (*out) << (c.pass ? "[PASS] " : "[FAIL] ") << "criterion " << c.id << ": " << c.name
                   << " -- " << c.detail << '\n';
            out->flush();
        }
    }
    return report;
}

}  // namespace maxcomm
