#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "maxcomm/families.hpp"
#include "maxcomm/operators.hpp"
#include "maxcomm/parallel.hpp"
#include "maxcomm/report_io.hpp"
#include "maxcomm/scan.hpp"
#include "maxcomm/verify.hpp"
#include "maxcomm/version.hpp"

namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct ComputeOptions {
    std::string op;
    std::string input;
    std::string symbol;
    std::string cube;
    std::string scales = "all";
    std::string output;
    double alpha = 0.5;
};

int run_compute(const ComputeOptions& opt) {
    std::cerr << "compute op=" << opt.op << " in=" << opt.input
              << (opt.symbol.empty() ? "" : " symbol=" + opt.symbol)
              << (opt.cube.empty() ? "" : " cube=" + opt.cube) << " scales=" << opt.scales
              << (opt.op == "fracmf" ? " alpha=" + std::to_string(opt.alpha) : "")
              << " out=" << opt.output << '\n';

    const maxcomm::GridFunction f = maxcomm::read_grid_function_file(opt.input);
    const maxcomm::ScaleSet scales =
        maxcomm::ScaleSet::from_mode_string(opt.scales, f.grid().cells_per_axis());
    if (scales.mode() == maxcomm::ScaleMode::Geometric) {
        std::cerr << "note: geometric scale subsample; maxima are lower bounds of the "
                     "exhaustive supremum\n";
    }

    std::optional<maxcomm::GridFunction> result;
    if (opt.op == "mf") {
        result = maxcomm::mf_fast(f, scales);
    } else if (opt.op == "fracmf") {
        result = maxcomm::frac_mf(f, opt.alpha, scales);
    } else if (opt.op == "localmf") {
        if (opt.cube.empty()) {
            std::cerr << "error: --op localmf needs --cube \"off0,off1,...:side\"\n";
            return kExitUsage;
        }
        result = maxcomm::local_mf(f, maxcomm::parse_cube_literal(opt.cube, f.grid()));
    } else {
        if (opt.symbol.empty()) {
            std::cerr << "error: --op " << opt.op << " needs --symbol b.gf\n";
            return kExitUsage;
        }
        const maxcomm::GridFunction b = maxcomm::read_grid_function_file(opt.symbol);
        result = opt.op == "mb" ? maxcomm::maximal_commutator(b, f, scales)
                                : maxcomm::nonlinear_commutator(b, f, scales);
    }
    maxcomm::write_grid_function_file(opt.output, *result);
    return kExitOk;
}

int run_verify() {
    std::cerr << "verify: full invariant suite, exhaustive scales\n";
    const maxcomm::VerifyReport report = maxcomm::run_verification(&std::cout);
    for (const auto& c : report.criteria) {
        std::cerr << "criterion " << c.id << " took " << c.seconds << " s\n";
    }
    if (report.all_pass()) {
        std::cout << "verify: all " << report.criteria.size() << " criteria passed\n";
        return kExitOk;
    }
    std::cout << "verify: FAILURES present\n";
    return kExitVerifyFailure;
}

int run_scan(const std::string& theorem, const std::string& config_path,
             const std::string& out_path, const std::string& csv_path) {
    maxcomm::ScanConfig config = maxcomm::read_scan_config_file(config_path);
    if (!theorem.empty()) {
        config.kind = "theorem";
        config.theorem = theorem;
    }
    std::cerr << "scan: resolved config\n" << maxcomm::write_scan_config(config);

    maxcomm::ScanReport report;
    if (config.kind == "theorem") {
        report = maxcomm::theorem_suite(config.theorem, config);
    } else {
        const maxcomm::FunctionFamily family = config.family.resolve(config.exponents.n);
        report = maxcomm::refinement_scan(family, config.functional, config.grid_sizes,
                                          config.exponents, config.thresholds,
                                          config.oscillation_q);
    }

    const std::string json = maxcomm::write_report_json(report);
    if (out_path.empty()) {
        std::cout << json;
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot open report output: " + out_path);
        out << json;
    }
    if (!csv_path.empty()) {
        std::ofstream csv(csv_path);
        if (!csv) throw std::runtime_error("cannot open csv output: " + csv_path);
        csv << maxcomm::write_report_csv(report);
    }
    return kExitOk;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write fixture: " + path.string());
    out << text;
}

int run_fixtures(const std::string& dir) {
    std::cerr << "fixtures: regenerating under " << dir << '\n';
    fs::create_directories(dir);
    const fs::path base(dir);

    const maxcomm::Grid grid(1, 4, 0.25);
    maxcomm::write_grid_function_file((base / "f4.gf").string(),
                                      maxcomm::GridFunction(grid, {1.0, 0.0, 0.0, 0.0}));
    maxcomm::write_grid_function_file((base / "b4.gf").string(),
                                      maxcomm::GridFunction(grid, {0.0, 1.0, 2.0, 3.0}));
    // hand-derived expected outputs for the two fixtures above
    maxcomm::write_grid_function_file(
        (base / "mf_f4_expected.gf").string(),
        maxcomm::GridFunction(grid, {1.0, 0.5, 1.0 / 3.0, 0.25}));
    maxcomm::write_grid_function_file(
        (base / "mb_b4_f4_expected.gf").string(),
        maxcomm::GridFunction(grid, {0.0, 0.5, 2.0 / 3.0, 0.75}));

    maxcomm::ScanConfig cone;
    cone.kind = "theorem";
    cone.theorem = "1.6";
    cone.family.name = "cone_min";
    cone.family.seed = 42;
    cone.family.seed_set = true;
    cone.family.params = {{"K", 1.0}, {"anchors", 3.0}, {"beta", 0.5},
                          {"offset_hi", 1.0}, {"offset_lo", 0.2}};
    cone.exponents = maxcomm::Exponents::lebesgue(1, 0.5, 1.5);
    cone.grid_sizes = {8, 16, 32};
    cone.dictionary_random = 8;
    cone.seed = 42;
    write_text(base / "theorem16_cone_min.json", maxcomm::write_scan_config(cone));

    maxcomm::ScanConfig sign = cone;
    sign.family.params.push_back({"drop", 1.0});
    std::sort(sign.family.params.begin(), sign.family.params.end());
    write_text(base / "theorem16_sign_violation.json", maxcomm::write_scan_config(sign));

    maxcomm::ScanConfig osc;
    osc.kind = "refinement";
    osc.functional = "lipschitz_oscillation";
    osc.family.name = "clipped_log";
    osc.family.seed = 7;
    osc.family.seed_set = true;
    osc.exponents = maxcomm::Exponents::lebesgue(1, 0.5, 1.5);
    osc.grid_sizes = {8, 16, 32, 64};
    osc.seed = 7;
    write_text(base / "refinement_clipped_log.json", maxcomm::write_scan_config(osc));

    std::cout << "fixtures written to " << dir << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"maxcomm: maximal operators, commutators, and norm scans on grid cubes"};
    app.set_version_flag("--version", maxcomm::kToolVersion);
    int threads = 0;
    app.add_option("--threads", threads, "cap worker threads (default: MAXCOMM_THREADS or cores)");

    ComputeOptions copt;
    CLI::App* compute = app.add_subcommand("compute", "evaluate one operator on a grid function");
    compute->add_option("--op", copt.op, "operator")
        ->required()
        ->check(CLI::IsMember({"mf", "fracmf", "mb", "nonlinear", "localmf"}));
    compute->add_option("--in", copt.input, "input grid function (.gf)")->required();
    compute->add_option("--symbol", copt.symbol, "symbol b for mb/nonlinear (.gf)");
    compute->add_option("--cube", copt.cube, "cube literal off0,off1,...:side for localmf");
    compute->add_option("--alpha", copt.alpha, "fractional order for fracmf");
    compute->add_option("--scales", copt.scales, "scale set")
        ->check(CLI::IsMember({"all", "geo"}));
    compute->add_option("--out", copt.output, "output grid function (.gf)")->required();

    CLI::App* verify = app.add_subcommand("verify", "run the full invariant suite");

    std::string theorem, config_path, out_path, csv_path;
    CLI::App* scan = app.add_subcommand("scan", "run a theorem or refinement scan");
    scan->add_option("--theorem", theorem, "theorem id: 1.2, 1.4, 1.5, 1.6, 1.7, 1.8, 1.9");
    scan->add_option("--config", config_path, "scan config (.json)")->required();
    scan->add_option("--out", out_path, "report output (.json); stdout when omitted");
    scan->add_option("--csv", csv_path, "also write the report as csv");

    std::string fixtures_dir = "fixtures";
    CLI::App* fixtures = app.add_subcommand("fixtures", "regenerate the hand-computed fixtures");
    fixtures->add_option("--dir", fixtures_dir, "output directory");

    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (threads > 0) maxcomm::set_thread_cap(threads);

    try {
        if (compute->parsed()) return run_compute(copt);
        if (verify->parsed()) return run_verify();
        if (scan->parsed()) return run_scan(theorem, config_path, out_path, csv_path);
        if (fixtures->parsed()) return run_fixtures(fixtures_dir);
    } catch (const maxcomm::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
    return kExitUsage;
}
