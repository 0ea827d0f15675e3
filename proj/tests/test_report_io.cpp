#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <sstream>

#include "maxcomm/families.hpp"
#include "maxcomm/report_io.hpp"
#include "maxcomm/scan.hpp"

using namespace maxcomm;

TEST_CASE("grid function files") {
    SUBCASE("the four-cell fixture parses") {
        std::istringstream in("1 4 0.25\n1 0 0 0\n");
        const GridFunction f = read_grid_function(in);
        CHECK(f.grid().dim() == 1);
        CHECK(f.grid().cells_per_axis() == 4);
        CHECK(f.grid().spacing() == 0.25);
        CHECK(f[0] == 1.0);
        CHECK(f[3] == 0.0);
    }

    SUBCASE("write-read round trip is bit exact") {
        const Grid g = Grid::unit(2, 8);
        const GridFunction f = random_function(g, 42, -1.0, 1.0);
        std::ostringstream out;
        write_grid_function(out, f);
        std::istringstream in(out.str());
        const GridFunction back = read_grid_function(in);
        REQUIRE(back.grid() == f.grid());
        for (std::int64_t i = 0; i < f.size(); ++i) CHECK(back[i] == f[i]);
    }

    SUBCASE("parse errors carry line numbers") {
        std::istringstream bad_header("not a header\n");
        CHECK_THROWS_WITH_AS(read_grid_function(bad_header),
                             doctest::Contains("line 1"), ParseError);

        std::istringstream short_file("1 4 0.25\n1 0 0\n");
        try {
            read_grid_function(short_file);
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find("expected 4 values") != std::string::npos);
            CHECK(std::string(e.what()).find("found 3") != std::string::npos);
        }

        std::istringstream long_file("1 4 0.25\n1 0 0 0\n7\n");
        try {
            read_grid_function(long_file);
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.line() == 3);
            CHECK(std::string(e.what()).find("found more") != std::string::npos);
        }

        std::istringstream non_finite("1 4 0.25\n1 nan 0 0\n");
        CHECK_THROWS_AS(read_grid_function(non_finite), ParseError);

        std::istringstream bad_token("1 4 0.25\n1 x 0 0\n");
        try {
            read_grid_function(bad_token);
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.line() == 2);
        }

        std::istringstream bad_grid("0 4 0.25\n");
        CHECK_THROWS_AS(read_grid_function(bad_grid), ParseError);

        std::istringstream empty("");
        CHECK_THROWS_AS(read_grid_function(empty), ParseError);
    }

    SUBCASE("17 significant digits survive") {
        const Grid g(1, 2, 0.5);
        const GridFunction f(g, {1.0 / 3.0, -0.0});
        std::ostringstream out;
        write_grid_function(out, f);
        CHECK(out.str().find("0.33333333333333331") != std::string::npos);
    }
}

TEST_CASE("scan configs") {
    SUBCASE("full parse") {
        const std::string text = R"({
            "kind": "theorem",
            "theorem": "1.6",
            "family": {"name": "cone_min", "seed": 17, "params": {"K": 2.0, "beta": 0.5}},
            "exponents": {"n": 1, "beta": 0.5, "p": 1.5},
            "grid_sizes": [8, 16, 32],
            "dictionary_random": 4
        })";
        const ScanConfig c = parse_scan_config(text);
        CHECK(c.theorem == "1.6");
        CHECK(c.family.name == "cone_min");
        CHECK(c.family.seed == 17);
        CHECK(c.family.seed_set);
        CHECK(c.exponents.q == doctest::Approx(6.0).epsilon(1e-12));  // derived
        CHECK(c.thresholds.diverging_slope == doctest::Approx(0.25));
        CHECK(c.grid_sizes == std::vector<int>{8, 16, 32});
        CHECK(c.seed == 17);  // falls back to the family seed
        CHECK_NOTHROW(c.validate());
    }

    SUBCASE("morrey theorems derive their regime") {
        const std::string text = R"({
            "kind": "theorem", "theorem": "1.4",
            "family": {"name": "power", "params": {"x0": 0.5}},
            "exponents": {"n": 1, "beta": 0.4, "p": 1.5, "lambda": 0.2},
            "grid_sizes": [8, 16, 32]
        })";
        const ScanConfig c = parse_scan_config(text);
        CHECK(c.exponents.morrey_a_ok());
    }

    SUBCASE("random families demand a seed") {
        FamilySpec spec;
        spec.name = "clipped_log";
        CHECK_THROWS_AS(spec.resolve(1), std::invalid_argument);
        spec.seed = 5;
        spec.seed_set = true;
        CHECK_NOTHROW(spec.resolve(1));
    }

    SUBCASE("json syntax errors carry line numbers") {
        try {
            parse_scan_config("{\n  \"kind\": oops\n}");
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.line() == 2);
        }
    }

    SUBCASE("write-parse-write is stable") {
        ScanConfig c;
        c.kind = "refinement";
        c.functional = "mq_deviation";
        c.family.name = "cone_min";
        c.family.seed = 3;
        c.family.seed_set = true;
        c.family.params = {{"K", 1.5}, {"beta", 0.5}};
        c.exponents = Exponents::lebesgue(1, 0.5, 1.5);
        c.grid_sizes = {8, 16, 32};
        const std::string once = write_scan_config(c);
        const std::string twice = write_scan_config(parse_scan_config(once));
        CHECK(once == twice);
    }

    SUBCASE("config validation") {
        ScanConfig c;
        c.kind = "neither";
        CHECK_THROWS_AS(c.validate(), std::invalid_argument);
        c.kind = "theorem";
        c.grid_sizes = {};
        CHECK_THROWS_AS(c.validate(), std::invalid_argument);
        c.grid_sizes = {8, 8};
        CHECK_THROWS_AS(c.validate(), std::invalid_argument);
        c.grid_sizes = {8, 16};
        c.scale_mode = "some";
        CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    }
}

TEST_CASE("report serialization") {
    ScanReport report;
    report.tool_version = "0.1.0";
    report.config.kind = "refinement";
    report.config.functional = "bmo_norm";
    report.config.family.name = "constant";
    report.config.exponents = Exponents::lebesgue(1, 0.5, 1.5);
    report.config.grid_sizes = {8, 16};

    SUBCASE("empty item list gives a header-only csv") {
        const std::string csv = write_report_csv(report);
        CHECK(csv ==
              "item,functional,N,value,argmax_cube,detail,slope,residual,classification,pass,"
              "note\n");
    }

    SUBCASE("json has the three top-level keys and omits absent fields") {
        ScanItem item;
        item.name = "bmo_norm";
        item.functional = "bmo_norm";
        item.values.push_back({8, 1.0 / 3.0, Cube{{0}, 2}, ""});
        item.values.push_back({16, 0.5, std::nullopt, ""});
        item.fit = std::nullopt;  // two sizes only
        item.classification = "indeterminate";
        report.items.push_back(item);

        const std::string json = write_report_json(report);
        CHECK(json.find("\"config\"") != std::string::npos);
        CHECK(json.find("\"results\"") != std::string::npos);
        CHECK(json.find("\"provenance\"") != std::string::npos);
        CHECK(json.find("\"slope\"") == std::string::npos);
        CHECK(json.find("\"pass\"") == std::string::npos);
        CHECK(json.find("0.33333333333333331") != std::string::npos);
        CHECK(json.find("\"argmax_cube\": \"0:2\"") != std::string::npos);

        const std::string csv = write_report_csv(report);
        // one row per (N, functional); slope column empty
        CHECK(csv.find("bmo_norm,bmo_norm,8,0.33333333333333331,0:2,,,,indeterminate,,\n") !=
              std::string::npos);
        CHECK(csv.find("bmo_norm,bmo_norm,16,0.5,,,,,indeterminate,,\n") != std::string::npos);
    }

    SUBCASE("csv quotes fields containing commas") {
        ScanItem item;
        item.name = "morrey";
        item.functional = "morrey_norm_lower";
        item.values.push_back({8, 1.0, Cube{{1, 2}, 3}, ""});
        item.classification = "bounded";
        report.items.push_back(item);
        const std::string csv = write_report_csv(report);
        CHECK(csv.find("\"1,2:3\"") != std::string::npos);
    }
}
