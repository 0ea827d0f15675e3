#include "maxcomm/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>

#include <json.hpp>

namespace maxcomm {

namespace {

std::string format_number(double v) {
    if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_number_plain(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string json_string(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    out += '"';
    return out;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

void append_config_json(std::string& out, const ScanConfig& c, const std::string& pad) {
    const std::string inner = pad + "  ";
    out += "{\n";
    out += inner + "\"kind\": " + json_string(c.kind) + ",\n";
    if (c.kind == "theorem") {
        out += inner + "\"theorem\": " + json_string(c.theorem) + ",\n";
    } else {
        out += inner + "\"functional\": " + json_string(c.functional) + ",\n";
    }
    out += inner + "\"family\": {\"name\": " + json_string(c.family.name) +
           ", \"seed\": " + std::to_string(c.family.seed) + ", \"params\": {";
    for (std::size_t i = 0; i < c.family.params.size(); ++i) {
        if (i > 0) out += ", ";
        out += json_string(c.family.params[i].first) + ": " +
               format_number(c.family.params[i].second);
    }
    out += "}},\n";
    const Exponents& e = c.exponents;
    out += inner + "\"exponents\": {\"n\": " + std::to_string(e.n) +
           ", \"beta\": " + format_number(e.beta) + ", \"p\": " + format_number(e.p) +
           ", \"q\": " + format_number(e.q) + ", \"lambda\": " + format_number(e.lambda) +
           ", \"mu\": " + format_number(e.mu) + ", \"alpha\": " + format_number(e.alpha) + "},\n";
    out += inner + "\"grid_sizes\": [";
    for (std::size_t i = 0; i < c.grid_sizes.size(); ++i) {
        if (i > 0) out += ", ";
        out += std::to_string(c.grid_sizes[i]);
    }
    out += "],\n";
    out += inner + "\"scale_mode\": " + json_string(c.scale_mode) + ",\n";
    out += inner + "\"thresholds\": {\"bounded_slope\": " + format_number(c.thresholds.bounded_slope) +
           ", \"diverging_slope\": " + format_number(c.thresholds.diverging_slope) + "},\n";
    out += inner + "\"oscillation_q\": " + format_number(c.oscillation_q) + ",\n";
    out += inner + "\"dictionary_random\": " + std::to_string(c.dictionary_random) + ",\n";
    out += inner + "\"seed\": " + std::to_string(c.seed) + "\n";
    out += pad + "}";
}

int line_of_offset(const std::string& text, std::size_t offset) {
    int line = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') ++line;
    }
    return line;
}

double number_from(const nlohmann::ordered_json& j, const char* context) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        throw std::invalid_argument(std::string("expected a number for ") + context);
    }
    if (!j.is_number()) {
        throw std::invalid_argument(std::string("expected a number for ") + context);
    }
    return j.get<double>();
}

}  // namespace

GridFunction read_grid_function(std::istream& in) {
    std::string line;
    int line_no = 0;

    long n = -1, cells = -1;
    double h = 0.0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream header(line);
        if (!(header >> n >> cells >> h)) {
            throw ParseError("malformed grid-function header, need \"n N h\"", line_no);
        }
        std::string extra;
        if (header >> extra) {
            throw ParseError("unexpected token '" + extra + "' after header", line_no);
        }
        break;
    }
    if (n < 0) throw ParseError("empty grid-function file", std::max(line_no, 1));

    std::unique_ptr<Grid> grid;
    try {
        grid = std::make_unique<Grid>(static_cast<int>(n), static_cast<int>(cells), h);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), line_no);
    }

    const std::int64_t expected = grid->cell_count();
    std::vector<double> values;
    values.reserve(expected);
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream tokens(line);
        std::string tok;
        while (tokens >> tok) {
            if (static_cast<std::int64_t>(values.size()) == expected) {
                throw ParseError("expected " + std::to_string(expected) +
                                     " values (N^n) but found more",
                                 line_no);
            }
            double v = 0.0;
            std::size_t used = 0;
            try {
                v = std::stod(tok, &used);
            } catch (const std::exception&) {
                throw ParseError("bad value '" + tok + "'", line_no);
            }
            if (used != tok.size()) throw ParseError("bad value '" + tok + "'", line_no);
            if (!std::isfinite(v)) {
                throw ParseError("non-finite value '" + tok + "'", line_no);
            }
            values.push_back(v);
        }
    }
    if (static_cast<std::int64_t>(values.size()) != expected) {
        throw ParseError("expected " + std::to_string(expected) + " values (N^n), found " +
                             std::to_string(values.size()),
                         std::max(line_no, 1));
    }
    return GridFunction(*grid, std::move(values));
}

GridFunction read_grid_function_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open grid-function file: " + path);
    return read_grid_function(in);
}

void write_grid_function(std::ostream& out, const GridFunction& f) {
    const Grid& grid = f.grid();
    out << grid.dim() << ' ' << grid.cells_per_axis() << ' '
        << format_number_plain(grid.spacing()) << '\n';
    const std::int64_t per_line = grid.cells_per_axis();
    for (std::int64_t i = 0; i < f.size(); ++i) {
        out << format_number_plain(f[i]);
        out << ((i % per_line == per_line - 1) ? '\n' : ' ');
    }
}

void write_grid_function_file(const std::string& path, const GridFunction& f) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path);
    write_grid_function(out, f);
}

ScanConfig parse_scan_config(const std::string& json_text) {
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what(), line_of_offset(json_text, e.byte));
    }

    ScanConfig c;
    c.kind = j.value("kind", std::string("theorem"));
    c.theorem = j.value("theorem", std::string());
    c.functional = j.value("functional", std::string());

    if (!j.contains("family") || !j["family"].is_object() || !j["family"].contains("name")) {
        throw std::invalid_argument("scan config needs a family object with a name");
    }
    const auto& fam = j["family"];
    c.family.name = fam["name"].get<std::string>();
    if (fam.contains("seed")) {
        c.family.seed = fam["seed"].get<std::uint64_t>();
        c.family.seed_set = true;
    }
    if (fam.contains("params")) {
        for (auto it = fam["params"].begin(); it != fam["params"].end(); ++it) {
            c.family.params.emplace_back(it.key(), number_from(it.value(), it.key().c_str()));
        }
        std::sort(c.family.params.begin(), c.family.params.end());
    }

    Exponents& e = c.exponents;
    bool q_given = false, mu_given = false;
    if (j.contains("exponents")) {
        const auto& je = j["exponents"];
        if (je.contains("n")) e.n = je["n"].get<int>();
        if (je.contains("beta")) e.beta = number_from(je["beta"], "beta");
        if (je.contains("p")) e.p = number_from(je["p"], "p");
        if (je.contains("q")) {
            e.q = number_from(je["q"], "q");
            q_given = true;
        }
        if (je.contains("lambda")) e.lambda = number_from(je["lambda"], "lambda");
        if (je.contains("mu")) {
            e.mu = number_from(je["mu"], "mu");
            mu_given = true;
        }
        if (je.contains("alpha")) e.alpha = number_from(je["alpha"], "alpha");
        else e.alpha = e.beta;
    }

    // derive the output exponent from the theorem's regime when omitted
    if (c.kind == "theorem" && !q_given) {
        if (c.theorem == "1.4" || c.theorem == "1.8") {
            e = Exponents::morrey_a(e.n, e.beta, e.p, e.lambda);
        } else if (c.theorem == "1.5" || c.theorem == "1.9") {
            e = Exponents::morrey_b(e.n, e.beta, e.p, e.lambda);
        } else {
            const double lambda = e.lambda;
            const double mu = e.mu;
            e = Exponents::lebesgue(e.n, e.beta, e.p);
            e.lambda = lambda;
            if (mu_given) e.mu = mu;
        }
    }

    if (j.contains("grid_sizes")) {
        for (const auto& v : j["grid_sizes"]) c.grid_sizes.push_back(v.get<int>());
    }
    c.scale_mode = j.value("scale_mode", std::string("all"));
    c.thresholds = ScanThresholds{};
    c.thresholds.diverging_slope = e.beta / 2.0;
    if (j.contains("thresholds")) {
        const auto& jt = j["thresholds"];
        if (jt.contains("bounded_slope")) {
            c.thresholds.bounded_slope = number_from(jt["bounded_slope"], "bounded_slope");
        }
        if (jt.contains("diverging_slope")) {
            c.thresholds.diverging_slope = number_from(jt["diverging_slope"], "diverging_slope");
        }
    }
    c.oscillation_q = j.contains("oscillation_q") ? number_from(j["oscillation_q"], "oscillation_q")
                                                  : 1.0;
    c.dictionary_random = j.value("dictionary_random", 16);
    c.seed = j.contains("seed") ? j["seed"].get<std::uint64_t>() : c.family.seed;
    return c;
}

ScanConfig read_scan_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scan config: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_scan_config(buffer.str());
}

std::string write_scan_config(const ScanConfig& config) {
    std::string out;
    append_config_json(out, config, "");
    out += '\n';
    return out;
}

std::string write_report_json(const ScanReport& report) {
    std::string out = "{\n  \"config\": ";
    append_config_json(out, report.config, "  ");
    out += ",\n  \"results\": [";
    for (std::size_t i = 0; i < report.items.size(); ++i) {
        const ScanItem& item = report.items[i];
        out += (i > 0) ? ",\n    {" : "\n    {";
        out += "\n      \"name\": " + json_string(item.name) + ",";
        out += "\n      \"functional\": " + json_string(item.functional) + ",";
        out += "\n      \"values\": [";
        for (std::size_t k = 0; k < item.values.size(); ++k) {
            const ScanValue& v = item.values[k];
            out += (k > 0) ? ", " : "";
            out += "{\"N\": " + std::to_string(v.grid_size) + ", \"value\": " +
                   format_number(v.value);
            if (v.argmax) out += ", \"argmax_cube\": " + json_string(cube_literal(*v.argmax));
            if (!v.detail.empty()) out += ", \"detail\": " + json_string(v.detail);
            out += "}";
        }
        out += "],";
        if (item.fit) {
            out += "\n      \"slope\": " + format_number(item.fit->slope) + ",";
            out += "\n      \"residual\": " + format_number(item.fit->residual) + ",";
        }
        out += "\n      \"classification\": " + json_string(item.classification);
        if (item.pass) out += ",\n      \"pass\": " + std::string(*item.pass ? "true" : "false");
        if (!item.note.empty()) out += ",\n      \"note\": " + json_string(item.note);
        out += "\n    }";
    }
    out += report.items.empty() ? "],\n" : "\n  ],\n";
    out += "  \"provenance\": {\"tool_version\": " + json_string(report.tool_version) +
           ", \"seed\": " + std::to_string(report.config.seed) + "}\n}\n";
    return out;
}

std::string write_report_csv(const ScanReport& report) {
    std::string out =
        "item,functional,N,value,argmax_cube,detail,slope,residual,classification,pass,note\n";
    for (const ScanItem& item : report.items) {
        const std::string slope = item.fit ? format_number_plain(item.fit->slope) : "";
        const std::string residual = item.fit ? format_number_plain(item.fit->residual) : "";
        const std::string pass = item.pass ? (*item.pass ? "true" : "false") : "";
        for (const ScanValue& v : item.values) {
            out += csv_field(item.name) + ',' + csv_field(item.functional) + ',' +
                   std::to_string(v.grid_size) + ',' + format_number_plain(v.value) + ',' +
                   csv_field(v.argmax ? cube_literal(*v.argmax) : "") + ',' +
                   csv_field(v.detail) + ',' + slope + ',' + residual + ',' +
                   csv_field(item.classification) + ',' + pass + ',' + csv_field(item.note) +
                   '\n';
        }
    }
    return out;
}

}  // namespace maxcomm
