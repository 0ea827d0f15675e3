#include "maxcomm/families.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace maxcomm {

namespace {

double distance(std::span<const double> x, std::span<const double> y) {
    double sq = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double d = x[k] - y[k];
        sq += d * d;
    }
    return std::sqrt(sq);
}

void require_beta(double beta) {
    if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("family beta must lie in (0,1)");
}

}  // namespace

std::string FunctionFamily::name() const {
    switch (kind) {
        case FamilyKind::Constant: return "constant";
        case FamilyKind::Affine: return "affine";
        case FamilyKind::Power: return "power";
        case FamilyKind::ConeMin: return "cone_min";
        case FamilyKind::ClippedLog: return "clipped_log";
        case FamilyKind::RandomSmooth: return "random_smooth";
    }
    return "unknown";
}

bool FunctionFamily::nonnegative() const {
    switch (kind) {
        case FamilyKind::Constant: return value >= 0.0;
        case FamilyKind::Affine: {
            // min over the corners of [0,1]^n
            double lo = intercept;
            for (double s : slope) lo += std::min(0.0, s);
            return lo >= 0.0;
        }
        case FamilyKind::Power: return true;
        case FamilyKind::ConeMin: {
            double lo = anchors.empty() ? 0.0 : anchors.front().offset;
            for (const auto& a : anchors) lo = std::min(lo, a.offset);
            return lo >= 0.0;
        }
        case FamilyKind::ClippedLog: return false;  // values ~ log(distance) <= 0
        case FamilyKind::RandomSmooth: {
            double swing = 0.0;
            for (const auto& w : waves) swing += std::abs(w.amplitude);
            return shift - swing >= 0.0;
        }
    }
    return false;
}

double FunctionFamily::evaluate(std::span<const double> x, double clip_distance) const {
    switch (kind) {
        case FamilyKind::Constant: return value;
        case FamilyKind::Affine: {
            double v = intercept;
            for (std::size_t k = 0; k < slope.size(); ++k) v += slope[k] * x[k];
            return v;
        }
        case FamilyKind::Power: return std::pow(distance(x, center), beta);
        case FamilyKind::ConeMin: {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& a : anchors) {
                best = std::min(best, a.offset + cone_norm * std::pow(distance(x, a.point), beta));
            }
            return best;
        }
        case FamilyKind::ClippedLog:
            return std::log(std::max(distance(x, center), clip_distance));
        case FamilyKind::RandomSmooth: {
            double v = shift;
            for (const auto& w : waves) {
                double arg = w.phase;
                for (std::size_t k = 0; k < w.freq.size(); ++k) {
                    arg += 2.0 * std::numbers::pi * w.freq[k] * x[k];
                }
                v += w.amplitude * std::cos(arg);
            }
            return v;
        }
    }
    throw std::invalid_argument("unknown family kind");
}

GridFunction sample(const FunctionFamily& family, const Grid& grid) {
    if (family.dim != grid.dim()) {
        throw std::invalid_argument("family dimension does not match grid");
    }
    const int n = grid.dim();
    std::vector<double> values(grid.cell_count());
    std::vector<int> coord(n, 0);
    std::vector<double> point(n);
    for (std::int64_t i = 0; i < grid.cell_count(); ++i) {
        grid.coord_of(i, coord);
        grid.cell_center(coord, point);
        values[i] = family.evaluate(point, grid.spacing());
    }
    return GridFunction(grid, std::move(values));
}

FunctionFamily constant_family(int dim, double value) {
    FunctionFamily f;
    f.kind = FamilyKind::Constant;
    f.dim = dim;
    f.value = value;
    return f;
}

FunctionFamily affine_family(std::vector<double> slope, double intercept) {
    FunctionFamily f;
    f.kind = FamilyKind::Affine;
    f.dim = static_cast<int>(slope.size());
    f.slope = std::move(slope);
    f.intercept = intercept;
    return f;
}

FunctionFamily power_family(std::vector<double> center, double beta) {
    require_beta(beta);
    FunctionFamily f;
    f.kind = FamilyKind::Power;
    f.dim = static_cast<int>(center.size());
    f.center = std::move(center);
    f.beta = beta;
    return f;
}

FunctionFamily cone_min_family(std::vector<FunctionFamily::Anchor> anchors, double cone_norm,
                               double beta) {
    require_beta(beta);
    if (anchors.empty()) throw std::invalid_argument("cone_min needs at least one anchor");
    if (!(cone_norm >= 0.0)) throw std::invalid_argument("cone_min norm K must be >= 0");
    FunctionFamily f;
    f.kind = FamilyKind::ConeMin;
    f.dim = static_cast<int>(anchors.front().point.size());
    f.anchors = std::move(anchors);
    f.cone_norm = cone_norm;
    f.beta = beta;
    return f;
}

FunctionFamily clipped_log_family(std::vector<double> center) {
    FunctionFamily f;
    f.kind = FamilyKind::ClippedLog;
    f.dim = static_cast<int>(center.size());
    f.center = std::move(center);
    return f;
}

FunctionFamily random_cone_min(int dim, int count, double cone_norm, double beta,
                               double offset_lo, double offset_hi, std::uint64_t seed) {
    require_beta(beta);
    if (count < 1) throw std::invalid_argument("cone_min needs at least one anchor");
    Rng rng(seed);
    std::vector<FunctionFamily::Anchor> anchors(count);
    for (auto& a : anchors) {
        a.point.resize(dim);
        for (double& c : a.point) c = rng.uniform();
        a.offset = rng.uniform(offset_lo, offset_hi);
    }
    FunctionFamily f = cone_min_family(std::move(anchors), cone_norm, beta);
    f.seed = seed;
    return f;
}

FunctionFamily random_clipped_log(int dim, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> center(dim);
    // keep the singularity well inside the domain
    for (double& c : center) c = rng.uniform(0.2, 0.8);
    FunctionFamily f = clipped_log_family(std::move(center));
    f.seed = seed;
    return f;
}

FunctionFamily random_smooth_family(int dim, int terms, double shift, std::uint64_t seed) {
    if (terms < 1) throw std::invalid_argument("random_smooth needs at least one term");
    Rng rng(seed);
    FunctionFamily f;
    f.kind = FamilyKind::RandomSmooth;
    f.dim = dim;
    f.shift = shift;
    f.seed = seed;
    f.waves.resize(terms);
    for (auto& w : f.waves) {
        w.amplitude = rng.uniform(-0.5, 0.5);
        w.freq.resize(dim);
        for (double& k : w.freq) k = rng.uniform_int(0, 3);
        w.phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
    }
    return f;
}

FunctionFamily make_family(const std::string& name, int dim,
                           std::span<const std::pair<std::string, double>> params,
                           std::uint64_t seed) {
    std::map<std::string, double> kv;
    for (const auto& [key, val] : params) kv[key] = val;
    auto get = [&](const std::string& key, double fallback) {
        auto it = kv.find(key);
        return it == kv.end() ? fallback : it->second;
    };
    auto point_param = [&](const std::string& prefix, double fallback) {
        std::vector<double> pt(dim, fallback);
        for (int k = 0; k < dim; ++k) {
            pt[k] = get(prefix + "_" + std::to_string(k), get(prefix, fallback));
        }
        return pt;
    };

    if (name == "constant") return constant_family(dim, get("value", 1.0));
    if (name == "affine") {
        std::vector<double> slope = point_param("slope", 1.0);
        return affine_family(std::move(slope), get("intercept", 0.0));
    }
    if (name == "power") {
        return power_family(point_param("x0", 0.5), get("beta", 0.5));
    }
    if (name == "cone_min") {
        FunctionFamily f = random_cone_min(
            dim, static_cast<int>(get("anchors", 3.0)), get("K", 1.0), get("beta", 0.5),
            get("offset_lo", 0.2), get("offset_hi", 1.0), seed);
        const double drop = get("drop", 0.0);  // shift down to force a negative part
        for (auto& a : f.anchors) a.offset -= drop;
        return f;
    }
    if (name == "clipped_log") {
        if (kv.count("x0") || kv.count("x0_0")) return clipped_log_family(point_param("x0", 0.5));
        return random_clipped_log(dim, seed);
    }
    if (name == "random_smooth") {
        return random_smooth_family(dim, static_cast<int>(get("terms", 4.0)),
                                    get("shift", 2.0), seed);
    }
    throw std::invalid_argument("unknown function family: " + name);
}

GridFunction random_function(const Grid& grid, std::uint64_t seed, double lo, double hi) {
    Rng rng(seed);
    std::vector<double> values(grid.cell_count());
    for (double& v : values) v = rng.uniform(lo, hi);
    return GridFunction(grid, std::move(values));
}

GridFunction cell_mass(const Grid& grid, std::span<const int> coord) {
    std::vector<double> values(grid.cell_count(), 0.0);
    values[grid.flat_index(coord)] = 1.0;
    return GridFunction(grid, std::move(values));
}

}  // namespace maxcomm
