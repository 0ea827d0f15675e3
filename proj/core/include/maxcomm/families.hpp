#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "maxcomm/grid.hpp"

namespace maxcomm {

/// Deterministic random source. Raw mt19937_64 draws are mapped to doubles
/// explicitly so streams are identical across platforms and compilers.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [lo, hi], inclusive.
    int uniform_int(int lo, int hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(engine_() % span);
    }

    std::uint64_t raw() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

enum class FamilyKind { Constant, Affine, Power, ConeMin, ClippedLog, RandomSmooth };

/// A continuum symbol function on [0,1]^n, sampled at cell centers by
/// sample(). One instance describes the same function at every grid
/// resolution, which is what refinement scans need.
struct FunctionFamily {
    FamilyKind kind = FamilyKind::Constant;
    int dim = 1;

    double value = 0.0;  // Constant

    std::vector<double> slope;  // Affine: intercept + slope . x
    double intercept = 0.0;

    std::vector<double> center;  // Power / ClippedLog singularity x0
    double beta = 0.5;           // Power / ConeMin exponent

    struct Anchor {
        std::vector<double> point;
        double offset = 0.0;
    };
    std::vector<Anchor> anchors;  // ConeMin: min_i (offset_i + K |x - a_i|^beta)
    double cone_norm = 1.0;       // K

    struct Wave {
        double amplitude = 0.0;
        std::vector<double> freq;  // integer frequencies
        double phase = 0.0;
    };
    std::vector<Wave> waves;  // RandomSmooth: shift + sum a_j cos(2 pi k_j.x + phi_j)
    double shift = 0.0;

    std::uint64_t seed = 0;

    std::string name() const;

    /// Whether the continuum function has finite pairwise beta-norm.
    bool in_lipschitz() const { return kind != FamilyKind::ClippedLog; }

    /// Analytic nonnegativity of the continuum function on [0,1]^n.
    bool nonnegative() const;

    /// Point evaluation; `clip_distance` is used only by ClippedLog
    /// (distance below which the logarithm is frozen).
    double evaluate(std::span<const double> x, double clip_distance) const;
};

/// Deterministic sampling at cell centers. ClippedLog clips at the value
/// attained one cell from the singularity (distance h).
GridFunction sample(const FunctionFamily& family, const Grid& grid);

FunctionFamily constant_family(int dim, double value);
FunctionFamily affine_family(std::vector<double> slope, double intercept);
FunctionFamily power_family(std::vector<double> center, double beta);
FunctionFamily cone_min_family(std::vector<FunctionFamily::Anchor> anchors, double cone_norm,
                               double beta);
FunctionFamily clipped_log_family(std::vector<double> center);

/// Cone-min instance with `count` anchors drawn uniformly from [0,1]^n and
/// offsets from [offset_lo, offset_hi]. Lipschitz with pairwise norm <= K;
/// nonnegative iff offset_lo >= 0.
FunctionFamily random_cone_min(int dim, int count, double cone_norm, double beta,
                               double offset_lo, double offset_hi, std::uint64_t seed);

FunctionFamily random_clipped_log(int dim, std::uint64_t seed);

/// Trigonometric polynomial with `terms` random waves plus `shift`.
FunctionFamily random_smooth_family(int dim, int terms, double shift, std::uint64_t seed);

/// Parse by name with scalar parameters; see README for the keys each
/// family accepts. Throws std::invalid_argument for unknown names or
/// out-of-range parameters.
FunctionFamily make_family(const std::string& name, int dim,
                           std::span<const std::pair<std::string, double>> params,
                           std::uint64_t seed);

/// White-noise cell values in [lo, hi], seeded.
GridFunction random_function(const Grid& grid, std::uint64_t seed, double lo, double hi);

/// One unit of mass on a single cell: indicator of the cell at `coord`.
GridFunction cell_mass(const Grid& grid, std::span<const int> coord);

}  // namespace maxcomm
