#include "maxcomm/norms.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "maxcomm/operators.hpp"
#include "maxcomm/parallel.hpp"

namespace maxcomm {

namespace {

double power_sum(std::span<const double> values, double p) {
    double sum = 0.0;
    if (p == 1.0) {
        for (double v : values) sum += std::abs(v);
    } else if (p == 2.0) {
        for (double v : values) sum += v * v;
    } else {
        for (double v : values) sum += std::pow(std::abs(v), p);
    }
    return sum;
}

struct SupAccumulator {
    double value = -1.0;
    std::int64_t index = -1;  // enumeration index; smallest wins on ties
};

SupAccumulator merge(SupAccumulator a, SupAccumulator b) {
    if (b.index < 0) return a;
    if (a.index < 0) return b;
    if (b.value > a.value || (b.value == a.value && b.index < a.index)) return b;
    return a;
}

/// Generic deterministic cube supremum: value(Q) evaluated over the whole
/// enumeration, argmax tie broken by enumeration order.
template <typename Value>
SupResult cube_supremum(const Grid& grid, const ScaleSet& scales, Value&& value,
                        std::int64_t min_grain = 64) {
    CubeEnumeration cubes(grid, {scales.sides().begin(), scales.sides().end()});
    auto map_chunk = [&](std::int64_t begin, std::int64_t end) {
        SupAccumulator best;
        for (std::int64_t c = begin; c < end; ++c) {
            const Cube q = cubes.at(c);
            const double v = value(q);
            if (best.index < 0 || v > best.value) best = {v, c};
        }
        return best;
    };
    const SupAccumulator best = chunked_reduce<SupAccumulator>(
        cubes.size(), map_chunk, [](SupAccumulator a, SupAccumulator b) { return merge(a, b); },
        min_grain);
    return SupResult{best.value, cubes.at(best.index)};
}

double real_pow_int(double base, int exp) {
    double r = 1.0;
    for (int k = 0; k < exp; ++k) r *= base;
    return r;
}

}  // namespace

double DistributionFunction::measure_at(double lambda) const {
    // thresholds are decreasing; the measure is the count at the smallest
    // threshold strictly above lambda.
    double m = 0.0;
    for (std::size_t k = 0; k < thresholds.size(); ++k) {
        if (thresholds[k] > lambda) {
            m = measures[k];
        } else {
            break;
        }
    }
    return m;
}

double DistributionFunction::integral() const {
    double total = 0.0;
    for (std::size_t k = 0; k < thresholds.size(); ++k) {
        const double next = (k + 1 < thresholds.size()) ? thresholds[k + 1] : 0.0;
        total += measures[k] * (thresholds[k] - next);
    }
    return total;
}

DistributionFunction distribution_of_values(std::span<const double> values, double cell_measure) {
    std::vector<double> mags(values.begin(), values.end());
    for (double& v : mags) v = std::abs(v);
    std::sort(mags.begin(), mags.end(), std::greater<>());

    DistributionFunction dist;
    std::int64_t count = 0;
    for (std::size_t i = 0; i < mags.size(); ++i) {
        if (mags[i] <= 0.0) break;
        ++count;
        const bool last_of_level = (i + 1 == mags.size()) || (mags[i + 1] != mags[i]);
        if (last_of_level) {
            dist.thresholds.push_back(mags[i]);
            dist.measures.push_back(static_cast<double>(count) * cell_measure);
        }
    }
    return dist;
}

DistributionFunction distribution(const GridFunction& g) {
    const double cell_measure = real_pow_int(g.grid().spacing(), g.grid().dim());
    return distribution_of_values(g.values(), cell_measure);
}

double lp_norm(const GridFunction& f, double p) {
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : f.values()) m = std::max(m, std::abs(v));
        return m;
    }
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm requires p >= 1");
    const double cell_measure = real_pow_int(f.grid().spacing(), f.grid().dim());
    const double sum = power_sum(f.values(), p);
    if (p == 1.0) return sum * cell_measure;
    return std::pow(sum * cell_measure, 1.0 / p);
}

double weak_constant(const GridFunction& g, const GridFunction& f, double beta) {
    const int n = g.grid().dim();
    if (!(beta > 0.0 && beta < n)) {
        throw std::invalid_argument("weak_constant requires 0 < beta < n");
    }
    const double f_l1 = lp_norm(f, 1.0);
    if (!(f_l1 > 0.0)) throw std::invalid_argument("weak_constant requires a nonzero f");

    const DistributionFunction dist = distribution(g);
    const double exponent = (n - beta) / n;
    double best = 0.0;
    for (std::size_t k = 0; k < dist.thresholds.size(); ++k) {
        best = std::max(best, dist.thresholds[k] * std::pow(dist.measures[k], exponent) / f_l1);
    }
    return best;
}

SupResult morrey_norm_detail(const GridFunction& f, double p, double lambda,
                             const ScaleSet& scales) {
    const Grid& grid = f.grid();
    const int n = grid.dim();
    if (!(p >= 1.0) || std::isinf(p)) {
        throw std::invalid_argument("morrey_norm requires 1 <= p < inf");
    }
    if (lambda < 0.0 || lambda > n) {
        throw std::invalid_argument("morrey_norm requires 0 <= lambda <= n");
    }
    const double cell_measure = real_pow_int(grid.spacing(), n);
    std::span<const double> values = f.values();

    SupResult result = cube_supremum(grid, scales, [&](const Cube& q) {
        double sum = 0.0;
        if (p == 1.0) {
            for_each_cell(grid, q, [&](std::int64_t i) { sum += std::abs(values[i]); });
        } else if (p == 2.0) {
            for_each_cell(grid, q, [&](std::int64_t i) { sum += values[i] * values[i]; });
        } else {
            for_each_cell(grid, q, [&](std::int64_t i) { sum += std::pow(std::abs(values[i]), p); });
        }
        const double weighted = std::pow(measure(grid, q), -lambda / n) * (sum * cell_measure);
        return p == 1.0 ? weighted : std::pow(weighted, 1.0 / p);
    });
    return result;
}

double morrey_norm(const GridFunction& f, double p, double lambda, const ScaleSet& scales) {
    return morrey_norm_detail(f, p, lambda, scales).value;
}

double lipschitz_pairwise(const GridFunction& b, double beta) {
    if (!(beta > 0.0 && beta < 1.0)) {
        throw std::invalid_argument("lipschitz_pairwise requires beta in (0,1)");
    }
    const Grid& grid = b.grid();
    const int n = grid.dim();
    const std::int64_t cells = grid.cell_count();

    // cell centers, flattened
    std::vector<double> centers(cells * n);
    std::vector<int> coord(n);
    for (std::int64_t i = 0; i < cells; ++i) {
        grid.coord_of(i, coord);
        for (int k = 0; k < n; ++k) centers[i * n + k] = grid.center(coord[k]);
    }

    auto map_chunk = [&](std::int64_t begin, std::int64_t end) {
        double best = 0.0;
        for (std::int64_t i = begin; i < end; ++i) {
            for (std::int64_t j = i + 1; j < cells; ++j) {
                const double diff = std::abs(b[i] - b[j]);
                if (diff == 0.0) continue;
                double sq = 0.0;
                for (int k = 0; k < n; ++k) {
                    const double d = centers[i * n + k] - centers[j * n + k];
                    sq += d * d;
                }
                best = std::max(best, diff / std::pow(std::sqrt(sq), beta));
            }
        }
        return best;
    };
    return chunked_reduce<double>(
        cells, map_chunk, [](double a, double b2) { return std::max(a, b2); },
        /*min_grain=*/64);
}

double lipschitz_pairwise_sampled(const GridFunction& b, double beta, std::int64_t pair_count,
                                  std::uint64_t seed) {
    if (!(beta > 0.0 && beta < 1.0)) {
        throw std::invalid_argument("lipschitz_pairwise requires beta in (0,1)");
    }
    const Grid& grid = b.grid();
    const int n = grid.dim();
    const std::int64_t cells = grid.cell_count();
    if (cells < 2) return 0.0;

    std::mt19937_64 engine(seed);
    std::vector<int> ci(n), cj(n);
    double best = 0.0;
    for (std::int64_t t = 0; t < pair_count; ++t) {
        const std::int64_t i = static_cast<std::int64_t>(engine() % cells);
        const std::int64_t j = static_cast<std::int64_t>(engine() % cells);
        if (i == j) continue;
        const double diff = std::abs(b[i] - b[j]);
        if (diff == 0.0) continue;
        grid.coord_of(i, ci);
        grid.coord_of(j, cj);
        double sq = 0.0;
        for (int k = 0; k < n; ++k) {
            const double d = grid.center(ci[k]) - grid.center(cj[k]);
            sq += d * d;
        }
        best = std::max(best, diff / std::pow(std::sqrt(sq), beta));
    }
    return best;
}

namespace {

/// Shared cube functional: |Q|^(-beta/n) * (average over Q of |b - ref|^q)^(1/q)
/// where ref is either the cube mean or the cube-local maximal function.
template <typename Deviation>
SupResult oscillation_supremum(const GridFunction& b, double beta_over_n_weighted, double q,
                               const ScaleSet& scales, Deviation&& deviation) {
    const Grid& grid = b.grid();
    const int n = grid.dim();
    return cube_supremum(grid, scales, [&](const Cube& cube) {
        const double m = static_cast<double>(cell_count(cube, n));
        const double dev_sum = deviation(cube);
        const double avg = dev_sum / m;
        const double root = q == 1.0 ? avg : std::pow(avg, 1.0 / q);
        if (beta_over_n_weighted == 0.0) return root;
        return std::pow(measure(grid, cube), -beta_over_n_weighted) * root;
    });
}

double abs_dev_pow(double v, double q) {
    const double a = std::abs(v);
    if (q == 1.0) return a;
    if (q == 2.0) return a * a;
    return std::pow(a, q);
}

}  // namespace

SupResult lipschitz_oscillation_detail(const GridFunction& b, double beta, double q,
                                       const ScaleSet& scales) {
    if (!(beta > 0.0 && beta < 1.0)) {
        throw std::invalid_argument("lipschitz_oscillation requires beta in (0,1)");
    }
    if (!(q >= 1.0) || std::isinf(q)) {
        throw std::invalid_argument("lipschitz_oscillation requires 1 <= q < inf");
    }
    const Grid& grid = b.grid();
    return oscillation_supremum(b, beta / grid.dim(), q, scales, [&](const Cube& cube) {
        const double mean = average(b, cube);
        double sum = 0.0;
        for_each_cell(grid, cube, [&](std::int64_t i) { sum += abs_dev_pow(b[i] - mean, q); });
        return sum;
    });
}

double lipschitz_oscillation(const GridFunction& b, double beta, double q,
                             const ScaleSet& scales) {
    return lipschitz_oscillation_detail(b, beta, q, scales).value;
}

SupResult bmo_norm_detail(const GridFunction& b, const ScaleSet& scales) {
    const Grid& grid = b.grid();
    return oscillation_supremum(b, 0.0, 1.0, scales, [&](const Cube& cube) {
        const double mean = average(b, cube);
        double sum = 0.0;
        for_each_cell(grid, cube, [&](std::int64_t i) { sum += std::abs(b[i] - mean); });
        return sum;
    });
}

double bmo_norm(const GridFunction& b, const ScaleSet& scales) {
    return bmo_norm_detail(b, scales).value;
}

SupResult mq_deviation_detail(const GridFunction& b, double beta, double q,
                              const ScaleSet& scales) {
    if (!(beta > 0.0 && beta < 1.0)) {
        throw std::invalid_argument("mq_deviation requires beta in (0,1)");
    }
    if (!(q >= 1.0) || std::isinf(q)) {
        throw std::invalid_argument("mq_deviation requires 1 <= q < inf");
    }
    const Grid& grid = b.grid();
    return oscillation_supremum(b, beta / grid.dim(), q, scales, [&](const Cube& cube) {
        const GridFunction local = local_mf(b, cube);
        std::span<const double> local_values = local.values();
        double sum = 0.0;
        std::int64_t k = 0;
        for_each_cell(grid, cube, [&](std::int64_t i) {
            sum += abs_dev_pow(b[i] - local_values[k], q);
            ++k;
        });
        return sum;
    });
}

double mq_deviation(const GridFunction& b, double beta, double q, const ScaleSet& scales) {
    return mq_deviation_detail(b, beta, q, scales).value;
}

SupResult negativity_defect_detail(const GridFunction& b, double beta, const ScaleSet& scales) {
    if (!(beta > 0.0 && beta < 1.0)) {
        throw std::invalid_argument("negativity_defect requires beta in (0,1)");
    }
    const Grid& grid = b.grid();
    return oscillation_supremum(b, beta / grid.dim(), 1.0, scales, [&](const Cube& cube) {
        double sum = 0.0;
        for_each_cell(grid, cube, [&](std::int64_t i) { sum += std::max(-b[i], 0.0); });
        return sum;
    });
}

double negativity_defect(const GridFunction& b, double beta, const ScaleSet& scales) {
    return negativity_defect_detail(b, beta, scales).value;
}

}  // namespace maxcomm
