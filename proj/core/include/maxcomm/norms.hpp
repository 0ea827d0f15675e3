#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "maxcomm/grid.hpp"
#include "maxcomm/scales.hpp"

namespace maxcomm {

/// Distribution function of |g| as an exact step function. thresholds are
/// the distinct positive |values| in decreasing order; measures[k] is
/// |{ |g| >= thresholds[k] }|, i.e. the value the right-continuous map
/// lambda -> |{ |g| > lambda }| takes on [thresholds[k+1], thresholds[k]).
struct DistributionFunction {
    std::vector<double> thresholds;
    std::vector<double> measures;

    /// |{ |g| > lambda }| (right-continuous).
    double measure_at(double lambda) const;

    /// Layer-cake integral over all thresholds; equals the L1 norm of g.
    double integral() const;

    double support_measure() const { return measures.empty() ? 0.0 : measures.back(); }
};

DistributionFunction distribution(const GridFunction& g);
DistributionFunction distribution_of_values(std::span<const double> values, double cell_measure);

/// (sum |f|^p h^n)^(1/p); p = inf gives max |f|. Requires p >= 1.
double lp_norm(const GridFunction& f, double p);

/// Best empirical weak-type (1, n/(n-beta)) constant, normalized:
/// sup over thresholds t of t * |{ |g| >= t }|^((n-beta)/n) / ||f||_1.
/// The sup over all lambda of the step function is attained at a
/// threshold, so the finite max is exact.
double weak_constant(const GridFunction& g, const GridFunction& f, double beta);

/// Value of a cube supremum together with the cube attaining it (first in
/// enumeration order on ties).
struct SupResult {
    double value = 0.0;
    Cube argmax;
};

/// sup over cubes of ( |Q|^(-lambda/n) * sum_Q |f|^p h^n )^(1/p).
/// Requires 1 <= p < inf and 0 <= lambda <= n.
double morrey_norm(const GridFunction& f, double p, double lambda, const ScaleSet& scales);
SupResult morrey_norm_detail(const GridFunction& f, double p, double lambda,
                             const ScaleSet& scales);

/// Smallest C with |b(x)-b(y)| <= C |x-y|^beta over all distinct cell
/// centers. O(N^2n) pairs; the reference oracle for the Lipschitz norm.
double lipschitz_pairwise(const GridFunction& b, double beta);

/// Subsampled variant: max over `pair_count` seeded random pairs. A lower
/// bound on lipschitz_pairwise, and labelled as such wherever reported.
double lipschitz_pairwise_sampled(const GridFunction& b, double beta, std::int64_t pair_count,
                                  std::uint64_t seed);

/// sup over cubes of |Q|^(-beta/n) * (average of |b - b_Q|^q over Q)^(1/q).
double lipschitz_oscillation(const GridFunction& b, double beta, double q,
                             const ScaleSet& scales);
SupResult lipschitz_oscillation_detail(const GridFunction& b, double beta, double q,
                                       const ScaleSet& scales);

/// sup over cubes of the mean oscillation average(|b - b_Q|, Q).
double bmo_norm(const GridFunction& b, const ScaleSet& scales);
SupResult bmo_norm_detail(const GridFunction& b, const ScaleSet& scales);

/// sup over cubes Q of |Q|^(-beta/n) * (average of |b - M_Q(b)|^q over Q)^(1/q),
/// where M_Q is the cube-local maximal function.
double mq_deviation(const GridFunction& b, double beta, double q, const ScaleSet& scales);
SupResult mq_deviation_detail(const GridFunction& b, double beta, double q,
                              const ScaleSet& scales);

/// sup over cubes of |Q|^(-beta/n) * average(b^-, Q) with b^- = max(-b, 0).
/// Zero iff b >= 0; diverges under refinement when the negative part
/// persists.
double negativity_defect(const GridFunction& b, double beta, const ScaleSet& scales);
SupResult negativity_defect_detail(const GridFunction& b, double beta, const ScaleSet& scales);

}  // namespace maxcomm
