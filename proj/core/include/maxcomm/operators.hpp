#pragma once

#include <span>

#include "maxcomm/grid.hpp"
#include "maxcomm/scales.hpp"

namespace maxcomm {

/// Hardy-Littlewood maximal function by direct enumeration:
/// out(x) = max over cubes Q containing x (sides from `scales`) of the
/// average of |f| over Q. Reference oracle for mf_fast.
GridFunction mf_brute(const GridFunction& f, const ScaleSet& scales);

/// Same values as mf_brute, computed per scale with per-axis prefix sums
/// (summed-area tables) for the window averages and a monotone-queue
/// sliding maximum per axis for the per-cell max over covering windows.
/// Cost O(N^n * |scales| * n).
GridFunction mf_fast(const GridFunction& f, const ScaleSet& scales);

/// Fractional maximal function:
/// out(x) = max over Q of |Q|^(alpha/n - 1) * sum_Q |f| h^n
///        = max over Q of |Q|^(alpha/n) * average(|f|, Q).
/// Requires 0 < alpha < n.
GridFunction frac_mf(const GridFunction& f, double alpha, const ScaleSet& scales);

/// Maximal function restricted to subcubes of q0. The result lives on the
/// sub-grid of side q0.side (same spacing); cell i of the result is cell
/// (q0.offset + i) of the input grid.
GridFunction local_mf(const GridFunction& b, const Cube& q0);

/// Point evaluation of the q0-local maximal function. Throws
/// std::domain_error when `coord` lies outside q0.
double local_mf_at(const GridFunction& b, const Cube& q0, std::span<const int> coord);

/// Maximal commutator:
/// out(x) = max over Q containing x of (1/|Q|) sum_{y in Q} |b(x)-b(y)| |f(y)| h^n.
/// Per cube the inner sums are evaluated by sorting the cube's cells by
/// b-value once and splitting prefix sums at b(x)'s rank, O(m log m) for m
/// cells instead of O(m^2). Ties in b are broken by cell index; the kernel
/// |b(x)-b(y)| vanishes on ties, so the order does not change the value.
GridFunction maximal_commutator(const GridFunction& b, const GridFunction& f,
                                const ScaleSet& scales);

/// Nonlinear commutator [b,M](f) = b * M(f) - M(b f), both maximal
/// functions taken over the same scale set. May be negative.
GridFunction nonlinear_commutator(const GridFunction& b, const GridFunction& f,
                                  const ScaleSet& scales);

}  // namespace maxcomm
