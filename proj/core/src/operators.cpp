#include "maxcomm/operators.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <stdexcept>

#include "maxcomm/parallel.hpp"

namespace maxcomm {

namespace {

std::vector<double> abs_values(const GridFunction& f) {
    std::vector<double> out(f.values().begin(), f.values().end());
    for (double& v : out) v = std::abs(v);
    return out;
}

void require_same_grid(const GridFunction& b, const GridFunction& f) {
    if (!(b.grid() == f.grid())) {
        throw std::invalid_argument("symbol and argument must live on the same grid");
    }
}

std::int64_t product(std::span<const std::int64_t> extents) {
    std::int64_t p = 1;
    for (std::int64_t e : extents) p *= e;
    return p;
}

/// Replace each length-`extent` line along `axis` by its `window`-sums:
/// out[o] = sum_{t=o..o+window-1} in[t], via a prefix-sum pass per line.
std::vector<double> moving_sum_axis(const std::vector<double>& in,
                                    std::vector<std::int64_t>& extents, int axis, int window) {
    const int n = static_cast<int>(extents.size());
    const std::int64_t extent = extents[axis];
    const std::int64_t out_extent = extent - window + 1;
    std::int64_t inner = 1;
    for (int k = axis + 1; k < n; ++k) inner *= extents[k];
    std::int64_t outer = 1;
    for (int k = 0; k < axis; ++k) outer *= extents[k];

    std::vector<double> out(outer * out_extent * inner);
    std::vector<double> prefix(extent + 1);
    for (std::int64_t i = 0; i < outer; ++i) {
        for (std::int64_t j = 0; j < inner; ++j) {
            const std::int64_t base_in = (i * extent) * inner + j;
            const std::int64_t base_out = (i * out_extent) * inner + j;
            prefix[0] = 0.0;
            for (std::int64_t t = 0; t < extent; ++t) {
                prefix[t + 1] = prefix[t] + in[base_in + t * inner];
            }
            for (std::int64_t o = 0; o < out_extent; ++o) {
                out[base_out + o * inner] = prefix[o + window] - prefix[o];
            }
        }
    }
    extents[axis] = out_extent;
    return out;
}

/// Expand window values back to cells along `axis`: out[x] is the max of
/// in[o] over window offsets o with o <= x <= o + window - 1, clamped to
/// the valid offset range. Monotone-queue sliding maximum per line.
std::vector<double> sliding_max_expand_axis(const std::vector<double>& in,
                                            std::vector<std::int64_t>& extents, int axis,
                                            int window, std::int64_t cells) {
    const int n = static_cast<int>(extents.size());
    const std::int64_t extent = extents[axis];  // number of offsets, N - window + 1
    std::int64_t inner = 1;
    for (int k = axis + 1; k < n; ++k) inner *= extents[k];
    std::int64_t outer = 1;
    for (int k = 0; k < axis; ++k) outer *= extents[k];

    std::vector<double> out(outer * cells * inner);
    std::deque<std::int64_t> queue;
    for (std::int64_t i = 0; i < outer; ++i) {
        for (std::int64_t j = 0; j < inner; ++j) {
            const std::int64_t base_in = (i * extent) * inner + j;
            const std::int64_t base_out = (i * cells) * inner + j;
            queue.clear();
            for (std::int64_t x = 0; x < cells; ++x) {
                if (x < extent) {
                    const double v = in[base_in + x * inner];
                    while (!queue.empty() && in[base_in + queue.back() * inner] <= v) {
                        queue.pop_back();
                    }
                    queue.push_back(x);
                }
                while (queue.front() < x - window + 1) queue.pop_front();
                out[base_out + x * inner] = in[base_in + queue.front() * inner];
            }
        }
    }
    extents[axis] = cells;
    return out;
}

/// Shared kernel for M (weight 1) and the fractional variant
/// (weight (s h)^alpha per scale s).
template <typename Weight>
GridFunction scaled_max_kernel(const GridFunction& f, const ScaleSet& scales, Weight&& weight) {
    const Grid& grid = f.grid();
    const int n = grid.dim();
    const std::int64_t cells = grid.cells_per_axis();
    const std::vector<double> absf = abs_values(f);

    std::vector<double> best(grid.cell_count(), 0.0);
    for (int s : scales.sides()) {
        std::vector<std::int64_t> extents(n, cells);
        std::vector<double> cur = absf;
        for (int axis = n - 1; axis >= 0; --axis) {
            cur = moving_sum_axis(cur, extents, axis, s);
        }
        const double factor =
            weight(s) / static_cast<double>(cell_count(Cube{std::vector<int>(n, 0), s}, n));
        for (double& v : cur) v *= factor;
        for (int axis = 0; axis < n; ++axis) {
            cur = sliding_max_expand_axis(cur, extents, axis, s, cells);
        }
        for (std::int64_t i = 0; i < grid.cell_count(); ++i) best[i] = std::max(best[i], cur[i]);
    }
    return GridFunction(grid, std::move(best));
}

/// Direct enumeration kernel shared by mf_brute and local_mf.
template <typename Weight>
std::vector<double> brute_max_values(const GridFunction& absf, const CubeEnumeration& cubes,
                                     Weight&& weight) {
    const Grid& grid = absf.grid();
    auto map_chunk = [&](std::int64_t begin, std::int64_t end) {
        std::vector<double> out(grid.cell_count(), 0.0);
        for (std::int64_t c = begin; c < end; ++c) {
            const Cube q = cubes.at(c);
            const double value = weight(q.side) * average(absf, q);
            for_each_cell(grid, q, [&](std::int64_t i) {
                if (value > out[i]) out[i] = value;
            });
        }
        return out;
    };
    auto combine = [](std::vector<double> a, std::vector<double> b) {
        for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::max(a[i], b[i]);
        return a;
    };
    return chunked_reduce<std::vector<double>>(cubes.size(), map_chunk, combine,
                                               /*min_grain=*/256);
}

}  // namespace

GridFunction mf_brute(const GridFunction& f, const ScaleSet& scales) {
    const Grid& grid = f.grid();
    GridFunction absf(grid, abs_values(f));
    CubeEnumeration cubes(grid, {scales.sides().begin(), scales.sides().end()});
    return GridFunction(grid, brute_max_values(absf, cubes, [](int) { return 1.0; }));
}

GridFunction mf_fast(const GridFunction& f, const ScaleSet& scales) {
    return scaled_max_kernel(f, scales, [](int) { return 1.0; });
}

GridFunction frac_mf(const GridFunction& f, double alpha, const ScaleSet& scales) {
    const Grid& grid = f.grid();
    if (!(alpha > 0.0) || !(alpha < grid.dim())) {
        throw std::invalid_argument("fractional order alpha must lie in (0, n)");
    }
    const double h = grid.spacing();
    return scaled_max_kernel(f, scales,
                             [&](int s) { return std::pow(s * h, alpha); });
}

GridFunction local_mf(const GridFunction& b, const Cube& q0) {
    const Grid& grid = b.grid();
    validate_cube(grid, q0);
    const int n = grid.dim();

    // Extract |b| on q0 into a sub-grid of side q0.side.
    const Grid sub(n, q0.side, grid.spacing());
    std::vector<double> sub_values;
    sub_values.reserve(sub.cell_count());
    for_each_cell(grid, q0, [&](std::int64_t i) { sub_values.push_back(std::abs(b[i])); });
    GridFunction local_abs(sub, std::move(sub_values));

    ScaleSet all = ScaleSet::all(q0.side);
    CubeEnumeration cubes(sub, {all.sides().begin(), all.sides().end()});
    return GridFunction(sub, brute_max_values(local_abs, cubes, [](int) { return 1.0; }));
}

double local_mf_at(const GridFunction& b, const Cube& q0, std::span<const int> coord) {
    const Grid& grid = b.grid();
    validate_cube(grid, q0);
    if (!cube_contains(q0, coord)) {
        throw std::domain_error("local maximal function evaluated outside its cube");
    }
    std::vector<int> local(coord.size());
    for (std::size_t k = 0; k < coord.size(); ++k) local[k] = coord[k] - q0.offset[k];
    const GridFunction field = local_mf(b, q0);
    return field.at(local);
}

GridFunction maximal_commutator(const GridFunction& b, const GridFunction& f,
                                const ScaleSet& scales) {
    require_same_grid(b, f);
    const Grid& grid = b.grid();
    const std::vector<double> absf = abs_values(f);
    CubeEnumeration cubes(grid, {scales.sides().begin(), scales.sides().end()});

    auto map_chunk = [&](std::int64_t begin, std::int64_t end) {
        std::vector<double> out(grid.cell_count(), 0.0);
        std::vector<std::int64_t> idx;
        std::vector<int> order;
        std::vector<double> sorted_b, prefix_w, prefix_v;
        for (std::int64_t c = begin; c < end; ++c) {
            const Cube q = cubes.at(c);
            const std::int64_t m = cell_count(q, grid.dim());

            idx.clear();
            idx.reserve(m);
            for_each_cell(grid, q, [&](std::int64_t i) { idx.push_back(i); });

            order.resize(m);
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(), [&](int u, int v) {
                const double bu = b[idx[u]], bv = b[idx[v]];
                return bu < bv || (bu == bv && u < v);
            });

            sorted_b.resize(m);
            prefix_w.assign(m + 1, 0.0);
            prefix_v.assign(m + 1, 0.0);
            for (std::int64_t k = 0; k < m; ++k) {
                const std::int64_t cell = idx[order[k]];
                sorted_b[k] = b[cell];
                prefix_w[k + 1] = prefix_w[k] + absf[cell];
                prefix_v[k + 1] = prefix_v[k] + b[cell] * absf[cell];
            }
            const double w_total = prefix_w[m];
            const double v_total = prefix_v[m];

            const double inv_m = 1.0 / static_cast<double>(m);
            for (std::int64_t k = 0; k < m; ++k) {
                const std::int64_t cell = idx[k];
                const double bx = b[cell];
                const auto lo =
                    std::lower_bound(sorted_b.begin(), sorted_b.end(), bx) - sorted_b.begin();
                const auto hi =
                    std::upper_bound(sorted_b.begin(), sorted_b.end(), bx) - sorted_b.begin();
                // sum_{b(y)<bx} (bx - b(y))|f(y)| + sum_{b(y)>bx} (b(y) - bx)|f(y)|
                const double inner = bx * (prefix_w[lo] - (w_total - prefix_w[hi])) -
                                     (prefix_v[lo] - (v_total - prefix_v[hi]));
                // exact value is a sum of nonnegative terms; guard rounding
                const double value = std::max(inner, 0.0) * inv_m;
                if (value > out[cell]) out[cell] = value;
            }
        }
        return out;
    };
    auto combine = [](std::vector<double> a, std::vector<double> b2) {
        for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::max(a[i], b2[i]);
        return a;
    };
    return GridFunction(grid,
                        chunked_reduce<std::vector<double>>(cubes.size(), map_chunk, combine,
                                                            /*min_grain=*/64));
}

GridFunction nonlinear_commutator(const GridFunction& b, const GridFunction& f,
                                  const ScaleSet& scales) {
    require_same_grid(b, f);
    const Grid& grid = b.grid();
    const GridFunction mf = mf_fast(f, scales);
    std::vector<double> bf(grid.cell_count());
    for (std::int64_t i = 0; i < grid.cell_count(); ++i) bf[i] = b[i] * f[i];
    const GridFunction mbf = mf_fast(GridFunction(grid, std::move(bf)), scales);

    std::vector<double> out(grid.cell_count());
    for (std::int64_t i = 0; i < grid.cell_count(); ++i) out[i] = b[i] * mf[i] - mbf[i];
    return GridFunction(grid, std::move(out));
}

}  // namespace maxcomm
