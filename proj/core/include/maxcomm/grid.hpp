#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace maxcomm {

/// Uniform discretization of the cube [0, N*h]^n into N^n cells.
/// Cell (i_0, ..., i_{n-1}) has its center at ((i_k + 0.5) * h)_k.
/// Values attached to cells are stored flat in row-major order with the
/// last axis fastest.
class Grid {
public:
    Grid(int dim, int cells_per_axis, double spacing);

    /// Grid covering the unit cube: h = 1/N.
    static Grid unit(int dim, int cells_per_axis);

    int dim() const { return n_; }
    int cells_per_axis() const { return cells_; }
    double spacing() const { return h_; }

    std::int64_t cell_count() const { return cell_count_; }
    double domain_measure() const;

    std::int64_t flat_index(std::span<const int> coord) const;
    void coord_of(std::int64_t flat, std::span<int> coord) const;
    std::vector<int> coord_of(std::int64_t flat) const;

    double center(int index_along_axis) const { return (index_along_axis + 0.5) * h_; }
    void cell_center(std::span<const int> coord, std::span<double> point) const;

    bool operator==(const Grid& other) const {
        return n_ == other.n_ && cells_ == other.cells_ && h_ == other.h_;
    }

private:
    int n_;
    int cells_;
    double h_;
    std::int64_t cell_count_;
};

/// Axis-aligned cube of whole grid cells: `side` cells along each axis
/// starting at cell index `offset[k]`. Cubes never leave the domain.
struct Cube {
    std::vector<int> offset;
    int side = 1;

    bool operator==(const Cube& other) const = default;
};

/// Throws std::invalid_argument unless Q lies fully inside the grid.
void validate_cube(const Grid& grid, const Cube& q);

bool cube_contains(const Cube& q, std::span<const int> coord);

double measure(const Grid& grid, const Cube& q);       // (side*h)^n
std::int64_t cell_count(const Cube& q, int dim);       // side^n

/// "off0,off1,...:side" cube literal, e.g. "2,3:4".
Cube parse_cube_literal(const std::string& text, const Grid& grid);
std::string cube_literal(const Cube& q);

/// Real-valued function sampled on grid cells. Immutable; every value finite.
class GridFunction {
public:
    GridFunction(Grid grid, std::vector<double> values);

    static GridFunction zeros(const Grid& grid);
    static GridFunction constant(const Grid& grid, double value);

    const Grid& grid() const { return grid_; }
    std::span<const double> values() const { return values_; }
    double operator[](std::int64_t flat) const { return values_[flat]; }
    double at(std::span<const int> coord) const { return values_[grid_.flat_index(coord)]; }
    std::int64_t size() const { return static_cast<std::int64_t>(values_.size()); }

private:
    Grid grid_;
    std::vector<double> values_;
};

/// chi_Q: 1 on the cells of Q, 0 elsewhere.
GridFunction indicator(const Cube& q, const Grid& grid);

/// Plain cell sum over Q. Summation is per-axis nested with the last axis
/// innermost, each run left to right, so results are reproducible.
double cube_sum(const GridFunction& f, const Cube& q);

/// f_Q = (1/|Q|) \int_Q f = cube_sum / side^n.
double average(const GridFunction& f, const Cube& q);

/// Visit the cells of Q as flat indices, row-major within the cube.
template <typename F>
void for_each_cell(const Grid& grid, const Cube& q, F&& fn) {
    const int n = grid.dim();
    const int s = q.side;
    // rows = all axes but the last; the last axis is a contiguous run.
    std::vector<int> coord(q.offset.begin(), q.offset.end());
    const std::int64_t rows = [&] {
        std::int64_t r = 1;
        for (int k = 0; k + 1 < n; ++k) r *= s;
        return r;
    }();
    for (std::int64_t row = 0; row < rows; ++row) {
        std::int64_t base = grid.flat_index(coord);
        for (int j = 0; j < s; ++j) fn(base + j);
        // advance odometer over axes 0..n-2
        for (int k = n - 2; k >= 0; --k) {
            if (++coord[k] < q.offset[k] + s) break;
            coord[k] = q.offset[k];
        }
    }
}

/// Deterministic enumeration of all cubes with sides drawn from `sides`
/// (ascending) and offsets in row-major order. Count per side s is
/// (N-s+1)^n.
class CubeEnumeration {
public:
    CubeEnumeration(const Grid& grid, std::vector<int> sides);

    std::int64_t size() const { return total_; }
    Cube at(std::int64_t index) const;
    const std::vector<int>& sides() const { return sides_; }

private:
    int n_;
    int cells_;
    std::vector<int> sides_;
    std::vector<std::int64_t> cumulative_;  // cumulative counts per side block
    std::int64_t total_;
};

std::vector<Cube> enumerate_cubes(const Grid& grid, std::span<const int> sides);

}  // namespace maxcomm
