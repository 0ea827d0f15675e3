#include "maxcomm/grid.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace maxcomm {

namespace {

std::int64_t checked_pow(std::int64_t base, int exp) {
    std::int64_t r = 1;
    for (int k = 0; k < exp; ++k) {
        if (base != 0 && r > std::numeric_limits<std::int64_t>::max() / base) {
            throw std::invalid_argument("grid cell count overflows 64-bit range");
        }
        r *= base;
    }
    return r;
}

double real_pow_int(double base, int exp) {
    double r = 1.0;
    for (int k = 0; k < exp; ++k) r *= base;
    return r;
}

}  // namespace

Grid::Grid(int dim, int cells_per_axis, double spacing)
    : n_(dim), cells_(cells_per_axis), h_(spacing) {
    if (dim < 1) throw std::invalid_argument("grid dimension must be >= 1");
    if (cells_per_axis < 1) throw std::invalid_argument("cells per axis must be >= 1");
    if (!(spacing > 0.0) || !std::isfinite(spacing)) {
        throw std::invalid_argument("grid spacing must be positive and finite");
    }
    cell_count_ = checked_pow(cells_per_axis, dim);
}

Grid Grid::unit(int dim, int cells_per_axis) {
    if (cells_per_axis < 1) throw std::invalid_argument("cells per axis must be >= 1");
    return Grid(dim, cells_per_axis, 1.0 / cells_per_axis);
}

double Grid::domain_measure() const { return real_pow_int(cells_ * h_, n_); }

std::int64_t Grid::flat_index(std::span<const int> coord) const {
    std::int64_t flat = 0;
    for (int k = 0; k < n_; ++k) flat = flat * cells_ + coord[k];
    return flat;
}

void Grid::coord_of(std::int64_t flat, std::span<int> coord) const {
    for (int k = n_ - 1; k >= 0; --k) {
        coord[k] = static_cast<int>(flat % cells_);
        flat /= cells_;
    }
}

std::vector<int> Grid::coord_of(std::int64_t flat) const {
    std::vector<int> coord(n_);
    coord_of(flat, coord);
    return coord;
}

void Grid::cell_center(std::span<const int> coord, std::span<double> point) const {
    for (int k = 0; k < n_; ++k) point[k] = center(coord[k]);
}

void validate_cube(const Grid& grid, const Cube& q) {
    if (static_cast<int>(q.offset.size()) != grid.dim()) {
        throw std::invalid_argument("cube offset dimension does not match grid");
    }
    if (q.side < 1 || q.side > grid.cells_per_axis()) {
        throw std::invalid_argument("cube side must lie in [1, N]");
    }
    for (int k = 0; k < grid.dim(); ++k) {
        if (q.offset[k] < 0 || q.offset[k] + q.side > grid.cells_per_axis()) {
            throw std::invalid_argument("cube leaves the grid domain");
        }
    }
}

bool cube_contains(const Cube& q, std::span<const int> coord) {
    for (std::size_t k = 0; k < q.offset.size(); ++k) {
        if (coord[k] < q.offset[k] || coord[k] >= q.offset[k] + q.side) return false;
    }
    return true;
}

double measure(const Grid& grid, const Cube& q) {
    return real_pow_int(q.side * grid.spacing(), grid.dim());
}

std::int64_t cell_count(const Cube& q, int dim) { return checked_pow(q.side, dim); }

Cube parse_cube_literal(const std::string& text, const Grid& grid) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw std::invalid_argument("cube literal must look like \"off0,off1,...:side\": " + text);
    }
    Cube q;
    std::stringstream offsets(text.substr(0, colon));
    std::string piece;
    while (std::getline(offsets, piece, ',')) {
        try {
            q.offset.push_back(std::stoi(piece));
        } catch (const std::exception&) {
            throw std::invalid_argument("bad cube offset '" + piece + "' in literal: " + text);
        }
    }
    try {
        q.side = std::stoi(text.substr(colon + 1));
    } catch (const std::exception&) {
        throw std::invalid_argument("bad cube side in literal: " + text);
    }
    validate_cube(grid, q);
    return q;
}

std::string cube_literal(const Cube& q) {
    std::string out;
    for (std::size_t k = 0; k < q.offset.size(); ++k) {
        if (k > 0) out += ',';
        out += std::to_string(q.offset[k]);
    }
    out += ':';
    out += std::to_string(q.side);
    return out;
}

GridFunction::GridFunction(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (static_cast<std::int64_t>(values_.size()) != grid_.cell_count()) {
        throw std::invalid_argument("grid function needs exactly N^n values");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) throw std::invalid_argument("grid function values must be finite");
    }
}

GridFunction GridFunction::zeros(const Grid& grid) {
    return GridFunction(grid, std::vector<double>(grid.cell_count(), 0.0));
}

GridFunction GridFunction::constant(const Grid& grid, double value) {
    return GridFunction(grid, std::vector<double>(grid.cell_count(), value));
}

GridFunction indicator(const Cube& q, const Grid& grid) {
    validate_cube(grid, q);
    std::vector<double> values(grid.cell_count(), 0.0);
    for_each_cell(grid, q, [&](std::int64_t i) { values[i] = 1.0; });
    return GridFunction(grid, std::move(values));
}

double cube_sum(const GridFunction& f, const Cube& q) {
    const Grid& grid = f.grid();
    validate_cube(grid, q);
    const int n = grid.dim();
    const int s = q.side;
    std::span<const double> v = f.values();

    std::vector<int> coord(q.offset.begin(), q.offset.end());
    std::int64_t rows = 1;
    for (int k = 0; k + 1 < n; ++k) rows *= s;

    double total = 0.0;
    for (std::int64_t row = 0; row < rows; ++row) {
        const std::int64_t base = grid.flat_index(coord);
        double run = 0.0;
        for (int j = 0; j < s; ++j) run += v[base + j];
        total += run;
        for (int k = n - 2; k >= 0; --k) {
            if (++coord[k] < q.offset[k] + s) break;
            coord[k] = q.offset[k];
        }
    }
    return total;
}

double average(const GridFunction& f, const Cube& q) {
    return cube_sum(f, q) / static_cast<double>(cell_count(q, f.grid().dim()));
}

CubeEnumeration::CubeEnumeration(const Grid& grid, std::vector<int> sides)
    : n_(grid.dim()), cells_(grid.cells_per_axis()), sides_(std::move(sides)) {
    if (sides_.empty()) throw std::invalid_argument("cube enumeration needs a nonempty scale set");
    cumulative_.reserve(sides_.size() + 1);
    cumulative_.push_back(0);
    for (std::size_t i = 0; i < sides_.size(); ++i) {
        const int s = sides_[i];
        if (s < 1 || s > cells_) throw std::invalid_argument("scale outside [1, N]");
        if (i > 0 && sides_[i] <= sides_[i - 1]) {
            throw std::invalid_argument("scales must be strictly increasing");
        }
        cumulative_.push_back(cumulative_.back() + checked_pow(cells_ - s + 1, n_));
    }
    total_ = cumulative_.back();
}

Cube CubeEnumeration::at(std::int64_t index) const {
    std::size_t block = 0;
    while (block + 1 < cumulative_.size() && index >= cumulative_[block + 1]) ++block;
    const int s = sides_[block];
    std::int64_t rem = index - cumulative_[block];
    const std::int64_t span = cells_ - s + 1;
    Cube q;
    q.side = s;
    q.offset.assign(n_, 0);
    for (int k = n_ - 1; k >= 0; --k) {
        q.offset[k] = static_cast<int>(rem % span);
        rem /= span;
    }
    return q;
}

std::vector<Cube> enumerate_cubes(const Grid& grid, std::span<const int> sides) {
    CubeEnumeration enumeration(grid, std::vector<int>(sides.begin(), sides.end()));
    std::vector<Cube> cubes;
    cubes.reserve(enumeration.size());
    for (std::int64_t i = 0; i < enumeration.size(); ++i) cubes.push_back(enumeration.at(i));
    return cubes;
}

}  // namespace maxcomm
