#pragma once

#include <algorithm>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace maxcomm {

enum class ScaleMode { Exhaustive, Geometric, Custom };

/// The cube side lengths a maximal operator ranges over. Exhaustive mode is
/// the ground truth for verification; geometric mode (1, 2, 4, ..., N plus N)
/// is a labelled approximation.
class ScaleSet {
public:
    static ScaleSet all(int cells_per_axis) {
        ScaleSet s;
        s.mode_ = ScaleMode::Exhaustive;
        s.sides_.resize(cells_per_axis);
        for (int k = 0; k < cells_per_axis; ++k) s.sides_[k] = k + 1;
        return s;
    }

    static ScaleSet geometric(int cells_per_axis) {
        ScaleSet s;
        s.mode_ = ScaleMode::Geometric;
        for (int side = 1; side <= cells_per_axis; side *= 2) s.sides_.push_back(side);
        if (s.sides_.back() != cells_per_axis) s.sides_.push_back(cells_per_axis);
        return s;
    }

    static ScaleSet custom(std::vector<int> sides, int cells_per_axis) {
        if (sides.empty()) throw std::invalid_argument("scale set must be nonempty");
        std::sort(sides.begin(), sides.end());
        sides.erase(std::unique(sides.begin(), sides.end()), sides.end());
        if (sides.front() < 1 || sides.back() > cells_per_axis) {
            throw std::invalid_argument("scales must lie in [1, N]");
        }
        ScaleSet s;
        s.mode_ = ScaleMode::Custom;
        s.sides_ = std::move(sides);
        return s;
    }

    static ScaleSet from_mode_string(const std::string& mode, int cells_per_axis) {
        if (mode == "all") return all(cells_per_axis);
        if (mode == "geo") return geometric(cells_per_axis);
        throw std::invalid_argument("scale mode must be 'all' or 'geo', got: " + mode);
    }

    std::span<const int> sides() const { return sides_; }
    ScaleMode mode() const { return mode_; }
    int max_side() const { return sides_.back(); }

    bool contains(int side) const {
        return std::binary_search(sides_.begin(), sides_.end(), side);
    }

    std::string mode_string() const {
        switch (mode_) {
            case ScaleMode::Exhaustive: return "all";
            case ScaleMode::Geometric: return "geo";
            case ScaleMode::Custom: return "custom";
        }
        return "custom";
    }

private:
    ScaleSet() = default;
    ScaleMode mode_ = ScaleMode::Exhaustive;
    std::vector<int> sides_;
};

}  // namespace maxcomm
