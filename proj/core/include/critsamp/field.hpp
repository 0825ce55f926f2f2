#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "critsamp/point_cloud.hpp"

namespace critsamp {

/// Rectangular grid of scalar values normalized to [0, 1], row-major.
/// (u, v) indexes column u of row v. Immutable after construction.
class ScalarField {
public:
    ScalarField(int width, int height, std::vector<double> values,
                double raw_max = 255.0);

    int width() const { return width_; }
    int height() const { return height_; }
    double raw_max() const { return raw_max_; }

    double at(int u, int v) const { return values_[index(u, v)]; }
    int index(int u, int v) const { return v * width_ + u; }
    const std::vector<double>& values() const { return values_; }

    /// 1 - f, same grid. Sublevel analysis of the result is superlevel
    /// analysis of this field.
    ScalarField inverted() const;

private:
    int width_;
    int height_;
    double raw_max_;
    std::vector<double> values_;
};

struct GridPoint {
    int u = 0;
    int v = 0;
    friend bool operator==(GridPoint a, GridPoint b) {
        return a.u == b.u && a.v == b.v;
    }
    friend auto operator<=>(GridPoint a, GridPoint b) = default;
};

/// Pixel subset of a field together with the lifted Euclidean metric
/// on (u, v, lift_scale * f(u, v)). lift_scale 0 keeps the plain grid
/// metric.
struct GridPointCloud {
    int width = 0;
    int height = 0;
    std::vector<GridPoint> points;
    std::vector<double> field_values;
    double lift_scale = 0.0;

    std::size_t size() const { return points.size(); }
    PointCloud metric_points() const;
    GridPointCloud subset(const std::vector<int>& indices) const;
};

enum class ResizeMode { Nearest, Bilinear };

/// Parses an ASCII (P2) or binary (P5) PGM stream, maxval <= 65535.
/// Values come out divided by maxval; raw_max records maxval.
ScalarField load_pgm(std::string_view bytes);
ScalarField load_pgm_file(const std::string& path);

/// P2 text at the field's raw_max; reload reproduces the values within
/// 1/(2*raw_max), and bit-exactly when they are multiples of 1/raw_max.
std::string write_pgm(const ScalarField& field);

ScalarField resize(const ScalarField& field, int w, int h, ResizeMode mode);

/// All grid points with value strictly below the threshold. Throws
/// ValidationError when nothing qualifies.
GridPointCloud to_point_cloud(const ScalarField& field,
                              double exclusion_threshold = 1.0,
                              double lift_scale = 0.0);

/// Samples generator(u, v) over the grid, clamping into [0, 1].
ScalarField field_from_function(
    int w, int h, const std::function<double(int, int)>& generator);

}  // namespace critsamp
