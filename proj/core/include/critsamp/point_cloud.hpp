#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace critsamp {

/// Finite point set in R^d with the Euclidean metric. Coordinates are
/// stored row-major; the index order is part of the cloud's identity
/// (samplers break ties by index).
class PointCloud {
public:
    PointCloud() = default;
    PointCloud(std::size_t dim, std::vector<double> coords);

    static PointCloud from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
    std::size_t dim() const { return dim_; }
    bool empty() const { return coords_.empty(); }

    std::span<const double> point(std::size_t i) const {
        return {coords_.data() + i * dim_, dim_};
    }

    double distance(std::size_t i, std::size_t j) const;

    /// Max pairwise distance; 0 for fewer than two points.
    double diameter() const;

    PointCloud subset(const std::vector<int>& indices) const;

private:
    std::size_t dim_ = 0;
    std::vector<double> coords_;
};

}  // namespace critsamp
