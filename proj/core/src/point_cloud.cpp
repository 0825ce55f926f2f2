#include "critsamp/point_cloud.hpp"

#include <cmath>

#include "critsamp/errors.hpp"

namespace critsamp {

PointCloud::PointCloud(std::size_t dim, std::vector<double> coords)
    : dim_(dim), coords_(std::move(coords)) {
    if (dim_ == 0 && !coords_.empty())
        throw ValidationError("point cloud with zero dimension");
    if (dim_ != 0 && coords_.size() % dim_ != 0)
        throw ValidationError("coordinate count not a multiple of dimension");
}

PointCloud PointCloud::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) return {};
    std::size_t dim = rows.front().size();
    std::vector<double> coords;
    coords.reserve(rows.size() * dim);
    for (const auto& row : rows) {
        if (row.size() != dim)
            throw ValidationError("ragged point rows");
        coords.insert(coords.end(), row.begin(), row.end());
    }
    return PointCloud(dim, std::move(coords));
}

double PointCloud::distance(std::size_t i, std::size_t j) const {
    const double* a = coords_.data() + i * dim_;
    const double* b = coords_.data() + j * dim_;
    double sum = 0.0;
    for (std::size_t c = 0; c < dim_; ++c) {
        double d = a[c] - b[c];
        sum += d * d;
    }
    return std::sqrt(sum);
}

double PointCloud::diameter() const {
    double best = 0.0;
    std::size_t n = size();
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            best = std::max(best, distance(i, j));
    return best;
}

PointCloud PointCloud::subset(const std::vector<int>& indices) const {
    std::vector<double> coords;
    coords.reserve(indices.size() * dim_);
    for (int i : indices) {
        auto p = point(static_cast<std::size_t>(i));
        coords.insert(coords.end(), p.begin(), p.end());
    }
    return PointCloud(dim_, std::move(coords));
}

}  // namespace critsamp
