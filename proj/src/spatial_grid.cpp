#include "hetnet/spatial_grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hetnet {

namespace {

constexpr double kMaxCellsPerSide = 4096;

}  // namespace

SpatialGrid::SpatialGrid(std::span<const Point> points, double halfSide, double cellSize)
    : points_(points.begin(), points.end()), half_(halfSide) {
    if (!(halfSide > 0) || !(cellSize > 0)) throw std::invalid_argument("spatial grid needs a positive extent and cell size");
    cells_ = int(std::clamp(std::ceil(2.0 * halfSide / cellSize), 1.0, kMaxCellsPerSide));
    cell_ = 2.0 * halfSide / cells_;

    const std::size_t n = std::size_t(cells_) * std::size_t(cells_);
    start_.assign(n + 1, 0);
    std::vector<std::uint32_t> cellOf(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const std::size_t c = std::size_t(cellCoord(points_[i].y)) * cells_ + std::size_t(cellCoord(points_[i].x));
        cellOf[i] = std::uint32_t(c);
        ++start_[c + 1];
    }
    for (std::size_t c = 0; c < n; ++c) start_[c + 1] += start_[c];
    order_.resize(points_.size());
    std::vector<std::uint32_t> fill(start_.begin(), start_.end() - 1);
    for (std::size_t i = 0; i < points_.size(); ++i) order_[fill[cellOf[i]]++] = std::uint32_t(i);
}

int SpatialGrid::cellCoord(double v) const {
    const double c = std::floor((v + half_) / cell_);
    return int(std::clamp(c, 0.0, double(cells_ - 1)));
}

std::optional<Neighbor> SpatialGrid::nearest(Point q) const {
    if (points_.empty()) return std::nullopt;
    // Unclamped cell of the query; rings of cells around it are scanned until
    // the next ring cannot hold anything closer than the best so far.
    const long qx = long(std::floor((q.x + half_) / cell_));
    const long qy = long(std::floor((q.y + half_) / cell_));
    const long reach = std::max({std::labs(qx), std::labs(qy), std::labs(qx - cells_), std::labs(qy - cells_)}) + 1;

    Neighbor best{0, INFINITY};
    auto scan = [&](long cx, long cy) {
        if (cx < 0 || cy < 0 || cx >= cells_ || cy >= cells_) return;
        const std::size_t c = std::size_t(cy) * cells_ + std::size_t(cx);
        for (std::uint32_t k = start_[c]; k < start_[c + 1]; ++k) {
            const std::uint32_t i = order_[k];
            const double d2 = squaredDistance(points_[i], q);
            if (d2 < best.distance2 || (d2 == best.distance2 && i < best.index)) best = {i, d2};
        }
    };
    for (long r = 0; r <= reach; ++r) {
        if (r == 0) {
            scan(qx, qy);
        } else {
            for (long d = -r; d <= r; ++d) {
                scan(qx + d, qy - r);
                scan(qx + d, qy + r);
            }
            for (long d = -r + 1; d <= r - 1; ++d) {
                scan(qx - r, qy + d);
                scan(qx + r, qy + d);
            }
        }
        const double clear = double(r) * cell_;
        if (std::isfinite(best.distance2) && best.distance2 <= clear * clear) break;
    }
    return best;
}

}  // namespace hetnet
