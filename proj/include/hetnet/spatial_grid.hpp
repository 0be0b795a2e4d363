#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace hetnet {

struct Point {
    double x = 0;
    double y = 0;
};

inline double squaredDistance(Point a, Point b) {
    const double dx = a.x - b.x, dy = a.y - b.y;
    return dx * dx + dy * dy;
}

struct Neighbor {
    std::uint32_t index = 0;
    double distance2 = 0;  // squared distance (m²)
};

// Uniform bucket grid over a square window [-half, half]², stored CSR style
// (one offset per cell into a permuted index array). Points outside the
// window are clamped into the border cells, so queries are exact only for
// point sets inside the window.
class SpatialGrid {
public:
    SpatialGrid() = default;
    SpatialGrid(std::span<const Point> points, double halfSide, double cellSize);

    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }
    const std::vector<Point>& points() const { return points_; }

    std::optional<Neighbor> nearest(Point q) const;

    // Calls f(index, distance2) for every point with distance2 <= radius².
    template <class F>
    void forEachWithin(Point q, double radius, F&& f) const {
        if (points_.empty()) return;
        const double r2 = radius * radius;
        const int cx0 = cellCoord(q.x - radius), cx1 = cellCoord(q.x + radius);
        const int cy0 = cellCoord(q.y - radius), cy1 = cellCoord(q.y + radius);
        for (int cy = cy0; cy <= cy1; ++cy) {
            for (int cx = cx0; cx <= cx1; ++cx) {
                const std::size_t c = std::size_t(cy) * cells_ + std::size_t(cx);
                for (std::uint32_t k = start_[c]; k < start_[c + 1]; ++k) {
                    const std::uint32_t i = order_[k];
                    const double d2 = squaredDistance(points_[i], q);
                    if (d2 <= r2) f(i, d2);
                }
            }
        }
    }

private:
    int cellCoord(double v) const;

    std::vector<Point> points_;
    std::vector<std::uint32_t> start_;
    std::vector<std::uint32_t> order_;
    double half_ = 0;
    double cell_ = 1;
    int cells_ = 1;  // per side
};

}  // namespace hetnet
