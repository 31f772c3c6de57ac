#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace routeproj {

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

inline double euclid(Point a, Point b) noexcept {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

inline double sq_dist(Point a, Point b) noexcept {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

inline bool is_finite(Point p) noexcept { return std::isfinite(p.x) && std::isfinite(p.y); }

// Half-open row range [begin, end).
struct IndexRange {
    std::size_t begin = 0;
    std::size_t end = 0;

    std::size_t size() const noexcept { return end > begin ? end - begin : 0; }
    bool empty() const noexcept { return end <= begin; }
};

struct Box {
    Point min;
    Point max;

    double range_x() const noexcept { return max.x - min.x; }
    double range_y() const noexcept { return max.y - min.y; }
    double range_max() const noexcept { return std::max(range_x(), range_y()); }
    Point mid() const noexcept { return {(max.x + min.x) / 2.0, (max.y + min.y) / 2.0}; }
};

/// Coordinates stored column-wise (x and y in separate contiguous arrays) so
/// the arithmetic kernels can stream over them.
class CoordMatrix {
public:
    CoordMatrix() = default;
    explicit CoordMatrix(std::size_t n) : x_(n, 0.0), y_(n, 0.0) {}
    CoordMatrix(std::initializer_list<Point> pts) {
        reserve(pts.size());
        for (const Point& p : pts) push_back(p);
    }
    explicit CoordMatrix(std::span<const Point> pts) {
        reserve(pts.size());
        for (const Point& p : pts) push_back(p);
    }

    std::size_t size() const noexcept { return x_.size(); }
    bool empty() const noexcept { return x_.empty(); }
    void reserve(std::size_t n) {
        x_.reserve(n);
        y_.reserve(n);
    }
    void resize(std::size_t n) {
        x_.resize(n, 0.0);
        y_.resize(n, 0.0);
    }
    void clear() noexcept {
        x_.clear();
        y_.clear();
    }

    Point operator[](std::size_t i) const noexcept { return {x_[i], y_[i]}; }
    Point at(std::size_t i) const {
        if (i >= size()) throw std::out_of_range("coordinate row out of range");
        return (*this)[i];
    }
    void set(std::size_t i, Point p) noexcept {
        x_[i] = p.x;
        y_[i] = p.y;
    }
    void push_back(Point p) {
        x_.push_back(p.x);
        y_.push_back(p.y);
    }

    std::span<double> xs() noexcept { return x_; }
    std::span<double> ys() noexcept { return y_; }
    std::span<const double> xs() const noexcept { return x_; }
    std::span<const double> ys() const noexcept { return y_; }

    bool all_finite() const noexcept;

    friend bool operator==(const CoordMatrix&, const CoordMatrix&) = default;

private:
    std::vector<double> x_;
    std::vector<double> y_;
};

/// Componentwise extremes over rows [window.begin, window.end).
/// Throws std::invalid_argument("empty statistics window") for an empty window
/// and std::out_of_range when the window exceeds the matrix.
Box bbox(const CoordMatrix& coords, IndexRange window);

/// Layout of a per-step local view: row 0 is the anchor (first node for TSP,
/// depot for CVRP), rows 1..k are candidates, row k+1 is the current node.
struct SubgraphLayout {
    std::size_t k = 0;

    std::size_t rows() const noexcept { return k + 2; }
    static constexpr std::size_t first_index() noexcept { return 0; }
    std::size_t last_index() const noexcept { return k + 1; }
    IndexRange candidates() const noexcept { return {1, k + 1}; }
    // Everything except the anchor row.
    IndexRange exclude_first() const noexcept { return {1, k + 2}; }
    IndexRange all() const noexcept { return {0, k + 2}; }

    static SubgraphLayout for_rows(std::size_t rows) {
        if (rows < 3) throw std::invalid_argument("subgraph needs at least one candidate");
        return SubgraphLayout{rows - 2};
    }
};

}  // namespace routeproj
