#include <algorithm>
#include <cmath>

#include "routeproj/kernels.hpp"

namespace routeproj::kernels::scalar {

void sq_distances(Point q, const double* xs, const double* ys, double* out, std::size_t n) noexcept {
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - q.x;
        const double dy = ys[i] - q.y;
        out[i] = dx * dx + dy * dy;
    }
}

void distances(Point q, const double* xs, const double* ys, double* out, std::size_t n) noexcept {
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - q.x;
        const double dy = ys[i] - q.y;
        out[i] = std::sqrt(dx * dx + dy * dy);
    }
}

Box bounds(const double* xs, const double* ys, std::size_t n) noexcept {
    Box b{{xs[0], ys[0]}, {xs[0], ys[0]}};
    for (std::size_t i = 1; i < n; ++i) {
        b.min.x = std::min(b.min.x, xs[i]);
        b.min.y = std::min(b.min.y, ys[i]);
        b.max.x = std::max(b.max.x, xs[i]);
        b.max.y = std::max(b.max.y, ys[i]);
    }
    return b;
}

void translate(double* xs, double* ys, std::size_t n, Point a) noexcept {
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] -= a.x;
        ys[i] -= a.y;
    }
}

void mirror(double* xs, double* ys, std::size_t n, Point a) noexcept {
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = a.x - xs[i];
        ys[i] = a.y - ys[i];
    }
}

void divide(double* xs, double* ys, std::size_t n, double d) noexcept {
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] /= d;
        ys[i] /= d;
    }
}

void add(double* xs, double* ys, std::size_t n, Point a) noexcept {
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] += a.x;
        ys[i] += a.y;
    }
}

void clip_unit(double* xs, double* ys, std::size_t n) noexcept {
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = std::min(std::max(xs[i], 0.0), 1.0);
        ys[i] = std::min(std::max(ys[i], 0.0), 1.0);
    }
}

void accumulate(double* acc, const double* v, std::size_t n) noexcept {
    for (std::size_t i = 0; i < n; ++i) acc[i] += v[i];
}

}  // namespace routeproj::kernels::scalar
