// AVX2 variants. This translation unit is the only one compiled with -mavx2;
// nothing here may be called before dispatch has confirmed CPU support.

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "routeproj/kernels.hpp"

namespace routeproj::kernels::avx2 {

namespace {
constexpr std::size_t kLanes = 4;
}

void sq_distances(Point q, const double* xs, const double* ys, double* out, std::size_t n) noexcept {
    const __m256d qx = _mm256_set1_pd(q.x);
    const __m256d qy = _mm256_set1_pd(q.y);
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + i), qx);
        const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + i), qy);
        _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)));
    }
    scalar::sq_distances(q, xs + i, ys + i, out + i, n - i);
}

void distances(Point q, const double* xs, const double* ys, double* out, std::size_t n) noexcept {
    const __m256d qx = _mm256_set1_pd(q.x);
    const __m256d qy = _mm256_set1_pd(q.y);
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + i), qx);
        const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + i), qy);
        const __m256d s = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
        _mm256_storeu_pd(out + i, _mm256_sqrt_pd(s));
    }
    scalar::distances(q, xs + i, ys + i, out + i, n - i);
}

Box bounds(const double* xs, const double* ys, std::size_t n) noexcept {
    if (n < kLanes) return scalar::bounds(xs, ys, n);
    __m256d lox = _mm256_loadu_pd(xs);
    __m256d loy = _mm256_loadu_pd(ys);
    __m256d hix = lox;
    __m256d hiy = loy;
    std::size_t i = kLanes;
    for (; i + kLanes <= n; i += kLanes) {
        const __m256d vx = _mm256_loadu_pd(xs + i);
        const __m256d vy = _mm256_loadu_pd(ys + i);
        lox = _mm256_min_pd(lox, vx);
        loy = _mm256_min_pd(loy, vy);
        hix = _mm256_max_pd(hix, vx);
        hiy = _mm256_max_pd(hiy, vy);
    }
    alignas(32) double a[kLanes], b[kLanes], c[kLanes], d[kLanes];
    _mm256_store_pd(a, lox);
    _mm256_store_pd(b, loy);
    _mm256_store_pd(c, hix);
    _mm256_store_pd(d, hiy);
    Box box{{a[0], b[0]}, {c[0], d[0]}};
    for (std::size_t l = 1; l < kLanes; ++l) {
        box.min.x = std::min(box.min.x, a[l]);
        box.min.y = std::min(box.min.y, b[l]);
        box.max.x = std::max(box.max.x, c[l]);
        box.max.y = std::max(box.max.y, d[l]);
    }
    for (; i < n; ++i) {
        box.min.x = std::min(box.min.x, xs[i]);
        box.min.y = std::min(box.min.y, ys[i]);
        box.max.x = std::max(box.max.x, xs[i]);
        box.max.y = std::max(box.max.y, ys[i]);
    }
    return box;
}

void translate(double* xs, double* ys, std::size_t n, Point a) noexcept {
    const __m256d ax = _mm256_set1_pd(a.x);
    const __m256d ay = _mm256_set1_pd(a.y);
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        _mm256_storeu_pd(xs + i, _mm256_sub_pd(_mm256_loadu_pd(xs + i), ax));
        _mm256_storeu_pd(ys + i, _mm256_sub_pd(_mm256_loadu_pd(ys + i), ay));
    }
    scalar::translate(xs + i, ys + i, n - i, a);
}

void mirror(double* xs, double* ys, std::size_t n, Point a) noexcept {
    const __m256d ax = _mm256_set1_pd(a.x);
    const __m256d ay = _mm256_set1_pd(a.y);
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        _mm256_storeu_pd(xs + i, _mm256_sub_pd(ax, _mm256_loadu_pd(xs + i)));
        _mm256_storeu_pd(ys + i, _mm256_sub_pd(ay, _mm256_loadu_pd(ys + i)));
    }
    scalar::mirror(xs + i, ys + i, n - i, a);
}

void divide(double* xs, double* ys, std::size_t n, double d) noexcept {
    const __m256d dv = _mm256_set1_pd(d);
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        _mm256_storeu_pd(xs + i, _mm256_div_pd(_mm256_loadu_pd(xs + i), dv));
        _mm256_storeu_pd(ys + i, _mm256_div_pd(_mm256_loadu_pd(ys + i), dv));
    }
    scalar::divide(xs + i, ys + i, n - i, d);
}

void add(double* xs, double* ys, std::size_t n, Point a) noexcept {
    const __m256d ax = _mm256_set1_pd(a.x);
    const __m256d ay = _mm256_set1_pd(a.y);
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        _mm256_storeu_pd(xs + i, _mm256_add_pd(_mm256_loadu_pd(xs + i), ax));
        _mm256_storeu_pd(ys + i, _mm256_add_pd(_mm256_loadu_pd(ys + i), ay));
    }
    scalar::add(xs + i, ys + i, n - i, a);
}

void clip_unit(double* xs, double* ys, std::size_t n) noexcept {
    // Operand order mirrors std::min(std::max(v, 0), 1) so signed zeros agree.
    const __m256d zero = _mm256_setzero_pd();
    const __m256d one = _mm256_set1_pd(1.0);
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        const __m256d vx = _mm256_min_pd(one, _mm256_max_pd(zero, _mm256_loadu_pd(xs + i)));
        const __m256d vy = _mm256_min_pd(one, _mm256_max_pd(zero, _mm256_loadu_pd(ys + i)));
        _mm256_storeu_pd(xs + i, vx);
        _mm256_storeu_pd(ys + i, vy);
    }
    scalar::clip_unit(xs + i, ys + i, n - i);
}

void accumulate(double* acc, const double* v, std::size_t n) noexcept {
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        _mm256_storeu_pd(acc + i, _mm256_add_pd(_mm256_loadu_pd(acc + i), _mm256_loadu_pd(v + i)));
    }
    scalar::accumulate(acc + i, v + i, n - i);
}

}  // namespace routeproj::kernels::avx2
