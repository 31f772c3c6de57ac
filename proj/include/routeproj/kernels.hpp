#pragma once

// Data-parallel inner loops shared by the KNN index, the projections, the
// scoring policies and decision fusion.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant. The active variant is chosen once at startup from CPU detection
// (overridable with ROUTEPROJ_SIMD=scalar|avx2 or force_isa()). All variants
// use the same per-element operation sequence without fused multiply-add, so
// their results are bit-identical; the equivalence tests rely on that.

#include <cstddef>
#include <span>
#include <string_view>

#include "routeproj/geometry.hpp"

namespace routeproj::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa) noexcept;

// True when the running CPU (and this build) can execute the given variant.
bool isa_available(Isa isa) noexcept;

// Variant used by the dispatching entry points below.
Isa active_isa() noexcept;

// Forces a variant for the whole process; throws std::invalid_argument when the
// variant is unavailable.
void force_isa(Isa isa);

// out[i] = (xs[i]-q.x)^2 + (ys[i]-q.y)^2
void sq_distances(Point q, std::span<const double> xs, std::span<const double> ys,
                  std::span<double> out) noexcept;

// out[i] = sqrt((xs[i]-q.x)^2 + (ys[i]-q.y)^2)
void distances(Point q, std::span<const double> xs, std::span<const double> ys,
               std::span<double> out) noexcept;

// Componentwise min/max; the spans must be nonempty.
Box bounds(std::span<const double> xs, std::span<const double> ys) noexcept;

// v -= a
void translate(std::span<double> xs, std::span<double> ys, Point a) noexcept;
// v = a - v
void mirror(std::span<double> xs, std::span<double> ys, Point a) noexcept;
// v /= d
void divide(std::span<double> xs, std::span<double> ys, double d) noexcept;
// v += a
void add(std::span<double> xs, std::span<double> ys, Point a) noexcept;
// v = min(max(v, 0), 1)
void clip_unit(std::span<double> xs, std::span<double> ys) noexcept;

// acc[i] += v[i]
void accumulate(std::span<double> acc, std::span<const double> v) noexcept;

// Explicit per-variant entry points, used by the equivalence tests.
namespace scalar {
void sq_distances(Point q, const double* xs, const double* ys, double* out, std::size_t n) noexcept;
void distances(Point q, const double* xs, const double* ys, double* out, std::size_t n) noexcept;
Box bounds(const double* xs, const double* ys, std::size_t n) noexcept;
void translate(double* xs, double* ys, std::size_t n, Point a) noexcept;
void mirror(double* xs, double* ys, std::size_t n, Point a) noexcept;
void divide(double* xs, double* ys, std::size_t n, double d) noexcept;
void add(double* xs, double* ys, std::size_t n, Point a) noexcept;
void clip_unit(double* xs, double* ys, std::size_t n) noexcept;
void accumulate(double* acc, const double* v, std::size_t n) noexcept;
}  // namespace scalar

#if defined(ROUTEPROJ_HAVE_AVX2)
namespace avx2 {
void sq_distances(Point q, const double* xs, const double* ys, double* out, std::size_t n) noexcept;
void distances(Point q, const double* xs, const double* ys, double* out, std::size_t n) noexcept;
Box bounds(const double* xs, const double* ys, std::size_t n) noexcept;
void translate(double* xs, double* ys, std::size_t n, Point a) noexcept;
void mirror(double* xs, double* ys, std::size_t n, Point a) noexcept;
void divide(double* xs, double* ys, std::size_t n, double d) noexcept;
void add(double* xs, double* ys, std::size_t n, Point a) noexcept;
void clip_unit(double* xs, double* ys, std::size_t n) noexcept;
void accumulate(double* acc, const double* v, std::size_t n) noexcept;
}  // namespace avx2
#endif

}  // namespace routeproj::kernels
