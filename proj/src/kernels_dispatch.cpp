// Runtime selection between kernel variants. No intrinsics in this file.

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "routeproj/kernels.hpp"

namespace routeproj::kernels {

namespace {

bool cpu_has_avx2() noexcept {
#if defined(ROUTEPROJ_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Isa detect() noexcept {
    if (const char* env = std::getenv("ROUTEPROJ_SIMD")) {
        const std::string v(env);
        if (v == "scalar") return Isa::scalar;
        if (v == "avx2" && cpu_has_avx2()) return Isa::avx2;
    }
    return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() noexcept {
    static std::atomic<Isa> isa{detect()};
    return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
    }
    return "unknown";
}

bool isa_available(Isa isa) noexcept {
    return isa == Isa::scalar || (isa == Isa::avx2 && cpu_has_avx2());
}

Isa active_isa() noexcept { return current().load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
    if (!isa_available(isa)) {
        throw std::invalid_argument("kernel variant not available: " + std::string(isa_name(isa)));
    }
    current().store(isa, std::memory_order_relaxed);
}

#if defined(ROUTEPROJ_HAVE_AVX2)
#define ROUTEPROJ_DISPATCH(fn, ...)                                   \
    do {                                                             \
        if (active_isa() == Isa::avx2) return avx2::fn(__VA_ARGS__); \
        return scalar::fn(__VA_ARGS__);                              \
    } while (0)
#else
#define ROUTEPROJ_DISPATCH(fn, ...) return scalar::fn(__VA_ARGS__)
#endif

void sq_distances(Point q, std::span<const double> xs, std::span<const double> ys,
                  std::span<double> out) noexcept {
    ROUTEPROJ_DISPATCH(sq_distances, q, xs.data(), ys.data(), out.data(), xs.size());
}

void distances(Point q, std::span<const double> xs, std::span<const double> ys,
               std::span<double> out) noexcept {
    ROUTEPROJ_DISPATCH(distances, q, xs.data(), ys.data(), out.data(), xs.size());
}

Box bounds(std::span<const double> xs, std::span<const double> ys) noexcept {
    ROUTEPROJ_DISPATCH(bounds, xs.data(), ys.data(), xs.size());
}

void translate(std::span<double> xs, std::span<double> ys, Point a) noexcept {
    ROUTEPROJ_DISPATCH(translate, xs.data(), ys.data(), xs.size(), a);
}

void mirror(std::span<double> xs, std::span<double> ys, Point a) noexcept {
    ROUTEPROJ_DISPATCH(mirror, xs.data(), ys.data(), xs.size(), a);
}

void divide(std::span<double> xs, std::span<double> ys, double d) noexcept {
    ROUTEPROJ_DISPATCH(divide, xs.data(), ys.data(), xs.size(), d);
}

void add(std::span<double> xs, std::span<double> ys, Point a) noexcept {
    ROUTEPROJ_DISPATCH(add, xs.data(), ys.data(), xs.size(), a);
}

void clip_unit(std::span<double> xs, std::span<double> ys) noexcept {
    ROUTEPROJ_DISPATCH(clip_unit, xs.data(), ys.data(), xs.size());
}

void accumulate(std::span<double> acc, std::span<const double> v) noexcept {
    ROUTEPROJ_DISPATCH(accumulate, acc.data(), v.data(), acc.size());
}

#undef ROUTEPROJ_DISPATCH

}  // namespace routeproj::kernels
