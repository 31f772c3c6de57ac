#include <doctest.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <random>
#include <vector>

#include "routeproj/kernels.hpp"

using namespace routeproj;

namespace {

std::vector<double> sample(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-4, 4);
    std::vector<double> v(n);
    for (auto& x : v) x = u(rng);
    // Mix in values that exercise clipping and signed zeros.
    if (n > 3) {
        v[0] = -0.0;
        v[1] = 0.0;
        v[2] = 1.0;
        v[3] = 0.5;
    }
    return v;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("scalar kernels on small inputs") {
    const std::vector<double> xs{0, 3, 1};
    const std::vector<double> ys{0, 4, 1};
    std::vector<double> out(3);
    kernels::scalar::sq_distances({0, 0}, xs.data(), ys.data(), out.data(), 3);
    CHECK(out == std::vector<double>{0, 25, 2});
    kernels::scalar::distances({0, 0}, xs.data(), ys.data(), out.data(), 3);
    CHECK(out[1] == 5.0);
    const Box b = kernels::scalar::bounds(xs.data(), ys.data(), 3);
    CHECK(b.min == Point{0, 0});
    CHECK(b.max == Point{3, 4});

    std::vector<double> cx{-1, 0.5, 2};
    std::vector<double> cy{0.25, 7, -3};
    kernels::scalar::clip_unit(cx.data(), cy.data(), 3);
    CHECK(cx == std::vector<double>{0, 0.5, 1});
    CHECK(cy == std::vector<double>{0.25, 1, 0});
}

TEST_CASE("dispatch reports a usable variant") {
    CHECK(kernels::isa_available(kernels::Isa::scalar));
    CHECK(kernels::isa_available(kernels::active_isa()));
    CHECK(kernels::isa_name(kernels::Isa::scalar) == "scalar");
}

#if defined(ROUTEPROJ_HAVE_AVX2)
TEST_CASE("avx2 kernels match scalar bit for bit") {
    if (!kernels::isa_available(kernels::Isa::avx2)) {
        MESSAGE("CPU without AVX2; equivalence not exercised");
        return;
    }
    std::mt19937_64 rng(2024);
    for (std::size_t n = 0; n < 70; ++n) {
        const auto xs = sample(rng, n);
        const auto ys = sample(rng, n);
        const Point q{0.3, -1.7};
        std::vector<double> a(n), b(n);

        kernels::scalar::sq_distances(q, xs.data(), ys.data(), a.data(), n);
        kernels::avx2::sq_distances(q, xs.data(), ys.data(), b.data(), n);
        CHECK(same_bits(a, b));

        kernels::scalar::distances(q, xs.data(), ys.data(), a.data(), n);
        kernels::avx2::distances(q, xs.data(), ys.data(), b.data(), n);
        CHECK(same_bits(a, b));

        if (n > 0) {
            const Box s = kernels::scalar::bounds(xs.data(), ys.data(), n);
            const Box v = kernels::avx2::bounds(xs.data(), ys.data(), n);
            CHECK(s.min == v.min);
            CHECK(s.max == v.max);
        }

        auto run_pair = [&](auto scalar_fn, auto avx_fn) {
            auto sx = xs, sy = ys, vx = xs, vy = ys;
            scalar_fn(sx.data(), sy.data());
            avx_fn(vx.data(), vy.data());
            CHECK(same_bits(sx, vx));
            CHECK(same_bits(sy, vy));
        };
        run_pair([&](double* x, double* y) { kernels::scalar::translate(x, y, n, q); },
                 [&](double* x, double* y) { kernels::avx2::translate(x, y, n, q); });
        run_pair([&](double* x, double* y) { kernels::scalar::mirror(x, y, n, q); },
                 [&](double* x, double* y) { kernels::avx2::mirror(x, y, n, q); });
        run_pair([&](double* x, double* y) { kernels::scalar::divide(x, y, n, 0.37); },
                 [&](double* x, double* y) { kernels::avx2::divide(x, y, n, 0.37); });
        run_pair([&](double* x, double* y) { kernels::scalar::add(x, y, n, q); },
                 [&](double* x, double* y) { kernels::avx2::add(x, y, n, q); });
        run_pair([&](double* x, double* y) { kernels::scalar::clip_unit(x, y, n); },
                 [&](double* x, double* y) { kernels::avx2::clip_unit(x, y, n); });

        auto acc_s = xs, acc_v = xs;
        kernels::scalar::accumulate(acc_s.data(), ys.data(), n);
        kernels::avx2::accumulate(acc_v.data(), ys.data(), n);
        CHECK(same_bits(acc_s, acc_v));
    }
}

TEST_CASE("forcing a variant changes the dispatch target") {
    if (!kernels::isa_available(kernels::Isa::avx2)) return;
    const kernels::Isa before = kernels::active_isa();
    kernels::force_isa(kernels::Isa::scalar);
    CHECK(kernels::active_isa() == kernels::Isa::scalar);
    kernels::force_isa(kernels::Isa::avx2);
    CHECK(kernels::active_isa() == kernels::Isa::avx2);
    kernels::force_isa(before);
}
#endif
