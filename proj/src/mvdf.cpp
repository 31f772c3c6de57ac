#include "routeproj/mvdf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "routeproj/kernels.hpp"

namespace routeproj::mvdf {

Point apply_view(std::size_t v, Point p) {
    const double x = p.x;
    const double y = p.y;
    switch (v) {
        case 0: return {x, y};
        case 1: return {y, x};
        case 2: return {x, 1.0 - y};
        case 3: return {y, 1.0 - x};
        case 4: return {1.0 - x, y};
        case 5: return {1.0 - y, x};
        case 6: return {1.0 - x, 1.0 - y};
        case 7: return {1.0 - y, 1.0 - x};
        default: throw std::out_of_range("view index must be in 0..7");
    }
}

CoordMatrix view(const CoordMatrix& coords, std::size_t view_index) {
    if (view_index >= kViewCount) throw std::out_of_range("view index must be in 0..7");
    CoordMatrix out(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) out.set(i, apply_view(view_index, coords[i]));
    return out;
}

std::vector<CoordMatrix> augment(const CoordMatrix& coords) {
    std::vector<CoordMatrix> out;
    out.reserve(kViewCount);
    for (std::size_t v = 0; v < kViewCount; ++v) out.push_back(view(coords, v));
    return out;
}

Logits sum_logits(std::span<const Logits> per_view) {
    if (per_view.empty()) throw std::invalid_argument("no views to fuse");
    for (const Logits& l : per_view) {
        if (l.size() != per_view.front().size()) throw std::invalid_argument("per-view logits have mismatched lengths");
    }
    // Pairwise tree reduction over the list order.
    std::vector<Logits> level(per_view.begin(), per_view.end());
    while (level.size() > 1) {
        std::vector<Logits> next;
        next.reserve((level.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
            kernels::accumulate(level[i], level[i + 1]);
            next.push_back(std::move(level[i]));
        }
        if (level.size() % 2 == 1) next.push_back(std::move(level.back()));
        level = std::move(next);
    }
    return std::move(level.front());
}

namespace {

std::vector<double> softmax(const Logits& z) {
    double peak = -std::numeric_limits<double>::infinity();
    for (double v : z) peak = std::max(peak, v);
    if (!std::isfinite(peak)) throw std::runtime_error("no feasible action");
    std::vector<double> p(z.size());
    double total = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        p[i] = std::isinf(z[i]) ? 0.0 : std::exp(z[i] - peak);
        total += p[i];
    }
    for (double& v : p) v /= total;
    return p;
}

}  // namespace

std::vector<double> fuse(std::span<const Logits> per_view) { return softmax(sum_logits(per_view)); }

Decision select(const ScoreContext& ctx, const Policy& policy, std::span<const std::size_t> views,
                std::mt19937_64* sampler) {
    if (ctx.projected == nullptr) throw std::invalid_argument("score context without coordinates");
    // Each view sits next to its x-reflection (v, v+4) so that, under the
    // pairwise reduction, purely positional terms cancel without rounding.
    static constexpr std::array<std::size_t, kViewCount> kAll{0, 4, 1, 5, 2, 6, 3, 7};
    if (views.empty()) views = kAll;

    std::vector<Logits> per_view;
    per_view.reserve(views.size());
    ScoreContext view_ctx = ctx;
    for (std::size_t v : views) {
        const CoordMatrix transformed = view(*ctx.projected, v);
        view_ctx.projected = &transformed;
        per_view.push_back(policy.score(view_ctx));
    }
    Decision d;
    d.fused_logits = sum_logits(per_view);
    if (sampler != nullptr) {
        const std::vector<double> p = softmax(d.fused_logits);
        std::discrete_distribution<std::size_t> dist(p.begin(), p.end());
        d.action = dist(*sampler);
    } else {
        d.action = select_argmax(d.fused_logits);
    }
    return d;
}

}  // namespace routeproj::mvdf
