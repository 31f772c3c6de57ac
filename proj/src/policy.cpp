#include "routeproj/policy.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "routeproj/kernels.hpp"

namespace routeproj {

namespace {

constexpr double kMasked = -std::numeric_limits<double>::infinity();

const CoordMatrix& checked(const ScoreContext& ctx) {
    if (ctx.projected == nullptr) throw std::invalid_argument("score context without coordinates");
    if (ctx.layout.k == 0) throw std::invalid_argument("score context without candidates");
    if (ctx.projected->size() != ctx.layout.rows()) {
        throw std::invalid_argument("projected subgraph does not match its layout");
    }
    if (ctx.cvrp && !ctx.candidate_demand_fractions.empty() &&
        ctx.candidate_demand_fractions.size() != ctx.layout.k) {
        throw std::invalid_argument("demand fractions do not match candidate count");
    }
    return *ctx.projected;
}

// Distances from `from` to every candidate row.
std::vector<double> candidate_distances(const CoordMatrix& m, const SubgraphLayout& layout, Point from) {
    std::vector<double> d(layout.k);
    kernels::distances(from, m.xs().subspan(1, layout.k), m.ys().subspan(1, layout.k), d);
    return d;
}

void apply_masks(const ScoreContext& ctx, Logits& logits) {
    if (!ctx.cvrp) return;
    for (std::size_t j = 0; j < ctx.layout.k; ++j) {
        if (!ctx.candidate_feasible(j)) logits[j] = kMasked;
    }
    if (!ctx.depot_allowed) logits[ctx.depot_slot()] = kMasked;
}

}  // namespace

Logits ScaleSensitivePolicy::score(const ScoreContext& ctx) const {
    const CoordMatrix& m = checked(ctx);
    const auto& p = params_;
    const Point last = m[ctx.layout.last_index()];
    const Point anchor = m[0];
    const std::vector<double> to_last = candidate_distances(m, ctx.layout, last);
    const std::vector<double> to_anchor = candidate_distances(m, ctx.layout, anchor);

    Logits logits(ctx.logit_count());
    for (std::size_t j = 0; j < ctx.layout.k; ++j) {
        const Point c = m[j + 1];
        logits[j] = p.w1 * std::exp(-to_last[j] / p.sigma1) + p.w2 * std::exp(-to_anchor[j] / p.sigma2) +
                    p.w3 * c.x + p.w4 * c.y;
    }
    if (ctx.cvrp) logits[ctx.depot_slot()] = p.w5 * (1.0 - ctx.remaining_capacity_fraction);
    apply_masks(ctx, logits);
    return logits;
}

Logits IsometryInvariantPolicy::score(const ScoreContext& ctx) const {
    const CoordMatrix& m = checked(ctx);
    const Point last = m[ctx.layout.last_index()];
    const std::vector<double> d = candidate_distances(m, ctx.layout, last);
    Logits logits(ctx.logit_count());
    for (std::size_t j = 0; j < ctx.layout.k; ++j) logits[j] = -d[j];
    if (ctx.cvrp) logits[ctx.depot_slot()] = -euclid(last, m[0]);
    apply_masks(ctx, logits);
    return logits;
}

Logits CoordinateFeaturePolicy::score(const ScoreContext& ctx) const {
    const CoordMatrix& m = checked(ctx);
    Logits logits(ctx.logit_count());
    for (std::size_t j = 0; j < ctx.layout.k; ++j) logits[j] = m[j + 1].x;
    if (ctx.cvrp) logits[ctx.depot_slot()] = m[0].x;
    apply_masks(ctx, logits);
    return logits;
}

std::size_t select_argmax(std::span<const double> logits) {
    std::size_t best = logits.size();
    for (std::size_t i = 0; i < logits.size(); ++i) {
        if (logits[i] == kMasked || std::isnan(logits[i])) continue;
        if (best == logits.size() || logits[i] > logits[best]) best = i;
    }
    if (best == logits.size()) throw std::runtime_error("no feasible action");
    return best;
}

const std::vector<std::string>& policy_names() {
    static const std::vector<std::string> names = {"scale-sensitive", "isometry-invariant", "coordinate-x"};
    return names;
}

std::unique_ptr<Policy> make_policy(const std::string& name, const ScaleSensitiveParams& params) {
    if (name == "scale-sensitive") return std::make_unique<ScaleSensitivePolicy>(params);
    if (name == "isometry-invariant") return std::make_unique<IsometryInvariantPolicy>();
    if (name == "coordinate-x") return std::make_unique<CoordinateFeaturePolicy>();
    std::string msg = "unknown policy '" + name + "'; known:";
    for (const auto& n : policy_names()) msg += " " + n;
    throw std::invalid_argument(msg);
}

}  // namespace routeproj
