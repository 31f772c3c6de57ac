#pragma once

// Multi-view decision fusion: score the eight symmetries of the unit square of
// a projected subgraph with the same policy, add the logits, and pick the
// candidate with the highest fused score (p = softmax of the summed logits).

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "routeproj/geometry.hpp"
#include "routeproj/policy.hpp"

namespace routeproj::mvdf {

inline constexpr std::size_t kViewCount = 8;

/// Applies view m (0..7) to a point. Order:
/// (x,y) (y,x) (x,1-y) (y,1-x) (1-x,y) (1-y,x) (1-x,1-y) (1-y,1-x).
Point apply_view(std::size_t view, Point p);

CoordMatrix view(const CoordMatrix& coords, std::size_t view_index);

/// All eight views, view 0 being the identity.
std::vector<CoordMatrix> augment(const CoordMatrix& coords);

/// Sum of per-view logits by pairwise reduction in list order. Throws
/// std::invalid_argument for an empty list or mismatched lengths.
Logits sum_logits(std::span<const Logits> per_view);

/// softmax(sum of per-view logits); masked (-inf) entries get probability 0.
/// Throws std::runtime_error("no feasible action") when everything is masked.
std::vector<double> fuse(std::span<const Logits> per_view);

struct Decision {
    std::size_t action = 0;
    Logits fused_logits;
};

/// Scores every selected view of `ctx.projected` with `policy` and returns the
/// argmax of the fused logits (lowest index on ties). `views` defaults to all
/// eight. With `sampler` set, the action is drawn from the fused distribution
/// instead (diagnostic mode).
Decision select(const ScoreContext& ctx, const Policy& policy, std::span<const std::size_t> views = {},
                std::mt19937_64* sampler = nullptr);

}  // namespace routeproj::mvdf
