#pragma once

// Node-scoring policies standing in for a trained construction model. A policy
// maps a projected subgraph [anchor | k candidates | current] to one logit per
// candidate, plus a trailing depot slot for CVRP.

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "routeproj/geometry.hpp"

namespace routeproj {

using Logits = std::vector<double>;

struct ScoreContext {
    const CoordMatrix* projected = nullptr;
    SubgraphLayout layout;
    bool cvrp = false;
    // CVRP only: remaining capacity / capacity, and demand / capacity for each
    // candidate (same order as the candidate rows).
    double remaining_capacity_fraction = 1.0;
    std::span<const double> candidate_demand_fractions;
    // CVRP only: false while standing at the depot, which masks the depot slot.
    bool depot_allowed = true;

    std::size_t logit_count() const noexcept { return layout.k + (cvrp ? 1 : 0); }
    std::size_t depot_slot() const noexcept { return layout.k; }
    bool candidate_feasible(std::size_t j) const noexcept {
        return !cvrp || candidate_demand_fractions.empty() ||
               !(candidate_demand_fractions[j] > remaining_capacity_fraction);
    }
};

class Policy {
public:
    virtual ~Policy() = default;
    virtual std::string name() const = 0;
    virtual Logits score(const ScoreContext& ctx) const = 0;
};

/// logit_j = w1 exp(-d(last, c_j)/sigma1) + w2 exp(-d(c_j, anchor)/sigma2) + w3 x_j + w4 y_j,
/// depot slot w5 (1 - remaining fraction). Exponential terms saturate once
/// distances greatly exceed sigma, so decisions degrade on unnormalised input.
struct ScaleSensitiveParams {
    double w1 = 4.0;
    double w2 = -1.0;
    double w3 = 0.05;
    double w4 = 0.05;
    double sigma1 = 0.1;
    double sigma2 = 0.5;
    double w5 = 2.0;
};

class ScaleSensitivePolicy final : public Policy {
public:
    explicit ScaleSensitivePolicy(ScaleSensitiveParams params = {}) : params_(params) {}
    std::string name() const override { return "scale-sensitive"; }
    Logits score(const ScoreContext& ctx) const override;
    const ScaleSensitiveParams& params() const noexcept { return params_; }

private:
    ScaleSensitiveParams params_;
};

/// logit_j = -d(last, c_j); depot slot -d(last, depot). Invariant under every
/// isometry of the plane.
class IsometryInvariantPolicy final : public Policy {
public:
    std::string name() const override { return "isometry-invariant"; }
    Logits score(const ScoreContext& ctx) const override;
};

/// logit_j = projected x of candidate j (depot slot: x of the depot row). A
/// purely positional feature, useful for exercising decision fusion.
class CoordinateFeaturePolicy final : public Policy {
public:
    std::string name() const override { return "coordinate-x"; }
    Logits score(const ScoreContext& ctx) const override;
};

/// Index of the largest logit, lowest index on ties. Throws
/// std::runtime_error("no feasible action") when no entry is finite.
std::size_t select_argmax(std::span<const double> logits);

/// "scale-sensitive", "isometry-invariant" or "coordinate-x"; throws
/// std::invalid_argument otherwise.
std::unique_ptr<Policy> make_policy(const std::string& name, const ScaleSensitiveParams& params = {});

const std::vector<std::string>& policy_names();

}  // namespace routeproj
