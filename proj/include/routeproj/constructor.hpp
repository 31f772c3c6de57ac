#pragma once

// Greedy autoregressive construction: at every step the k nearest unvisited
// nodes around the current node form a local subgraph, the projection maps it
// to the policy's input space, and the policy (optionally fused over the eight
// square symmetries) picks the next node.

#include <cstdint>
#include <vector>

#include "routeproj/instance.hpp"
#include "routeproj/policy.hpp"
#include "routeproj/projections.hpp"

namespace routeproj {

struct SolverConfig {
    Projection strategy = projection::identity;
    const Policy* policy = nullptr;  // required
    std::size_t k = 100;
    bool mvdf = false;
    std::vector<std::size_t> views;  // MVDF view subset; empty = all eight
    NodeId start_node = 0;           // TSP only
    bool sample = false;             // draw from the fused distribution instead of argmax
    std::uint64_t seed = 0;
};

/// Builds a complete solution. Throws std::invalid_argument for a bad config
/// or instance and std::runtime_error("infeasible instance") when a CVRP
/// customer demand exceeds the capacity.
Solution construct(const Instance& instance, const SolverConfig& config);

struct RrcStats {
    std::size_t iterations = 0;
    std::size_t accepted = 0;
    std::size_t improved = 0;
};

/// Random re-construction. Each iteration cuts a random contiguous segment
/// (TSP: along the closed tour, between 4 and min(1000, n-2) nodes; CVRP:
/// inside one route, between min(4, m) and min(1000, m) customers), rebuilds it
/// greedily between its two fixed neighbours in a random direction and keeps
/// the result iff the recomputed objective does not increase.
Solution rrc(const Instance& instance, const Solution& solution, std::size_t iterations,
             const SolverConfig& config, std::uint64_t seed, RrcStats* stats = nullptr);

}  // namespace routeproj
