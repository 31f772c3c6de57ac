#pragma once

// Exact and reference solvers used to ground optimality gaps at small scale.

#include <cstdint>

#include "routeproj/instance.hpp"

namespace routeproj::oracle {

inline constexpr std::size_t kHeldKarpMaxNodes = 18;
inline constexpr std::size_t kBruteForceMaxCustomers = 8;

/// Optimal TSP tour by bitmask dynamic programming, starting at node 0.
/// Throws std::invalid_argument("exact solver size limit") above 18 nodes.
Solution held_karp(const Instance& instance);

/// Optimal CVRP solution over every capacity-feasible partition into routes.
/// Throws std::invalid_argument("exact solver size limit") above 8 customers
/// and std::runtime_error("infeasible instance") if a demand exceeds capacity.
Solution brute_force_cvrp(const Instance& instance);

struct TwoOptOptions {
    std::size_t max_passes = 1000;
    // 0 scans every edge pair; otherwise only moves that connect a node to one
    // of its `neighbors` nearest nodes are tried.
    std::size_t neighbors = 0;
};

/// First-improvement 2-opt on a TSP tour (fixed scan order).
Solution two_opt(const Instance& instance, const Solution& start, TwoOptOptions options = {});

/// Random insertion order, each node placed at its cheapest position.
Solution random_insertion(const Instance& instance, std::uint64_t seed);

/// Greedy nearest unvisited node from `start` (TSP). For CVRP the greedy
/// returns to the depot whenever the nearest customer that fits is none.
Solution nearest_neighbor(const Instance& instance, NodeId start = 0);

/// Reference solution used for large-scale gaps: random insertion + 2-opt for
/// TSP (neighbour-list 2-opt above 2000 nodes, nearest-neighbour start above
/// 20000), nearest neighbour + per-route 2-opt for CVRP. Exact solvers are used when the instance is small enough.
Solution reference(const Instance& instance, std::uint64_t seed = 0);
/// True when reference() returns a provably optimal solution.
bool reference_is_exact(const Instance& instance);

/// (obj - ref) / ref; throws std::invalid_argument when ref <= 0.
double gap(double obj, double ref);

}  // namespace routeproj::oracle
