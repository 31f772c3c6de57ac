#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "routeproj/geometry.hpp"

namespace routeproj {

enum class ProblemKind { tsp, cvrp };

std::string_view kind_name(ProblemKind kind) noexcept;  // "TSP" / "CVRP"
ProblemKind parse_kind(std::string_view text);          // case-insensitive

using NodeId = std::uint32_t;

/// A TSP or CVRP instance. For CVRP node 0 is the depot (demand 0) and every
/// other node is a customer.
struct Instance {
    ProblemKind kind = ProblemKind::tsp;
    std::string name;
    std::string distribution = "file";
    CoordMatrix coords;
    std::vector<int> demands;  // CVRP only, one per node
    int capacity = 0;          // CVRP only

    std::size_t size() const noexcept { return coords.size(); }
    std::size_t customer_count() const noexcept {
        return kind == ProblemKind::cvrp && !coords.empty() ? coords.size() - 1 : coords.size();
    }

    friend bool operator==(const Instance&, const Instance&) = default;
};

/// Throws std::invalid_argument describing the first violated invariant:
/// nonempty, finite coordinates, TSP without demands, CVRP demands >= 1 for
/// customers, depot demand 0, capacity >= 1. Demands above capacity are NOT
/// rejected here (construction rejects them).
void validate_instance(const Instance& instance);

/// Visit sequence. TSP: `tour` is a permutation of all nodes (closed
/// implicitly). CVRP: `routes` lists the customers of each route, every route
/// starting and ending at the depot implicitly.
struct Solution {
    ProblemKind kind = ProblemKind::tsp;
    std::vector<NodeId> tour;
    std::vector<std::vector<NodeId>> routes;
    double objective = 0.0;
    bool feasible = false;

    friend bool operator==(const Solution&, const Solution&) = default;
};

double tour_length(const CoordMatrix& coords, std::span<const NodeId> tour);
double route_length(const CoordMatrix& coords, std::span<const NodeId> customers);  // depot-closed
/// Total closed length of the solution's tour or routes. With `round_edges`
/// every edge is rounded to the nearest integer (TSPLIB EUC_2D convention).
double objective(const Instance& instance, const Solution& solution, bool round_edges = false);

/// Empty string when the solution satisfies every invariant for the instance,
/// otherwise a description of the first violation.
std::string check_solution(const Instance& instance, const Solution& solution);

}  // namespace routeproj
