#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "routeproj/instance.hpp"

namespace routeproj {

enum class Distribution { uniform, clustered, explosion, implosion };

std::string_view distribution_name(Distribution d) noexcept;
Distribution parse_distribution(std::string_view text);

/// Generator constants. All points (including a CVRP depot) are drawn from the
/// selected distribution and end up inside [0,1]^2.
struct DistributionParams {
    // clustered: a uniform number of centres in [clusters_min, clusters_max],
    // placed uniformly in [centre_lo, centre_hi]^2, Gaussian spread.
    int clusters_min = 3;
    int clusters_max = 8;
    double centre_lo = 0.2;
    double centre_hi = 0.8;
    double cluster_sigma = 0.05;
    // explosion / implosion: a disc of radius disc_radius centred uniformly in
    // [disc_radius, 1 - disc_radius]^2. Explosion pushes interior points onto
    // the circle plus an exponential offset with mean explosion_offset * R;
    // implosion contracts them towards the centre by implosion_factor.
    double disc_radius = 0.3;
    double explosion_offset = 0.1;
    double implosion_factor = 0.3;
    // CVRP demands, uniform integers.
    int demand_min = 1;
    int demand_max = 9;
};

/// 200 for up to 1000 customers, 300 above.
int default_capacity(std::size_t customers) noexcept;

/// TSP: n nodes. CVRP: a depot plus n customers. `capacity` <= 0 selects
/// default_capacity(n). For explosion/implosion the disc centre is stored in
/// `disc_centre` when given.
Instance generate(Distribution dist, std::size_t n, ProblemKind kind, std::uint64_t seed,
                  const DistributionParams& params = {}, int capacity = 0, Point* disc_centre = nullptr);

inline Instance gen_uniform(std::size_t n, ProblemKind kind, std::uint64_t seed, int capacity = 0) {
    return generate(Distribution::uniform, n, kind, seed, {}, capacity);
}

/// TSPLIB / CVRPLIB subset: NAME, COMMENT, TYPE (TSP|CVRP), DIMENSION,
/// EDGE_WEIGHT_TYPE (EUC_2D only), CAPACITY, NODE_COORD_SECTION,
/// DEMAND_SECTION, DEPOT_SECTION (depot must be node 1). Throws
/// std::runtime_error with the offending line number on malformed input.
Instance read_tsplib(const std::string& path);
Instance parse_tsplib(std::string_view text);
void write_tsplib(const Instance& instance, const std::string& path);
std::string format_tsplib(const Instance& instance);

/// Line-oriented solution file:
///   KIND TSP|CVRP
///   OBJECTIVE <value>
///   FEASIBLE 0|1
///   TOUR <ids...>          (TSP)
///   ROUTE <ids...>         (CVRP, one line per route, customers only)
void write_solution(const Solution& solution, const std::string& path);
std::string format_solution(const Solution& solution);
/// Recomputes the objective against `instance`; a stored value that differs
/// by more than 1e-6 raises std::runtime_error("corrupt solution file").
Solution read_solution(const std::string& path, const Instance& instance);
Solution parse_solution(std::string_view text, const Instance& instance);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

}  // namespace routeproj
