#pragma once

// Coordinate projections applied to a per-step subgraph before scoring.
//
// Every projection takes the stacked subgraph matrix [anchor | k candidates |
// current] and returns a matrix with the same number of rows. TSP projections
// read their statistics from rows 1..k+1 (all but the anchor) and transform
// every row; CVRP projections use the depot (row 0) as reference origin.
// Demands and capacities are never touched.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "routeproj/geometry.hpp"

namespace routeproj {

using Projection = std::function<CoordMatrix(const CoordMatrix&)>;

/// Depot / customer / last-node split of a CVRP subgraph.
struct CvrpBlocks {
    CoordMatrix depot;      // 1 row
    CoordMatrix customers;  // k rows
    CoordMatrix last;       // 1 row

    CoordMatrix join() const;
    /// Splits a stacked matrix back into blocks of sizes 1, rows-2, 1.
    static CvrpBlocks split(const CoordMatrix& stacked);
};

namespace projection {

// Direction guard used by cvrp10k and its printed variant.
inline constexpr double kCvrp10kEps = 1e-6;
inline constexpr double kCvrp10kVerbatimEps = 1e6;

CoordMatrix identity(const CoordMatrix& in);

/// Min-shift, divide by the largest axis range, clip to the unit square. When
/// the windowed range is zero the window minimum is added back before clipping.
CoordMatrix seed_tsp(const CoordMatrix& in);

/// Reflect about the windowed maximum M, divide by the range, add M, clip.
CoordMatrix tsp1k(const CoordMatrix& in);

/// Min-shift, tanh, divide by the pre-tanh range, clip.
CoordMatrix tsp5k(const CoordMatrix& in);

/// Centre on the midpoint of the windowed extremes, divide by the range,
/// shift by (0.5, 0.5), clip.
CoordMatrix tsp10k(const CoordMatrix& in);

/// Depot-relative offsets rescaled so the farthest node sits at unit radius.
CoordMatrix cvrp1k(const CoordMatrix& in);
/// Depot-relative offsets divided by the square root of the largest offset norm.
CoordMatrix cvrp5k(const CoordMatrix& in);
/// Depot-relative offsets with radius mapped through expm1 and normalised.
CoordMatrix cvrp10k(const CoordMatrix& in);
/// cvrp10k with the direction denominator |v| + 1e6 exactly as printed.
CoordMatrix cvrp10k_verbatim(const CoordMatrix& in);

inline CvrpBlocks cvrp1k(const CvrpBlocks& in) { return CvrpBlocks::split(cvrp1k(in.join())); }
inline CvrpBlocks cvrp5k(const CvrpBlocks& in) { return CvrpBlocks::split(cvrp5k(in.join())); }
inline CvrpBlocks cvrp10k(const CvrpBlocks& in) { return CvrpBlocks::split(cvrp10k(in.join())); }

}  // namespace projection

/// Name -> projection lookup. Starts with the built-in strategies; DSL
/// programs can be added at runtime.
class StrategyRegistry {
public:
    StrategyRegistry();

    /// Throws std::invalid_argument listing the known names when `name` is unknown.
    const Projection& lookup(const std::string& name) const;
    bool contains(const std::string& name) const { return table_.count(name) != 0; }

    /// Adds or replaces a strategy. Built-in names cannot be replaced.
    void add(const std::string& name, Projection fn);

    std::vector<std::string> names() const;

    static const std::vector<std::string>& builtin_names();

private:
    std::map<std::string, Projection> table_;
};

}  // namespace routeproj
