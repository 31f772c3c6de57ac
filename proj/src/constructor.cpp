#include "routeproj/constructor.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <stdexcept>

#include "routeproj/knn_index.hpp"
#include "routeproj/mvdf.hpp"

namespace routeproj {

namespace {

constexpr std::array<std::size_t, 1> kSingleView{0};

void check_config(const SolverConfig& cfg) {
    if (cfg.policy == nullptr) throw std::invalid_argument("solver config without policy");
    if (!cfg.strategy) throw std::invalid_argument("solver config without strategy");
    if (cfg.k < 1) throw std::invalid_argument("k must be >= 1");
    for (std::size_t v : cfg.views) {
        if (v >= mvdf::kViewCount) throw std::invalid_argument("view index must be in 0..7");
    }
}

// Projects the stacked subgraph and returns the chosen slot.
std::size_t choose(const CoordMatrix& subgraph, ScoreContext ctx, const SolverConfig& cfg, std::mt19937_64& rng) {
    const CoordMatrix projected = cfg.strategy(subgraph);
    if (projected.size() != subgraph.size()) throw std::runtime_error("projection changed the subgraph row count");
    ctx.projected = &projected;
    std::mt19937_64* sampler = cfg.sample ? &rng : nullptr;
    if (cfg.mvdf) return mvdf::select(ctx, *cfg.policy, cfg.views, sampler).action;
    if (sampler != nullptr) return mvdf::select(ctx, *cfg.policy, kSingleView, sampler).action;
    return select_argmax(cfg.policy->score(ctx));
}

// [anchor | candidates | current]
CoordMatrix stack(Point anchor, const KnnIndex& index, std::span<const KnnIndex::NodeId> cand, Point current) {
    CoordMatrix m;
    m.reserve(cand.size() + 2);
    m.push_back(anchor);
    for (auto id : cand) m.push_back(index.point(id));
    m.push_back(current);
    return m;
}

std::vector<NodeId> construct_tsp(const Instance& inst, const SolverConfig& cfg, std::mt19937_64& rng) {
    const std::size_t n = inst.size();
    if (cfg.start_node >= n) throw std::invalid_argument("start node outside instance");
    std::vector<NodeId> tour{cfg.start_node};
    tour.reserve(n);
    if (n == 1) return tour;

    KnnIndex index(inst.coords);
    index.remove(cfg.start_node);
    // The anchor is the tour's first node; on the first step it coincides
    // with the current node.
    const Point first = inst.coords[cfg.start_node];
    NodeId current = cfg.start_node;
    while (index.alive_count() > 0) {
        const auto cand = index.knn_unvisited(inst.coords[current], cfg.k);
        const CoordMatrix sub = stack(first, index, cand, inst.coords[current]);
        ScoreContext ctx;
        ctx.layout = SubgraphLayout{cand.size()};
        const std::size_t action = choose(sub, ctx, cfg, rng);
        current = cand.at(action);
        tour.push_back(current);
        index.remove(current);
    }
    return tour;
}

CoordMatrix customer_coords(const Instance& inst) {
    CoordMatrix m(inst.size() - 1);
    for (std::size_t i = 1; i < inst.size(); ++i) m.set(i - 1, inst.coords[i]);
    return m;
}

std::vector<std::vector<NodeId>> construct_cvrp(const Instance& inst, const SolverConfig& cfg, std::mt19937_64& rng) {
    for (std::size_t i = 1; i < inst.size(); ++i) {
        if (inst.demands[i] > inst.capacity) throw std::runtime_error("infeasible instance");
    }
    const double cap = static_cast<double>(inst.capacity);
    KnnIndex index(customer_coords(inst));  // index id = node id - 1
    const Point depot = inst.coords[0];

    std::vector<std::vector<NodeId>> routes;
    std::vector<NodeId> route;
    int remaining = inst.capacity;
    NodeId current = 0;
    std::vector<double> fractions;
    while (index.alive_count() > 0) {
        const auto cand = index.knn_unvisited(inst.coords[current], cfg.k);
        const CoordMatrix sub = stack(depot, index, cand, inst.coords[current]);
        fractions.resize(cand.size());
        for (std::size_t j = 0; j < cand.size(); ++j) fractions[j] = inst.demands[cand[j] + 1] / cap;

        ScoreContext ctx;
        ctx.layout = SubgraphLayout{cand.size()};
        ctx.cvrp = true;
        ctx.remaining_capacity_fraction = remaining / cap;
        ctx.candidate_demand_fractions = fractions;
        ctx.depot_allowed = current != 0;
        bool any_feasible = false;
        for (std::size_t j = 0; j < cand.size(); ++j) any_feasible = any_feasible || ctx.candidate_feasible(j);

        // When nothing in the neighbourhood fits, returning is the only move.
        const std::size_t action = any_feasible ? choose(sub, ctx, cfg, rng) : ctx.depot_slot();
        if (action == ctx.depot_slot()) {
            if (current == 0) throw std::runtime_error("no feasible action");
            routes.push_back(std::move(route));
            route.clear();
            remaining = inst.capacity;
            current = 0;
            continue;
        }
        current = cand.at(action) + 1;
        route.push_back(current);
        remaining -= inst.demands[current];
        index.remove(cand[action]);
    }
    if (!route.empty()) routes.push_back(std::move(route));
    return routes;
}

}  // namespace

Solution construct(const Instance& inst, const SolverConfig& cfg) {
    check_config(cfg);
    validate_instance(inst);
    std::mt19937_64 rng(cfg.seed);
    Solution sol;
    sol.kind = inst.kind;
    if (inst.kind == ProblemKind::tsp) {
        sol.tour = construct_tsp(inst, cfg, rng);
    } else {
        sol.routes = construct_cvrp(inst, cfg, rng);
    }
    sol.objective = objective(inst, sol);
    sol.feasible = check_solution(inst, sol).empty();
    return sol;
}

// ---------------------------------------------------------------------------
// Random re-construction

namespace {

double path_length(const CoordMatrix& c, Point from, std::span<const NodeId> nodes, Point to) {
    double total = 0.0;
    Point prev = from;
    for (NodeId v : nodes) {
        total += euclid(prev, c[v]);
        prev = c[v];
    }
    return total + euclid(prev, to);
}

// Greedy rebuild of `nodes` as a path leaving `from`. For TSP the anchor row is
// the opposite endpoint; for CVRP it is the depot and returning is not allowed.
std::vector<NodeId> rebuild_path(const Instance& inst, std::span<const NodeId> nodes, Point from, Point anchor,
                                 const SolverConfig& cfg, std::mt19937_64& rng) {
    CoordMatrix pts(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) pts.set(i, inst.coords[nodes[i]]);
    KnnIndex index(pts);
    const bool cvrp = inst.kind == ProblemKind::cvrp;

    std::vector<NodeId> out;
    out.reserve(nodes.size());
    Point current = from;
    while (index.alive_count() > 0) {
        const auto cand = index.knn_unvisited(current, cfg.k);
        const CoordMatrix sub = stack(anchor, index, cand, current);
        ScoreContext ctx;
        ctx.layout = SubgraphLayout{cand.size()};
        ctx.cvrp = cvrp;
        ctx.depot_allowed = false;
        const std::size_t action = choose(sub, ctx, cfg, rng);
        const auto pick = cand.at(action);
        out.push_back(nodes[pick]);
        current = index.point(pick);
        index.remove(pick);
    }
    return out;
}

// Rebuilds the path between fixed endpoints a and b, starting from either end.
std::vector<NodeId> rebuild_between(const Instance& inst, std::span<const NodeId> nodes, Point a, Point b,
                                    const SolverConfig& cfg, std::mt19937_64& rng) {
    const bool cvrp = inst.kind == ProblemKind::cvrp;
    const bool reversed = std::bernoulli_distribution(0.5)(rng);
    const Point from = reversed ? b : a;
    const Point anchor = cvrp ? inst.coords[0] : (reversed ? a : b);
    std::vector<NodeId> path = rebuild_path(inst, nodes, from, anchor, cfg, rng);
    if (reversed) std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace

Solution rrc(const Instance& inst, const Solution& input, std::size_t iterations, const SolverConfig& cfg,
             std::uint64_t seed, RrcStats* stats) {
    if (stats != nullptr) *stats = RrcStats{};
    if (iterations == 0) return input;
    check_config(cfg);
    if (input.kind != inst.kind) throw std::invalid_argument("solution kind does not match instance kind");
    if (const std::string err = check_solution(inst, input); !err.empty()) {
        throw std::invalid_argument("rrc needs a feasible solution: " + err);
    }

    std::mt19937_64 rng(seed);
    Solution best = input;
    best.objective = objective(inst, best);
    best.feasible = true;
    const CoordMatrix& c = inst.coords;
    RrcStats local;

    if (inst.kind == ProblemKind::tsp) {
        const std::size_t n = best.tour.size();
        if (n < 6) return best;
        const std::size_t hi = std::min<std::size_t>(1000, n - 2);
        std::vector<NodeId> segment;
        for (std::size_t it = 0; it < iterations; ++it) {
            ++local.iterations;
            const std::size_t len = std::uniform_int_distribution<std::size_t>(4, hi)(rng);
            const std::size_t start = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
            segment.clear();
            for (std::size_t i = 0; i < len; ++i) segment.push_back(best.tour[(start + i) % n]);
            const Point a = c[best.tour[(start + n - 1) % n]];
            const Point b = c[best.tour[(start + len) % n]];
            const std::vector<NodeId> path = rebuild_between(inst, segment, a, b, cfg, rng);
            if (path_length(c, a, path, b) > path_length(c, a, segment, b)) continue;

            Solution trial = best;
            for (std::size_t i = 0; i < len; ++i) trial.tour[(start + i) % n] = path[i];
            trial.objective = objective(inst, trial);
            if (trial.objective > best.objective) continue;
            ++local.accepted;
            if (trial.objective < best.objective) ++local.improved;
            best = std::move(trial);
        }
    } else {
        if (best.routes.empty()) return best;
        const Point depot = c[0];
        for (std::size_t it = 0; it < iterations; ++it) {
            ++local.iterations;
            const std::size_t r = std::uniform_int_distribution<std::size_t>(0, best.routes.size() - 1)(rng);
            const auto& route = best.routes[r];
            const std::size_t m = route.size();
            if (m < 2) continue;
            const std::size_t lo = std::min<std::size_t>(4, m);
            const std::size_t hi = std::min<std::size_t>(1000, m);
            const std::size_t len = std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
            const std::size_t start = std::uniform_int_distribution<std::size_t>(0, m - len)(rng);
            const std::span<const NodeId> segment(route.data() + start, len);
            const Point a = start == 0 ? depot : c[route[start - 1]];
            const Point b = start + len == m ? depot : c[route[start + len]];
            const std::vector<NodeId> path = rebuild_between(inst, segment, a, b, cfg, rng);
            if (path_length(c, a, path, b) > path_length(c, a, segment, b)) continue;

            Solution trial = best;
            std::copy(path.begin(), path.end(), trial.routes[r].begin() + static_cast<std::ptrdiff_t>(start));
            trial.objective = objective(inst, trial);
            if (trial.objective > best.objective) continue;
            ++local.accepted;
            if (trial.objective < best.objective) ++local.improved;
            best = std::move(trial);
        }
    }
    if (stats != nullptr) *stats = local;
    return best;
}

}  // namespace routeproj
