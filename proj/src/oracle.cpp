#include "routeproj/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "routeproj/knn_index.hpp"

namespace routeproj::oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Moves must gain more than this to count, which keeps 2-opt from cycling on
// rounding noise.
constexpr double kMinGain = 1e-12;

Solution finish(const Instance& inst, Solution sol) {
    sol.kind = inst.kind;
    sol.objective = objective(inst, sol);
    sol.feasible = check_solution(inst, sol).empty();
    return sol;
}

void require_kind(const Instance& inst, ProblemKind kind, const char* who) {
    if (inst.kind != kind) throw std::invalid_argument(std::string(who) + " expects a " + std::string(kind_name(kind)) + " instance");
    validate_instance(inst);
}

// Shortest Hamiltonian path visiting `nodes` (as a cycle through `origin`) by
// Held-Karp. Returns the node order and the closed length.
std::pair<std::vector<NodeId>, double> held_karp_cycle(const CoordMatrix& c, NodeId origin,
                                                       const std::vector<NodeId>& nodes) {
    const std::size_t m = nodes.size();
    if (m == 0) return {{}, 0.0};
    const std::size_t full = std::size_t{1} << m;
    std::vector<double> dp(full * m, kInf);
    std::vector<std::uint8_t> parent(full * m, 0xff);
    for (std::size_t j = 0; j < m; ++j) dp[(std::size_t{1} << j) * m + j] = euclid(c[origin], c[nodes[j]]);
    for (std::size_t s = 1; s < full; ++s) {
        for (std::size_t j = 0; j < m; ++j) {
            const double base = dp[s * m + j];
            if (!(s >> j & 1U) || base == kInf) continue;
            for (std::size_t t = 0; t < m; ++t) {
                if (s >> t & 1U) continue;
                const std::size_t ns = s | (std::size_t{1} << t);
                const double cand = base + euclid(c[nodes[j]], c[nodes[t]]);
                if (cand < dp[ns * m + t]) {
                    dp[ns * m + t] = cand;
                    parent[ns * m + t] = static_cast<std::uint8_t>(j);
                }
            }
        }
    }
    double best = kInf;
    std::size_t last = 0;
    for (std::size_t j = 0; j < m; ++j) {
        const double total = dp[(full - 1) * m + j] + euclid(c[nodes[j]], c[origin]);
        if (total < best) {
            best = total;
            last = j;
        }
    }
    std::vector<NodeId> order;
    std::size_t s = full - 1;
    std::size_t j = last;
    while (true) {
        order.push_back(nodes[j]);
        const std::uint8_t p = parent[s * m + j];
        s &= ~(std::size_t{1} << j);
        if (p == 0xff) break;
        j = p;
    }
    std::reverse(order.begin(), order.end());
    return {order, best};
}

}  // namespace

Solution held_karp(const Instance& inst) {
    require_kind(inst, ProblemKind::tsp, "held_karp");
    const std::size_t n = inst.size();
    if (n > kHeldKarpMaxNodes) throw std::invalid_argument("exact solver size limit");
    std::vector<NodeId> rest(n - 1);
    std::iota(rest.begin(), rest.end(), NodeId{1});
    Solution sol;
    sol.tour.push_back(0);
    const auto [order, len] = held_karp_cycle(inst.coords, 0, rest);
    sol.tour.insert(sol.tour.end(), order.begin(), order.end());
    return finish(inst, std::move(sol));
}

Solution brute_force_cvrp(const Instance& inst) {
    require_kind(inst, ProblemKind::cvrp, "brute_force_cvrp");
    const std::size_t m = inst.customer_count();
    if (m > kBruteForceMaxCustomers) throw std::invalid_argument("exact solver size limit");
    for (std::size_t i = 1; i < inst.size(); ++i) {
        if (inst.demands[i] > inst.capacity) throw std::runtime_error("infeasible instance");
    }
    const std::size_t full = std::size_t{1} << m;

    // Best single route for every capacity-feasible customer subset.
    std::vector<double> route_cost(full, kInf);
    std::vector<std::vector<NodeId>> route_order(full);
    route_cost[0] = 0.0;
    for (std::size_t s = 1; s < full; ++s) {
        int load = 0;
        std::vector<NodeId> members;
        for (std::size_t j = 0; j < m; ++j) {
            if (s >> j & 1U) {
                members.push_back(static_cast<NodeId>(j + 1));
                load += inst.demands[j + 1];
            }
        }
        if (load > inst.capacity) continue;
        auto [order, len] = held_karp_cycle(inst.coords, 0, members);
        route_cost[s] = len;
        route_order[s] = std::move(order);
    }

    // Partition DP: the route holding the lowest remaining customer is chosen first.
    std::vector<double> best(full, kInf);
    std::vector<std::size_t> choice(full, 0);
    best[0] = 0.0;
    for (std::size_t s = 1; s < full; ++s) {
        const std::size_t low = s & (~s + 1);
        for (std::size_t t = s; t != 0; t = (t - 1) & s) {
            if (!(t & low) || route_cost[t] == kInf || best[s ^ t] == kInf) continue;
            const double cand = route_cost[t] + best[s ^ t];
            if (cand < best[s]) {
                best[s] = cand;
                choice[s] = t;
            }
        }
    }
    Solution sol;
    sol.kind = ProblemKind::cvrp;
    for (std::size_t s = full - 1; s != 0; s ^= choice[s]) sol.routes.push_back(route_order[choice[s]]);
    return finish(inst, std::move(sol));
}

// ---------------------------------------------------------------------------
// 2-opt

namespace {

// Reverses tour positions [i, j] (inclusive, i <= j) and refreshes positions.
void reverse_segment(std::vector<NodeId>& tour, std::vector<std::size_t>& pos, std::size_t i, std::size_t j) {
    std::reverse(tour.begin() + static_cast<std::ptrdiff_t>(i), tour.begin() + static_cast<std::ptrdiff_t>(j) + 1);
    for (std::size_t p = i; p <= j; ++p) pos[tour[p]] = p;
}

// Reverses the cyclic path between positions i+1 .. j, choosing the shorter
// side to flip (both give the same cycle).
void apply_move(std::vector<NodeId>& tour, std::vector<std::size_t>& pos, std::size_t i, std::size_t j) {
    const std::size_t n = tour.size();
    if (i > j) std::swap(i, j);
    const std::size_t inner = j - i;
    if (inner <= n - inner) {
        reverse_segment(tour, pos, i + 1, j);
        return;
    }
    // Flip the complement (j+1 .. i) around the wrap instead.
    std::size_t a = (j + 1) % n;
    std::size_t b = i;
    for (std::size_t steps = (n - inner) / 2; steps > 0; --steps) {
        std::swap(tour[a], tour[b]);
        pos[tour[a]] = a;
        pos[tour[b]] = b;
        a = (a + 1) % n;
        b = (b + n - 1) % n;
    }
}

void two_opt_full(const CoordMatrix& c, std::vector<NodeId>& tour, std::size_t max_passes) {
    const std::size_t n = tour.size();
    std::vector<std::size_t> pos(n);
    for (std::size_t p = 0; p < n; ++p) pos[tour[p]] = p;
    for (std::size_t pass = 0; pass < max_passes; ++pass) {
        bool improved = false;
        for (std::size_t i = 0; i + 2 < n; ++i) {
            for (std::size_t j = i + 2; j < n; ++j) {
                if (i == 0 && j == n - 1) continue;
                const Point a = c[tour[i]];
                const Point b = c[tour[i + 1]];
                const Point cc = c[tour[j]];
                const Point d = c[tour[(j + 1) % n]];
                const double delta = euclid(a, cc) + euclid(b, d) - euclid(a, b) - euclid(cc, d);
                if (delta < -kMinGain) {
                    reverse_segment(tour, pos, i + 1, j);
                    improved = true;
                }
            }
        }
        if (!improved) break;
    }
}

void two_opt_neighbors(const CoordMatrix& c, std::vector<NodeId>& tour, std::size_t max_passes, std::size_t k) {
    const std::size_t n = tour.size();
    KnnIndex index(c);
    std::vector<std::vector<NodeId>> near(n);
    for (NodeId v = 0; v < n; ++v) {
        const NodeId self[1] = {v};
        near[v] = index.knn_unvisited(c[v], k, self);
    }
    std::vector<std::size_t> pos(n);
    for (std::size_t p = 0; p < n; ++p) pos[tour[p]] = p;
    for (std::size_t pass = 0; pass < max_passes; ++pass) {
        bool improved = false;
        for (NodeId a = 0; a < n; ++a) {
            // Successor direction: edges (a, succ a) and (x, succ x) become (a, x), (succ a, succ x).
            for (NodeId x : near[a]) {
                const std::size_t i = pos[a];
                const std::size_t j = pos[x];
                const NodeId b = tour[(i + 1) % n];
                const NodeId d = tour[(j + 1) % n];
                if (x == b || d == a) continue;
                const double delta = euclid(c[a], c[x]) + euclid(c[b], c[d]) - euclid(c[a], c[b]) - euclid(c[x], c[d]);
                if (delta < -kMinGain) {
                    apply_move(tour, pos, i, j);
                    improved = true;
                    break;
                }
            }
        }
        if (!improved) break;
    }
}

}  // namespace

Solution two_opt(const Instance& inst, const Solution& start, TwoOptOptions options) {
    require_kind(inst, ProblemKind::tsp, "two_opt");
    if (const std::string err = check_solution(inst, start); !err.empty()) {
        throw std::invalid_argument("two_opt needs a valid tour: " + err);
    }
    Solution sol = start;
    if (sol.tour.size() >= 4) {
        if (options.neighbors == 0) {
            two_opt_full(inst.coords, sol.tour, options.max_passes);
        } else {
            two_opt_neighbors(inst.coords, sol.tour, options.max_passes, options.neighbors);
        }
    }
    return finish(inst, std::move(sol));
}

Solution random_insertion(const Instance& inst, std::uint64_t seed) {
    require_kind(inst, ProblemKind::tsp, "random_insertion");
    const std::size_t n = inst.size();
    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), NodeId{0});
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);

    const CoordMatrix& c = inst.coords;
    Solution sol;
    sol.tour.reserve(n);
    sol.tour.push_back(order[0]);
    for (std::size_t t = 1; t < n; ++t) {
        const NodeId v = order[t];
        const std::size_t m = sol.tour.size();
        std::size_t best_pos = m;
        double best_cost = kInf;
        for (std::size_t p = 0; p < m; ++p) {
            const Point a = c[sol.tour[p]];
            const Point b = c[sol.tour[(p + 1) % m]];
            const double cost = euclid(a, c[v]) + euclid(c[v], b) - euclid(a, b);
            if (cost < best_cost) {
                best_cost = cost;
                best_pos = p + 1;
            }
        }
        sol.tour.insert(sol.tour.begin() + static_cast<std::ptrdiff_t>(best_pos), v);
    }
    // Rotate so the tour starts at node 0, matching the constructor's output.
    std::rotate(sol.tour.begin(), std::find(sol.tour.begin(), sol.tour.end(), NodeId{0}), sol.tour.end());
    return finish(inst, std::move(sol));
}

Solution nearest_neighbor(const Instance& inst, NodeId start) {
    validate_instance(inst);
    const CoordMatrix& c = inst.coords;
    Solution sol;
    if (inst.kind == ProblemKind::tsp) {
        if (start >= inst.size()) throw std::invalid_argument("start node outside instance");
        KnnIndex index(c);
        index.remove(start);
        sol.tour.push_back(start);
        NodeId cur = start;
        while (index.alive_count() > 0) {
            cur = index.knn_unvisited(c[cur], 1).front();
            index.remove(cur);
            sol.tour.push_back(cur);
        }
        return finish(inst, std::move(sol));
    }

    for (std::size_t i = 1; i < inst.size(); ++i) {
        if (inst.demands[i] > inst.capacity) throw std::runtime_error("infeasible instance");
    }
    // Unvisited customers are scanned linearly; capacity makes a k-d tree
    // query with a demand filter no cheaper in the worst case.
    std::vector<NodeId> open(inst.size() - 1);
    std::iota(open.begin(), open.end(), NodeId{1});
    std::vector<NodeId> route;
    int remaining = inst.capacity;
    NodeId cur = 0;
    while (!open.empty()) {
        std::size_t best = open.size();
        double best_d = kInf;
        for (std::size_t i = 0; i < open.size(); ++i) {
            if (inst.demands[open[i]] > remaining) continue;
            const double d = sq_dist(c[cur], c[open[i]]);
            if (d < best_d) {
                best_d = d;
                best = i;
            }
        }
        if (best == open.size()) {
            sol.routes.push_back(std::move(route));
            route.clear();
            remaining = inst.capacity;
            cur = 0;
            continue;
        }
        cur = open[best];
        open[best] = open.back();
        open.pop_back();
        route.push_back(cur);
        remaining -= inst.demands[cur];
    }
    if (!route.empty()) sol.routes.push_back(std::move(route));
    return finish(inst, std::move(sol));
}

bool reference_is_exact(const Instance& inst) {
    return inst.kind == ProblemKind::tsp ? inst.size() <= kHeldKarpMaxNodes
                                         : inst.customer_count() <= kBruteForceMaxCustomers;
}

Solution reference(const Instance& inst, std::uint64_t seed) {
    if (reference_is_exact(inst)) return inst.kind == ProblemKind::tsp ? held_karp(inst) : brute_force_cvrp(inst);
    if (inst.kind == ProblemKind::tsp) {
        TwoOptOptions opt;
        if (inst.size() > 2000) opt.neighbors = 10;
        // Random insertion is quadratic; start very large tours from the greedy tour.
        const Solution start = inst.size() > 20000 ? nearest_neighbor(inst) : random_insertion(inst, seed);
        return two_opt(inst, start, opt);
    }
    Solution sol = nearest_neighbor(inst);
    for (auto& route : sol.routes) {
        if (route.size() < 3) continue;
        Instance sub;
        sub.kind = ProblemKind::tsp;
        sub.coords.push_back(inst.coords[0]);
        for (NodeId v : route) sub.coords.push_back(inst.coords[v]);
        Solution tour;
        tour.tour.resize(sub.size());
        std::iota(tour.tour.begin(), tour.tour.end(), NodeId{0});
        TwoOptOptions opt;
        if (sub.size() > 2000) opt.neighbors = 10;
        const Solution improved = two_opt(sub, tour, opt);
        auto depot_at = std::find(improved.tour.begin(), improved.tour.end(), NodeId{0});
        std::vector<NodeId> rotated(depot_at + 1, improved.tour.end());
        rotated.insert(rotated.end(), improved.tour.begin(), depot_at);
        const std::vector<NodeId> before = route;
        for (std::size_t i = 0; i < rotated.size(); ++i) route[i] = before[rotated[i] - 1];
    }
    return finish(inst, std::move(sol));
}

double gap(double obj, double ref) {
    if (!(ref > 0.0)) throw std::invalid_argument("reference objective must be positive");
    return (obj - ref) / ref;
}

}  // namespace routeproj::oracle
