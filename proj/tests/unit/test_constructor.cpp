#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "routeproj/constructor.hpp"
#include "routeproj/instance_io.hpp"
#include "routeproj/oracle.hpp"

using namespace routeproj;

namespace {

const IsometryInvariantPolicy kNearest;
const StrategyRegistry kStrategies;
const ScaleSensitivePolicy kSurrogate;

SolverConfig config(const Policy& policy, Projection strategy = projection::identity, std::size_t k = 100) {
    SolverConfig cfg;
    cfg.policy = &policy;
    cfg.strategy = std::move(strategy);
    cfg.k = k;
    return cfg;
}

double edge_sum(const CoordMatrix& c, const std::vector<NodeId>& cycle) {
    double total = 0.0;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        const Point a = c[cycle[i]];
        const Point b = c[cycle[(i + 1) % cycle.size()]];
        total += std::hypot(a.x - b.x, a.y - b.y);
    }
    return total;
}

// Independent validity and length check, not relying on the library helpers.
double verify(const Instance& inst, const Solution& s) {
    if (inst.kind == ProblemKind::tsp) {
        std::vector<NodeId> sorted = s.tour;
        std::sort(sorted.begin(), sorted.end());
        std::vector<NodeId> all(inst.size());
        std::iota(all.begin(), all.end(), 0);
        CHECK(sorted == all);
        return edge_sum(inst.coords, s.tour);
    }
    std::vector<int> seen(inst.size(), 0);
    double total = 0.0;
    for (const auto& route : s.routes) {
        CHECK_FALSE(route.empty());
        int load = 0;
        std::vector<NodeId> cycle{0};
        for (NodeId v : route) {
            REQUIRE(v >= 1);
            REQUIRE(v < inst.size());
            ++seen[v];
            load += inst.demands[v];
            cycle.push_back(v);
        }
        CHECK(load <= inst.capacity);
        total += edge_sum(inst.coords, cycle);
    }
    for (std::size_t v = 1; v < inst.size(); ++v) CHECK(seen[v] == 1);
    return total;
}

// Records every subgraph the constructor hands to the policy and picks the
// nearest candidate.
class SpyPolicy final : public Policy {
public:
    std::string name() const override { return "spy"; }
    Logits score(const ScoreContext& ctx) const override {
        seen.push_back(*ctx.projected);
        return kNearest.score(ctx);
    }
    mutable std::vector<CoordMatrix> seen;
};

}  // namespace

TEST_CASE("unit square from every corner") {
    Instance sq;
    sq.coords = CoordMatrix{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    for (NodeId start = 0; start < 4; ++start) {
        SolverConfig cfg = config(kNearest, projection::identity, 3);
        cfg.start_node = start;
        const Solution s = construct(sq, cfg);
        CHECK(s.objective == 4.0);
        CHECK(s.tour.front() == start);
        CHECK(s.feasible);
    }
}

TEST_CASE("single node") {
    Instance one;
    one.coords = CoordMatrix{{0.3, 0.3}};
    const Solution s = construct(one, config(kNearest));
    CHECK(s.tour == std::vector<NodeId>{0});
    CHECK(s.objective == 0.0);

    Instance cv;
    cv.kind = ProblemKind::cvrp;
    cv.coords = CoordMatrix{{0, 0}, {3, 4}};
    cv.demands = {0, 5};
    cv.capacity = 5;
    const Solution r = construct(cv, config(kNearest));
    CHECK(r.routes == std::vector<std::vector<NodeId>>{{1}});
    CHECK(r.objective == 10.0);
}

TEST_CASE("small instances: valid permutation and recomputed length") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Instance inst = gen_uniform(10, ProblemKind::tsp, seed);
        const Solution s = construct(inst, config(kSurrogate, projection::seed_tsp));
        CHECK(std::abs(verify(inst, s) - s.objective) <= 1e-9);
        CHECK(check_solution(inst, s).empty());
    }
}

TEST_CASE("validity across classes and scales") {
    const StrategyRegistry reg;
    for (std::size_t n : {100u, 1000u}) {
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const Distribution dist = static_cast<Distribution>(seed % 4);
            const Instance tsp = generate(dist, n, ProblemKind::tsp, seed);
            const char* tsp_names[] = {"identity", "seed", "tsp1k", "tsp5k", "tsp10k"};
            const Solution a = construct(tsp, config(kSurrogate, reg.lookup(tsp_names[seed % 5])));
            CHECK(std::abs(verify(tsp, a) - a.objective) <= 1e-9 * a.objective);

            const Instance cvrp = generate(dist, n, ProblemKind::cvrp, seed);
            const char* cvrp_names[] = {"identity", "cvrp1k", "cvrp5k", "cvrp10k"};
            const Solution b = construct(cvrp, config(kSurrogate, reg.lookup(cvrp_names[seed % 4])));
            CHECK(b.feasible);
            CHECK(std::abs(verify(cvrp, b) - b.objective) <= 1e-9 * b.objective);
        }
    }
}

TEST_CASE("infeasible cvrp instance") {
    Instance cv;
    cv.kind = ProblemKind::cvrp;
    cv.coords = CoordMatrix{{0, 0}, {1, 0}, {0, 1}};
    cv.demands = {0, 3, 11};
    cv.capacity = 10;
    CHECK_THROWS_WITH_AS(construct(cv, config(kNearest)), "infeasible instance", std::runtime_error);
}

TEST_CASE("tight capacity always falls back to the depot") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const Instance inst = gen_uniform(200, ProblemKind::cvrp, seed, 9 + static_cast<int>(seed % 5));
        for (const Policy* p : {static_cast<const Policy*>(&kNearest), static_cast<const Policy*>(&kSurrogate)}) {
            const Solution s = construct(inst, config(*p, projection::identity, 5));
            CHECK(s.feasible);
            verify(inst, s);
        }
    }
}

TEST_CASE("bad configuration") {
    const Instance inst = gen_uniform(5, ProblemKind::tsp, 1);
    SolverConfig cfg = config(kNearest);
    cfg.k = 0;
    CHECK_THROWS_AS(construct(inst, cfg), std::invalid_argument);
    cfg = config(kNearest);
    cfg.start_node = 5;
    CHECK_THROWS_AS(construct(inst, cfg), std::invalid_argument);
    cfg.policy = nullptr;
    cfg.start_node = 0;
    CHECK_THROWS_AS(construct(inst, cfg), std::invalid_argument);
}

TEST_CASE("determinism") {
    const Instance inst = gen_uniform(500, ProblemKind::cvrp, 3);
    SolverConfig cfg = config(kSurrogate, kStrategies.lookup("cvrp5k"), 50);
    cfg.mvdf = true;
    CHECK(construct(inst, cfg) == construct(inst, cfg));
    const Instance tsp = gen_uniform(500, ProblemKind::tsp, 3);
    cfg.strategy = projection::seed_tsp;
    CHECK(construct(tsp, cfg) == construct(tsp, cfg));
}

TEST_CASE("candidates are the k nearest unvisited nodes") {
    for (std::size_t k : {3u, 8u, 40u}) {
        const Instance inst = gen_uniform(30, ProblemKind::tsp, k);
        SpyPolicy spy;
        const Solution s = construct(inst, config(spy, projection::identity, k));
        std::set<NodeId> visited{s.tour[0]};
        std::size_t step = 0;
        for (std::size_t t = 1; t < s.tour.size(); ++t) {
            const NodeId current = s.tour[t - 1];
            std::vector<NodeId> open;
            for (NodeId v = 0; v < inst.size(); ++v) {
                if (!visited.count(v)) open.push_back(v);
            }
            std::sort(open.begin(), open.end(), [&](NodeId a, NodeId b) {
                const double da = sq_dist(inst.coords[a], inst.coords[current]);
                const double db = sq_dist(inst.coords[b], inst.coords[current]);
                return da != db ? da < db : a < b;
            });
            open.resize(std::min(open.size(), k));
            if (step < spy.seen.size() && spy.seen[step].size() == open.size() + 2) {
                const CoordMatrix& m = spy.seen[step];
                CHECK(m[0] == inst.coords[s.tour[0]]);
                CHECK(m[m.size() - 1] == inst.coords[current]);
                for (std::size_t j = 0; j < open.size(); ++j) CHECK(m[j + 1] == inst.coords[open[j]]);
                ++step;
            } else {
                // The constructor may skip the policy when exactly one node is left.
                CHECK(open.size() == 1);
            }
            visited.insert(s.tour[t]);
        }
        CHECK(step + 1 >= inst.size() - 1);
    }
}

TEST_CASE("mvdf with an isometry-invariant policy changes nothing") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Instance inst = gen_uniform(200, ProblemKind::tsp, seed);
        SolverConfig off = config(kNearest, projection::seed_tsp, 20);
        SolverConfig on = off;
        on.mvdf = true;
        CHECK(construct(inst, off).tour == construct(inst, on).tour);
    }
}

TEST_CASE("rrc") {
    const Instance inst = gen_uniform(100, ProblemKind::tsp, 4);
    const SolverConfig cfg = config(kSurrogate, projection::seed_tsp, 20);
    const Solution start = construct(inst, cfg);
    CHECK(rrc(inst, start, 0, cfg, 1) == start);

    RrcStats stats;
    const Solution after = rrc(inst, start, 100, cfg, 1, &stats);
    CHECK(after.objective <= start.objective);
    CHECK(stats.iterations == 100);
    CHECK(stats.improved <= stats.accepted);
    CHECK(std::abs(verify(inst, after) - after.objective) <= 1e-9);
    CHECK(rrc(inst, start, 100, cfg, 1) == after);

    // Objective never rises across successive iterations.
    Solution cur = start;
    for (int i = 0; i < 30; ++i) {
        const Solution next = rrc(inst, cur, 1, cfg, 100 + i);
        CHECK(next.objective <= cur.objective);
        cur = next;
    }

    Instance tiny = gen_uniform(5, ProblemKind::tsp, 2);
    const Solution t0 = construct(tiny, cfg);
    CHECK(rrc(tiny, t0, 50, cfg, 3) == t0);
}

TEST_CASE("rrc stays between the nearest-neighbour start and the optimum") {
    const SolverConfig cfg = config(kSurrogate, projection::seed_tsp);
    int strictly_better = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Instance inst = gen_uniform(10, ProblemKind::tsp, 500 + seed);
        const Solution nn = oracle::nearest_neighbor(inst);
        const Solution opt = oracle::held_karp(inst);
        const Solution out = rrc(inst, nn, 200, cfg, seed);
        CHECK(out.objective <= nn.objective);
        CHECK(out.objective >= opt.objective - 1e-9);
        CHECK(std::abs(verify(inst, out) - out.objective) <= 1e-9);
        if (out.objective < nn.objective) ++strictly_better;
    }
    MESSAGE("rrc improved " << strictly_better << "/20 nearest-neighbour tours");
}

TEST_CASE("rrc on cvrp") {
    const SolverConfig cfg = config(kSurrogate, kStrategies.lookup("cvrp1k"), 20);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Instance inst = gen_uniform(100, ProblemKind::cvrp, seed, 30);
        const Solution start = construct(inst, cfg);
        const Solution out = rrc(inst, start, 100, cfg, seed);
        CHECK(out.objective <= start.objective);
        CHECK(out.routes.size() == start.routes.size());
        CHECK(std::abs(verify(inst, out) - out.objective) <= 1e-9 * out.objective);
    }
}
