#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "routeproj/mvdf.hpp"
#include "routeproj/policy.hpp"

using namespace routeproj;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ScoreContext tsp_ctx(const CoordMatrix& m) {
    ScoreContext ctx;
    ctx.projected = &m;
    ctx.layout = SubgraphLayout::for_rows(m.size());
    return ctx;
}

CoordMatrix random_unit_subgraph(std::mt19937_64& rng, std::size_t k) {
    std::uniform_real_distribution<double> u(0, 1);
    CoordMatrix m(k + 2);
    for (std::size_t i = 0; i < m.size(); ++i) {
        const double x = u(rng);
        m.set(i, {x, u(rng)});
    }
    return m;
}

// Oracle for the argmax rule written independently of the library.
std::size_t first_max(const std::vector<double>& v) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (v[i] > v[best]) best = i;
    }
    return best;
}

}  // namespace

TEST_CASE("scale-sensitive policy prefers the closer candidate") {
    ScaleSensitiveParams only_near;
    only_near.w2 = only_near.w3 = only_near.w4 = 0.0;
    const ScaleSensitivePolicy policy(only_near);
    const CoordMatrix m{{0.5, 0.5}, {0.1, 0.0}, {0.9, 0.0}, {0, 0}};
    const Logits l = policy.score(tsp_ctx(m));
    REQUIRE(l.size() == 2);
    CHECK(l[0] > l[1]);
    CHECK(l[0] == doctest::Approx(4.0 * std::exp(-1.0)));

    // Full formula against a hand evaluation.
    const ScaleSensitivePolicy full;
    const CoordMatrix g{{0.0, 0.0}, {0.3, 0.4}, {0.3, 0.0}};
    const Logits f = full.score(tsp_ctx(g));
    const double want = 4.0 * std::exp(-0.4 / 0.1) - 1.0 * std::exp(-0.5 / 0.5) + 0.05 * 0.3 + 0.05 * 0.4;
    CHECK(f[0] == doctest::Approx(want).epsilon(1e-14));
}

TEST_CASE("scale-sensitive policy saturates on raw coordinates") {
    // Candidates on a 10-unit grid over [0,100]^2, current node off-grid.
    CoordMatrix m;
    m.push_back({0, 0});
    for (int i = 0; i < 10; ++i) {
        for (int j = 0; j < 10; ++j) m.push_back({10.0 * i, 10.0 * j});
    }
    m.push_back({45, 45});
    ScaleSensitiveParams p;
    p.w3 = p.w4 = 0.0;
    p.w2 = 0.0;
    const Logits l = ScaleSensitivePolicy(p).score(tsp_ctx(m));
    for (double v : l) CHECK(v < 4.0 * std::exp(-70.0));

    // The same subgraph shrunk into the unit square keeps a usable signal.
    CoordMatrix unit = m;
    for (std::size_t i = 0; i < unit.size(); ++i) unit.set(i, {m[i].x / 100.0, m[i].y / 100.0});
    const Logits u = ScaleSensitivePolicy(p).score(tsp_ctx(unit));
    CHECK(*std::max_element(u.begin(), u.end()) >= 4.0 * std::exp(-10.0));
}

TEST_CASE("exp term at unit scale vs scaled by 100") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 100; ++t) {
        const CoordMatrix m = random_unit_subgraph(rng, 100);
        const Point last = m[m.size() - 1];
        double nearest = kInf;
        for (std::size_t j = 1; j <= 100; ++j) nearest = std::min(nearest, euclid(last, m[j]));
        const double unit_term = std::exp(-nearest / 0.1);
        const double scaled_term = std::exp(-100.0 * nearest / 0.1);
        CHECK(unit_term >= std::exp(-10.0));
        CHECK(scaled_term <= std::pow(unit_term, 100.0) * (1 + 1e-9));
    }
}

TEST_CASE("cvrp masking and depot slot") {
    const CoordMatrix m{{0.5, 0.5}, {0.1, 0.1}, {0.2, 0.2}, {0.15, 0.1}};
    const std::vector<double> demand{0.5, 0.1};
    ScoreContext ctx = tsp_ctx(m);
    ctx.cvrp = true;
    ctx.remaining_capacity_fraction = 0.25;
    ctx.candidate_demand_fractions = demand;

    const Logits l = ScaleSensitivePolicy().score(ctx);
    REQUIRE(l.size() == 3);
    CHECK(l[0] == -kInf);
    CHECK(std::isfinite(l[1]));
    CHECK(l[2] == doctest::Approx(2.0 * 0.75));

    const Logits iso = IsometryInvariantPolicy().score(ctx);
    CHECK(iso[0] == -kInf);
    CHECK(iso[2] == doctest::Approx(-euclid({0.15, 0.1}, {0.5, 0.5})));

    ctx.depot_allowed = false;
    CHECK(ScaleSensitivePolicy().score(ctx)[2] == -kInf);
    CHECK(IsometryInvariantPolicy().score(ctx)[2] == -kInf);
}

TEST_CASE("masked candidates are never selected") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(0, 1);
    const ScaleSensitivePolicy ss;
    const IsometryInvariantPolicy iso;
    for (int t = 0; t < 2000; ++t) {
        const std::size_t k = 1 + rng() % 20;
        const CoordMatrix m = random_unit_subgraph(rng, k);
        std::vector<double> demand(k);
        for (auto& d : demand) d = u(rng) * 0.5;
        ScoreContext ctx = tsp_ctx(m);
        ctx.cvrp = true;
        ctx.remaining_capacity_fraction = u(rng) * 0.5;
        ctx.candidate_demand_fractions = demand;
        ctx.depot_allowed = (rng() % 4) != 0;
        bool any = ctx.depot_allowed;
        for (std::size_t j = 0; j < k; ++j) any = any || demand[j] <= ctx.remaining_capacity_fraction;
        for (const Policy* p : {static_cast<const Policy*>(&ss), static_cast<const Policy*>(&iso)}) {
            const Logits l = p->score(ctx);
            if (!any) {
                CHECK_THROWS_AS(select_argmax(l), std::runtime_error);
                continue;
            }
            const std::size_t a = select_argmax(l);
            if (a < k) {
                CHECK(demand[a] <= ctx.remaining_capacity_fraction);
            } else {
                CHECK(ctx.depot_allowed);
            }
        }
    }
}

TEST_CASE("isometry-invariant policy") {
    const CoordMatrix m{{0, 0}, {0.9, 0.9}, {0.45, 0.55}, {0.1, 0.2}, {0.5, 0.5}};
    const Logits l = IsometryInvariantPolicy().score(tsp_ctx(m));
    CHECK(select_argmax(l) == 1);

    std::mt19937_64 rng(3);
    for (int t = 0; t < 200; ++t) {
        const CoordMatrix g = random_unit_subgraph(rng, 1 + rng() % 30);
        const Logits base = IsometryInvariantPolicy().score(tsp_ctx(g));
        for (std::size_t v = 1; v < mvdf::kViewCount; ++v) {
            const CoordMatrix view = mvdf::view(g, v);
            const Logits other = IsometryInvariantPolicy().score(tsp_ctx(view));
            for (std::size_t j = 0; j < base.size(); ++j) CHECK(std::abs(base[j] - other[j]) <= 1e-12);
        }
    }

    const CoordMatrix one{{0, 0}, {0.3, 0.3}, {0.9, 0.1}};
    CHECK(select_argmax(IsometryInvariantPolicy().score(tsp_ctx(one))) == 0);
}

TEST_CASE("select_argmax") {
    CHECK(select_argmax(std::vector<double>{0.1, 0.9, 0.3}) == 1);
    CHECK(select_argmax(std::vector<double>{0.5, 0.5}) == 0);
    CHECK(select_argmax(std::vector<double>{-kInf, 2.0, 2.0}) == 1);
    CHECK_THROWS_WITH_AS(select_argmax(std::vector<double>{-kInf, -kInf}), "no feasible action", std::runtime_error);
    CHECK_THROWS_AS(select_argmax(std::vector<double>{}), std::runtime_error);

    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int t = 0; t < 5000; ++t) {
        std::vector<double> l(1 + rng() % 50);
        for (auto& v : l) v = u(rng);
        const std::size_t a = select_argmax(l);
        CHECK(a == first_max(l));
        const double c = 10 * u(rng);
        const double s = std::exp(2 * u(rng));
        std::vector<double> shifted = l, scaled = l;
        for (auto& v : shifted) v += c;
        for (auto& v : scaled) v *= s;
        CHECK(select_argmax(shifted) == a);
        CHECK(select_argmax(scaled) == a);
    }
}

TEST_CASE("policy factory") {
    for (const auto& name : policy_names()) CHECK(make_policy(name)->name() == name);
    CHECK_THROWS_AS(make_policy("transformer"), std::invalid_argument);
}

TEST_CASE("augment") {
    const auto views = mvdf::augment(CoordMatrix{{0.2, 0.7}});
    const Point want[] = {{0.2, 0.7}, {0.7, 0.2}, {0.2, 0.3}, {0.7, 0.8},
                          {0.8, 0.7}, {0.3, 0.2}, {0.8, 0.3}, {0.3, 0.8}};
    REQUIRE(views.size() == 8);
    for (std::size_t v = 0; v < 8; ++v) {
        CHECK(std::abs(views[v][0].x - want[v].x) <= 1e-15);
        CHECK(std::abs(views[v][0].y - want[v].y) <= 1e-15);
    }
    for (const auto& v : mvdf::augment(CoordMatrix{{0.5, 0.5}})) CHECK(v[0] == Point{0.5, 0.5});

    std::mt19937_64 rng(1);
    const CoordMatrix g = random_unit_subgraph(rng, 9);
    for (const auto& v : mvdf::augment(mvdf::augment(g)[0])) CHECK(v.size() == g.size());
    CHECK(mvdf::augment(g)[0] == g);
}

TEST_CASE("fuse") {
    const std::vector<Logits> zeros{{0, 0, 0}, {0, 0, 0}};
    for (double p : mvdf::fuse(zeros)) CHECK(p == doctest::Approx(1.0 / 3));

    const std::vector<Logits> sym{{1, 0}, {0, 1}};
    const auto half = mvdf::fuse(sym);
    CHECK(half[0] == doctest::Approx(0.5));
    CHECK(half[1] == doctest::Approx(0.5));

    const std::vector<Logits> masked{{-kInf, 1, 2}, {-kInf, 0.5, -3}};
    const auto pm = mvdf::fuse(masked);
    CHECK(pm[0] == 0.0);
    CHECK(std::abs(pm[0] + pm[1] + pm[2] - 1.0) <= 1e-12);

    const std::vector<Logits> bad{{1, 2}, {1}};
    CHECK_THROWS_AS(mvdf::fuse(bad), std::invalid_argument);
    CHECK_THROWS_AS(mvdf::fuse(std::vector<Logits>{}), std::invalid_argument);
    CHECK_THROWS_AS(mvdf::fuse(std::vector<Logits>{{-kInf}, {-kInf}}), std::runtime_error);

    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-30, 30);
    for (int t = 0; t < 500; ++t) {
        std::vector<Logits> views(8, Logits(1 + rng() % 40));
        for (auto& l : views) {
            for (auto& v : l) v = u(rng);
        }
        const auto p = mvdf::fuse(views);
        const double total = std::accumulate(p.begin(), p.end(), 0.0);
        CHECK(std::abs(total - 1.0) <= 1e-12);
        for (double x : p) {
            CHECK(x >= 0.0);
            CHECK(x <= 1.0);
        }
        // Reordering the views changes only rounding.
        std::vector<Logits> shuffled = views;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        const Logits a = mvdf::sum_logits(views);
        const Logits b = mvdf::sum_logits(shuffled);
        for (std::size_t j = 0; j < a.size(); ++j) CHECK(std::abs(a[j] - b[j]) <= 1e-12);
    }
}

TEST_CASE("fusion of the x feature is constant across candidates") {
    const CoordMatrix m{{0.4, 0.6}, {0.2, 0.2}, {0.9, 0.9}, {0.5, 0.1}};
    const CoordinateFeaturePolicy policy;
    const mvdf::Decision d = mvdf::select(tsp_ctx(m), policy);
    REQUIRE(d.fused_logits.size() == 2);
    CHECK(d.fused_logits[0] == 4.0);
    CHECK(d.fused_logits[1] == 4.0);
    CHECK(d.action == 0);

    // Sum over the eight maps of x' is 2(x + y + (1-x) + (1-y)) = 4 for any point.
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(0, 1);
    for (int t = 0; t < 1000; ++t) {
        const Point p{u(rng), u(rng)};
        double sum = 0.0;
        for (std::size_t v = 0; v < 8; ++v) sum += mvdf::apply_view(v, p).x;
        CHECK(std::abs(sum - 4.0) <= 1e-14);
    }
}

TEST_CASE("fusion cancels the linear term of the scale-sensitive policy") {
    ScaleSensitiveParams linear_only;
    linear_only.w1 = linear_only.w2 = 0.0;
    const ScaleSensitivePolicy policy(linear_only);
    std::mt19937_64 rng(8);
    for (int t = 0; t < 200; ++t) {
        const CoordMatrix m = random_unit_subgraph(rng, 1 + rng() % 30);
        const mvdf::Decision d = mvdf::select(tsp_ctx(m), policy);
        for (double v : d.fused_logits) CHECK(std::abs(v - 0.4) <= 1e-12);
    }
}

TEST_CASE("fusion with an isometry-invariant policy matches a single view") {
    const IsometryInvariantPolicy policy;
    std::mt19937_64 rng(44);
    std::size_t differ = 0;
    for (int t = 0; t < 1000; ++t) {
        const CoordMatrix m = random_unit_subgraph(rng, 1 + rng() % 60);
        const ScoreContext ctx = tsp_ctx(m);
        if (mvdf::select(ctx, policy).action != select_argmax(policy.score(ctx))) ++differ;
    }
    CHECK(differ == 0);

    const CoordMatrix one{{0, 0}, {0.3, 0.3}, {0.9, 0.1}};
    CHECK(mvdf::select(tsp_ctx(one), policy).action == 0);
}

TEST_CASE("view subsets and sampling") {
    const CoordMatrix m{{0.4, 0.6}, {0.2, 0.2}, {0.9, 0.9}, {0.5, 0.1}};
    const CoordinateFeaturePolicy policy;
    const std::vector<std::size_t> identity_only{0};
    const mvdf::Decision d = mvdf::select(tsp_ctx(m), policy, identity_only);
    CHECK(d.action == 1);
    CHECK(d.fused_logits[1] == 0.9);

    std::mt19937_64 sampler(1);
    const std::vector<double> demand{0.9, 0.1};
    ScoreContext ctx = tsp_ctx(m);
    ctx.cvrp = true;
    ctx.remaining_capacity_fraction = 0.5;
    ctx.candidate_demand_fractions = demand;
    for (int t = 0; t < 200; ++t) CHECK(mvdf::select(ctx, policy, {}, &sampler).action != 0);
}
