#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numeric>
#include <string>

#include "routeproj/constructor.hpp"
#include "routeproj/instance_io.hpp"

using namespace routeproj;
namespace fs = std::filesystem;

namespace {

bool in_unit_square(const CoordMatrix& c) {
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i].x < 0 || c[i].x > 1 || c[i].y < 0 || c[i].y > 1) return false;
    }
    return true;
}

std::string error_of(std::string_view text) {
    try {
        parse_tsplib(text);
    } catch (const std::exception& e) {
        return e.what();
    }
    return {};
}

const char* kTriangle =
    "NAME : tri\n"
    "TYPE : TSP\n"
    "DIMENSION : 3\n"
    "EDGE_WEIGHT_TYPE : EUC_2D\n"
    "NODE_COORD_SECTION\n"
    "1 0 0\n"
    "2 3 0\n"
    "3 0 4\n"
    "EOF\n";

}  // namespace

TEST_CASE("default capacities") {
    CHECK(default_capacity(1000) == 200);
    CHECK(default_capacity(5000) == 300);
    CHECK(gen_uniform(1000, ProblemKind::cvrp, 1).capacity == 200);
    CHECK(gen_uniform(5000, ProblemKind::cvrp, 1).capacity == 300);
    CHECK(gen_uniform(50, ProblemKind::cvrp, 1, 17).capacity == 17);
}

TEST_CASE("generators: shape, range, determinism") {
    for (int d = 0; d < 4; ++d) {
        const auto dist = static_cast<Distribution>(d);
        CHECK(parse_distribution(distribution_name(dist)) == dist);
        for (std::size_t n : {1u, 7u, 500u}) {
            const Instance t = generate(dist, n, ProblemKind::tsp, 42);
            CHECK(t.size() == n);
            CHECK(in_unit_square(t.coords));
            CHECK(t.demands.empty());
            CHECK(t.distribution == distribution_name(dist));
            CHECK(generate(dist, n, ProblemKind::tsp, 42) == t);
            validate_instance(t);

            const Instance c = generate(dist, n, ProblemKind::cvrp, 42);
            CHECK(c.size() == n + 1);
            CHECK(c.customer_count() == n);
            CHECK(in_unit_square(c.coords));
            CHECK(c.demands[0] == 0);
            for (std::size_t i = 1; i < c.size(); ++i) {
                CHECK(c.demands[i] >= 1);
                CHECK(c.demands[i] <= 9);
                CHECK(c.demands[i] <= c.capacity);
            }
            validate_instance(c);
        }
        CHECK_FALSE(generate(dist, 100, ProblemKind::tsp, 1) == generate(dist, 100, ProblemKind::tsp, 2));
    }
    CHECK_THROWS_AS(gen_uniform(0, ProblemKind::tsp, 1), std::invalid_argument);
    CHECK_THROWS_AS(parse_distribution("gaussian"), std::invalid_argument);
}

TEST_CASE("explosion leaves the disc interior empty") {
    const DistributionParams p;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Point centre;
        const Instance inst = generate(Distribution::explosion, 2000, ProblemKind::tsp, seed, p, 0, &centre);
        CHECK(centre.x >= p.disc_radius);
        CHECK(centre.x <= 1 - p.disc_radius);
        for (std::size_t i = 0; i < inst.size(); ++i) CHECK(euclid(inst.coords[i], centre) >= p.disc_radius - 1e-9);
    }
}

TEST_CASE("implosion contracts the disc") {
    const DistributionParams p;
    Point centre;
    const Instance inst = generate(Distribution::implosion, 5000, ProblemKind::tsp, 3, p, 0, &centre);
    CHECK(inst.size() == 5000);
    CHECK(in_unit_square(inst.coords));
    // Points inside the disc end up within 0.3 R of the centre, so the ring
    // between 0.3 R and R is empty.
    for (std::size_t i = 0; i < inst.size(); ++i) {
        const double r = euclid(inst.coords[i], centre);
        CHECK((r <= p.implosion_factor * p.disc_radius + 1e-9 || r >= p.disc_radius - 1e-9));
    }
}

TEST_CASE("clustered degenerate limit") {
    DistributionParams p;
    p.clusters_min = p.clusters_max = 1;
    p.cluster_sigma = 0.0;
    const Instance inst = generate(Distribution::clustered, 100, ProblemKind::tsp, 5, p);
    for (std::size_t i = 1; i < inst.size(); ++i) CHECK(inst.coords[i] == inst.coords[0]);
    CHECK(inst.coords[0].x >= p.centre_lo);
    CHECK(inst.coords[0].x <= p.centre_hi);
}

TEST_CASE("tsplib parsing") {
    const Instance tri = parse_tsplib(kTriangle);
    CHECK(tri.kind == ProblemKind::tsp);
    CHECK(tri.name == "tri");
    CHECK(tri.coords == CoordMatrix{{0, 0}, {3, 0}, {0, 4}});

    const std::string heavy =
        "NAME : heavy\nTYPE : CVRP\nDIMENSION : 3\nEDGE_WEIGHT_TYPE : EUC_2D\nCAPACITY : 10\n"
        "NODE_COORD_SECTION\n1 0 0\n2 1 0\n3 0 1\nDEMAND_SECTION\n1 0\n2 4\n3 12\nDEPOT_SECTION\n1\n-1\nEOF\n";
    const Instance cv = parse_tsplib(heavy);
    CHECK(cv.demands == std::vector<int>{0, 4, 12});
    CHECK(cv.capacity == 10);
    const IsometryInvariantPolicy policy;
    SolverConfig cfg;
    cfg.policy = &policy;
    CHECK_THROWS_WITH_AS(construct(cv, cfg), "infeasible instance", std::runtime_error);
}

TEST_CASE("tsplib errors") {
    std::string geo = kTriangle;
    geo.replace(geo.find("EUC_2D"), 6, "GEO");
    CHECK(error_of(geo).find("EDGE_WEIGHT_TYPE") != std::string::npos);
    CHECK(error_of(geo).find("line 4") != std::string::npos);

    std::string bad = kTriangle;
    bad.replace(bad.find("2 3 0"), 5, "2 three 0");
    CHECK(error_of(bad).find("line 7") != std::string::npos);

    const std::string no_demand =
        "NAME : x\nTYPE : CVRP\nDIMENSION : 2\nEDGE_WEIGHT_TYPE : EUC_2D\nCAPACITY : 10\n"
        "NODE_COORD_SECTION\n1 0 0\n2 1 0\nEOF\n";
    CHECK(error_of(no_demand).find("DEMAND_SECTION") != std::string::npos);

    CHECK_FALSE(error_of("TYPE : ATSP\n").empty());
    CHECK_THROWS_AS(read_tsplib("/nonexistent/file.tsp"), std::runtime_error);
}

TEST_CASE("tsplib round trip") {
    const auto dir = fs::temp_directory_path() / "routeproj_io_test";
    fs::create_directories(dir);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const ProblemKind kind = seed % 2 ? ProblemKind::cvrp : ProblemKind::tsp;
        Instance inst = generate(static_cast<Distribution>(seed % 4), 1 + seed % 60, kind, seed);
        inst.name = "inst" + std::to_string(seed);
        const auto path = (dir / "x.tsp").string();
        write_tsplib(inst, path);
        CHECK(read_tsplib(path) == inst);
        CHECK(parse_tsplib(format_tsplib(inst)) == inst);
    }
    fs::remove_all(dir);
}

TEST_CASE("solution round trip") {
    const auto dir = fs::temp_directory_path() / "routeproj_sol_test";
    fs::create_directories(dir);
    const ScaleSensitivePolicy policy;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const ProblemKind kind = seed % 2 ? ProblemKind::cvrp : ProblemKind::tsp;
        const Instance inst = gen_uniform(2 + seed % 80, kind, seed, kind == ProblemKind::cvrp ? 20 : 0);
        SolverConfig cfg;
        cfg.policy = &policy;
        cfg.k = 10;
        const Solution s = construct(inst, cfg);
        const auto path = (dir / "s.sol").string();
        write_solution(s, path);
        CHECK(read_solution(path, inst) == s);
        if (kind == ProblemKind::cvrp) {
            const int total = std::accumulate(inst.demands.begin(), inst.demands.end(), 0);
            CHECK(s.routes.size() >= static_cast<std::size_t>((total + inst.capacity - 1) / inst.capacity));
        }
    }
    fs::remove_all(dir);
}

TEST_CASE("tampered and malformed solutions") {
    Instance sq;
    sq.coords = CoordMatrix{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    const std::string good = "KIND TSP\nOBJECTIVE 4\nFEASIBLE 1\nTOUR 0 1 2 3\n";
    CHECK(parse_solution(good, sq).objective == 4.0);
    CHECK_THROWS_WITH_AS(parse_solution("KIND TSP\nOBJECTIVE 3.5\nFEASIBLE 1\nTOUR 0 1 2 3\n", sq),
                         doctest::Contains("corrupt solution file"), std::runtime_error);
    CHECK_THROWS_AS(parse_solution("KIND TSP\nOBJECTIVE 4\nTOUR 0 1 2 9\n", sq), std::runtime_error);

    Instance cv;
    cv.kind = ProblemKind::cvrp;
    cv.coords = CoordMatrix{{0, 0}, {3, 4}};
    cv.demands = {0, 1};
    cv.capacity = 5;
    CHECK(parse_solution("KIND CVRP\nOBJECTIVE 10\nFEASIBLE 1\nROUTE 1\n", cv).routes.size() == 1);
    CHECK_THROWS_WITH_AS(parse_solution("KIND CVRP\nOBJECTIVE 10\nFEASIBLE 1\nROUTE 1\nROUTE\n", cv),
                         doctest::Contains("empty route"), std::runtime_error);
}

TEST_CASE("objective with rounded edges") {
    Instance sq;
    sq.coords = CoordMatrix{{0, 0}, {1.4, 0}, {1.4, 1.4}, {0, 1.4}};
    Solution s;
    s.tour = {0, 1, 2, 3};
    CHECK(objective(sq, s) == doctest::Approx(5.6));
    CHECK(objective(sq, s, true) == 4.0);
    CHECK(check_solution(sq, s).empty());
    s.tour = {0, 1, 1, 3};
    CHECK_FALSE(check_solution(sq, s).empty());
}

TEST_CASE("format_double is shortest round trip") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(4.0) == "4");
    const double v = 0.1 + 0.2;
    CHECK(std::stod(format_double(v)) == v);
}
