#include "routeproj/instance_io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace routeproj {

// ---------------------------------------------------------------------------
// Instance and solution basics

std::string_view kind_name(ProblemKind kind) noexcept { return kind == ProblemKind::tsp ? "TSP" : "CVRP"; }

namespace {

std::string upper(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return out;
}

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_ws(std::string_view line) {
    std::vector<std::string> out;
    std::istringstream in{std::string(line)};
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

template <typename T>
bool parse_as(const std::string& s, T& out) {
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

double edge(Point a, Point b, bool round_edges) {
    const double d = euclid(a, b);
    return round_edges ? std::nearbyint(d) : d;
}

}  // namespace

ProblemKind parse_kind(std::string_view text) {
    const std::string u = upper(trim(text));
    if (u == "TSP") return ProblemKind::tsp;
    if (u == "CVRP") return ProblemKind::cvrp;
    throw std::invalid_argument("unknown problem kind '" + std::string(text) + "' (expected TSP or CVRP)");
}

void validate_instance(const Instance& inst) {
    if (inst.coords.empty()) throw std::invalid_argument("instance has no nodes");
    if (!inst.coords.all_finite()) throw std::invalid_argument("instance has non-finite coordinates");
    if (inst.kind == ProblemKind::tsp) {
        if (!inst.demands.empty() || inst.capacity != 0) {
            throw std::invalid_argument("TSP instance must not carry demands or capacity");
        }
        return;
    }
    if (inst.coords.size() < 2) throw std::invalid_argument("CVRP instance needs a depot and a customer");
    if (inst.demands.size() != inst.coords.size()) throw std::invalid_argument("CVRP demand count mismatch");
    if (inst.capacity < 1) throw std::invalid_argument("CVRP capacity must be positive");
    if (inst.demands[0] != 0) throw std::invalid_argument("CVRP depot demand must be 0");
    for (std::size_t i = 1; i < inst.demands.size(); ++i) {
        if (inst.demands[i] < 1) throw std::invalid_argument("CVRP customer demand must be >= 1");
    }
}

double tour_length(const CoordMatrix& coords, std::span<const NodeId> tour) {
    if (tour.size() < 2) return 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < tour.size(); ++i) total += euclid(coords[tour[i]], coords[tour[i + 1]]);
    return total + euclid(coords[tour.back()], coords[tour.front()]);
}

double route_length(const CoordMatrix& coords, std::span<const NodeId> customers) {
    if (customers.empty()) return 0.0;
    double total = euclid(coords[0], coords[customers.front()]);
    for (std::size_t i = 0; i + 1 < customers.size(); ++i) total += euclid(coords[customers[i]], coords[customers[i + 1]]);
    return total + euclid(coords[customers.back()], coords[0]);
}

double objective(const Instance& inst, const Solution& sol, bool round_edges) {
    const CoordMatrix& c = inst.coords;
    double total = 0.0;
    if (sol.kind == ProblemKind::tsp) {
        if (!round_edges) return tour_length(c, sol.tour);
        if (sol.tour.size() < 2) return 0.0;
        for (std::size_t i = 0; i < sol.tour.size(); ++i) {
            total += edge(c[sol.tour[i]], c[sol.tour[(i + 1) % sol.tour.size()]], true);
        }
        return total;
    }
    for (const auto& r : sol.routes) {
        if (!round_edges) {
            total += route_length(c, r);
            continue;
        }
        if (r.empty()) continue;
        total += edge(c[0], c[r.front()], true);
        for (std::size_t i = 0; i + 1 < r.size(); ++i) total += edge(c[r[i]], c[r[i + 1]], true);
        total += edge(c[r.back()], c[0], true);
    }
    return total;
}

std::string check_solution(const Instance& inst, const Solution& sol) {
    if (sol.kind != inst.kind) return "solution kind does not match instance kind";
    const std::size_t n = inst.size();
    std::vector<std::uint8_t> seen(n, 0);
    if (sol.kind == ProblemKind::tsp) {
        if (sol.tour.size() != n) return "tour visits " + std::to_string(sol.tour.size()) + " of " + std::to_string(n) + " nodes";
        for (NodeId v : sol.tour) {
            if (v >= n) return "tour contains unknown node " + std::to_string(v);
            if (seen[v]++) return "tour visits node " + std::to_string(v) + " twice";
        }
        return {};
    }
    seen[0] = 1;
    std::size_t visited = 0;
    for (std::size_t r = 0; r < sol.routes.size(); ++r) {
        const auto& route = sol.routes[r];
        if (route.empty()) return "route " + std::to_string(r) + " is empty";
        long load = 0;
        for (NodeId v : route) {
            if (v == 0) return "route " + std::to_string(r) + " visits the depot mid-route";
            if (v >= n) return "route contains unknown node " + std::to_string(v);
            if (seen[v]++) return "customer " + std::to_string(v) + " visited twice";
            load += inst.demands[v];
            ++visited;
        }
        if (load > inst.capacity) return "route " + std::to_string(r) + " exceeds capacity";
    }
    if (visited != n - 1) return "solution covers " + std::to_string(visited) + " of " + std::to_string(n - 1) + " customers";
    return {};
}

// ---------------------------------------------------------------------------
// Generators

std::string_view distribution_name(Distribution d) noexcept {
    switch (d) {
        case Distribution::uniform: return "uniform";
        case Distribution::clustered: return "clustered";
        case Distribution::explosion: return "explosion";
        case Distribution::implosion: return "implosion";
    }
    return "uniform";
}

Distribution parse_distribution(std::string_view text) {
    const std::string t = trim(text);
    for (Distribution d : {Distribution::uniform, Distribution::clustered, Distribution::explosion, Distribution::implosion}) {
        if (t == distribution_name(d)) return d;
    }
    throw std::invalid_argument("unknown distribution '" + t + "' (expected uniform, clustered, explosion, implosion)");
}

int default_capacity(std::size_t customers) noexcept { return customers <= 1000 ? 200 : 300; }

namespace {

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

CoordMatrix sample_uniform(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    CoordMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = u(rng);
        const double y = u(rng);
        m.set(i, {x, y});
    }
    return m;
}

CoordMatrix sample_clustered(std::size_t n, std::mt19937_64& rng, const DistributionParams& p) {
    std::uniform_int_distribution<int> count(p.clusters_min, std::max(p.clusters_min, p.clusters_max));
    std::uniform_real_distribution<double> place(p.centre_lo, p.centre_hi);
    const int c = count(rng);
    std::vector<Point> centres;
    for (int i = 0; i < c; ++i) {
        const double x = place(rng);
        const double y = place(rng);
        centres.push_back({x, y});
    }
    std::uniform_int_distribution<std::size_t> pick(0, centres.size() - 1);
    std::normal_distribution<double> noise(0.0, 1.0);
    CoordMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Point ctr = centres[pick(rng)];
        const double dx = noise(rng) * p.cluster_sigma;
        const double dy = noise(rng) * p.cluster_sigma;
        m.set(i, {clamp01(ctr.x + dx), clamp01(ctr.y + dy)});
    }
    return m;
}

CoordMatrix sample_disc(std::size_t n, std::mt19937_64& rng, const DistributionParams& p, bool explode,
                        Point* centre) {
    CoordMatrix m = sample_uniform(n, rng);
    const double r = p.disc_radius;
    std::uniform_real_distribution<double> place(r, std::max(r, 1.0 - r));
    const double cx = place(rng);
    const double cy = place(rng);
    if (centre != nullptr) *centre = {cx, cy};
    std::exponential_distribution<double> offset(1.0 / (p.explosion_offset * r));
    for (std::size_t i = 0; i < n; ++i) {
        const Point q = m[i];
        const double dx = q.x - cx;
        const double dy = q.y - cy;
        const double dist = std::sqrt(dx * dx + dy * dy);
        if (dist >= r) continue;
        if (explode) {
            // Direction of a point at the exact centre is arbitrary; use +x.
            const double ux = dist > 0.0 ? dx / dist : 1.0;
            const double uy = dist > 0.0 ? dy / dist : 0.0;
            const double target = r + offset(rng);
            m.set(i, {clamp01(cx + ux * target), clamp01(cy + uy * target)});
        } else {
            m.set(i, {clamp01(cx + dx * p.implosion_factor), clamp01(cy + dy * p.implosion_factor)});
        }
    }
    return m;
}

}  // namespace

Instance generate(Distribution dist, std::size_t n, ProblemKind kind, std::uint64_t seed,
                  const DistributionParams& params, int capacity, Point* disc_centre) {
    if (n == 0) throw std::invalid_argument("instance size must be >= 1");
    std::mt19937_64 rng(seed);
    const std::size_t nodes = kind == ProblemKind::cvrp ? n + 1 : n;
    Instance inst;
    inst.kind = kind;
    inst.distribution = std::string(distribution_name(dist));
    inst.name = std::string(kind == ProblemKind::tsp ? "tsp" : "cvrp") + std::to_string(n) + "_" +
                inst.distribution + "_" + std::to_string(seed);
    switch (dist) {
        case Distribution::uniform: inst.coords = sample_uniform(nodes, rng); break;
        case Distribution::clustered: inst.coords = sample_clustered(nodes, rng, params); break;
        case Distribution::explosion: inst.coords = sample_disc(nodes, rng, params, true, disc_centre); break;
        case Distribution::implosion: inst.coords = sample_disc(nodes, rng, params, false, disc_centre); break;
    }
    if (kind == ProblemKind::cvrp) {
        inst.capacity = capacity > 0 ? capacity : default_capacity(n);
        std::uniform_int_distribution<int> demand(params.demand_min, params.demand_max);
        inst.demands.resize(nodes, 0);
        for (std::size_t i = 1; i < nodes; ++i) inst.demands[i] = std::min(demand(rng), inst.capacity);
    }
    return inst;
}

// ---------------------------------------------------------------------------
// TSPLIB subset

std::string format_double(double v) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

Instance parse_tsplib(std::string_view text) {
    Instance inst;
    std::size_t dimension = 0;
    bool have_type = false;
    bool have_coords = false;
    bool have_demands = false;
    std::vector<std::uint8_t> coord_seen;
    std::vector<std::uint8_t> demand_seen;

    enum class Section { header, coords, demands, depots, skip } section = Section::header;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;
    const auto fail = [&line_no](const std::string& what) -> std::runtime_error {
        return std::runtime_error("line " + std::to_string(line_no) + ": " + what);
    };

    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(raw);
        if (line.empty()) continue;
        const std::string head = upper(split_ws(line).front());
        if (head == "EOF") break;

        if (head.find("_SECTION") != std::string::npos) {
            if (head == "NODE_COORD_SECTION") {
                if (dimension == 0) throw fail("NODE_COORD_SECTION before DIMENSION");
                inst.coords = CoordMatrix(dimension);
                coord_seen.assign(dimension, 0);
                section = Section::coords;
                have_coords = true;
            } else if (head == "DEMAND_SECTION") {
                if (dimension == 0) throw fail("DEMAND_SECTION before DIMENSION");
                inst.demands.assign(dimension, 0);
                demand_seen.assign(dimension, 0);
                section = Section::demands;
                have_demands = true;
            } else if (head == "DEPOT_SECTION") {
                section = Section::depots;
            } else {
                throw fail("unsupported section " + head);
            }
            continue;
        }

        if (section == Section::header || line.find(':') != std::string::npos) {
            const auto colon = line.find(':');
            if (colon == std::string::npos) throw fail("expected 'KEY : VALUE'");
            const std::string key = upper(trim(line.substr(0, colon)));
            const std::string value = trim(line.substr(colon + 1));
            if (key == "NAME") {
                inst.name = value;
            } else if (key == "TYPE") {
                try {
                    inst.kind = parse_kind(value);
                } catch (const std::invalid_argument&) {
                    throw fail("unsupported TYPE '" + value + "'");
                }
                have_type = true;
            } else if (key == "DIMENSION") {
                if (!parse_as(value, dimension) || dimension == 0) throw fail("invalid DIMENSION '" + value + "'");
            } else if (key == "EDGE_WEIGHT_TYPE") {
                if (upper(value) != "EUC_2D") throw fail("unsupported EDGE_WEIGHT_TYPE '" + value + "'");
            } else if (key == "CAPACITY") {
                if (!parse_as(value, inst.capacity) || inst.capacity < 1) throw fail("invalid CAPACITY '" + value + "'");
            } else if (key == "COMMENT") {
                const auto pos = value.find("distribution=");
                if (pos != std::string::npos) inst.distribution = split_ws(value.substr(pos + 13)).front();
            }
            section = Section::header;
            continue;
        }

        const std::vector<std::string> tok = split_ws(line);
        switch (section) {
            case Section::coords: {
                std::size_t id = 0;
                double x = 0.0;
                double y = 0.0;
                if (tok.size() != 3 || !parse_as(tok[0], id) || !parse_as(tok[1], x) || !parse_as(tok[2], y)) {
                    throw fail("malformed coordinate line '" + line + "'");
                }
                if (id < 1 || id > dimension) throw fail("node id " + tok[0] + " outside 1.." + std::to_string(dimension));
                if (coord_seen[id - 1]++) throw fail("duplicate node id " + tok[0]);
                inst.coords.set(id - 1, {x, y});
                break;
            }
            case Section::demands: {
                std::size_t id = 0;
                int d = 0;
                if (tok.size() != 2 || !parse_as(tok[0], id) || !parse_as(tok[1], d)) {
                    throw fail("malformed demand line '" + line + "'");
                }
                if (id < 1 || id > dimension) throw fail("node id " + tok[0] + " outside 1.." + std::to_string(dimension));
                if (demand_seen[id - 1]++) throw fail("duplicate demand for node " + tok[0]);
                inst.demands[id - 1] = d;
                break;
            }
            case Section::depots: {
                for (const std::string& t : tok) {
                    long id = 0;
                    if (!parse_as(t, id)) throw fail("malformed depot line '" + line + "'");
                    if (id == -1) {
                        section = Section::skip;
                        break;
                    }
                    if (id != 1) throw fail("only depot node 1 is supported");
                }
                break;
            }
            case Section::skip: throw fail("unexpected data after DEPOT_SECTION terminator");
            case Section::header: break;
        }
    }

    if (!have_type) throw std::runtime_error("missing TYPE");
    if (dimension == 0) throw std::runtime_error("missing DIMENSION");
    if (!have_coords) throw std::runtime_error("missing NODE_COORD_SECTION");
    if (std::find(coord_seen.begin(), coord_seen.end(), 0) != coord_seen.end()) {
        throw std::runtime_error("NODE_COORD_SECTION does not list every node");
    }
    if (inst.kind == ProblemKind::cvrp) {
        if (!have_demands) throw std::runtime_error("missing DEMAND_SECTION for CVRP instance");
        if (std::find(demand_seen.begin(), demand_seen.end(), 0) != demand_seen.end()) {
            throw std::runtime_error("DEMAND_SECTION does not list every node");
        }
        if (inst.capacity < 1) throw std::runtime_error("missing CAPACITY for CVRP instance");
    } else {
        inst.demands.clear();
        inst.capacity = 0;
    }
    try {
        validate_instance(inst);
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(e.what());
    }
    return inst;
}

Instance read_tsplib(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_tsplib(ss.str());
    } catch (const std::runtime_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

std::string format_tsplib(const Instance& inst) {
    std::ostringstream out;
    out << "NAME : " << inst.name << '\n';
    out << "COMMENT : distribution=" << inst.distribution << '\n';
    out << "TYPE : " << kind_name(inst.kind) << '\n';
    out << "DIMENSION : " << inst.size() << '\n';
    out << "EDGE_WEIGHT_TYPE : EUC_2D\n";
    if (inst.kind == ProblemKind::cvrp) out << "CAPACITY : " << inst.capacity << '\n';
    out << "NODE_COORD_SECTION\n";
    for (std::size_t i = 0; i < inst.size(); ++i) {
        out << (i + 1) << ' ' << format_double(inst.coords[i].x) << ' ' << format_double(inst.coords[i].y) << '\n';
    }
    if (inst.kind == ProblemKind::cvrp) {
        out << "DEMAND_SECTION\n";
        for (std::size_t i = 0; i < inst.size(); ++i) out << (i + 1) << ' ' << inst.demands[i] << '\n';
        out << "DEPOT_SECTION\n1\n-1\n";
    }
    out << "EOF\n";
    return out.str();
}

void write_tsplib(const Instance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write instance file " + path);
    out << format_tsplib(inst);
    if (!out) throw std::runtime_error("failed writing instance file " + path);
}

// ---------------------------------------------------------------------------
// Solution files

std::string format_solution(const Solution& sol) {
    std::ostringstream out;
    out << "KIND " << kind_name(sol.kind) << '\n';
    out << "OBJECTIVE " << format_double(sol.objective) << '\n';
    out << "FEASIBLE " << (sol.feasible ? 1 : 0) << '\n';
    if (sol.kind == ProblemKind::tsp) {
        out << "TOUR";
        for (NodeId v : sol.tour) out << ' ' << v;
        out << '\n';
    } else {
        for (const auto& r : sol.routes) {
            out << "ROUTE";
            for (NodeId v : r) out << ' ' << v;
            out << '\n';
        }
    }
    return out.str();
}

void write_solution(const Solution& sol, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write solution file " + path);
    out << format_solution(sol);
}

Solution parse_solution(std::string_view text, const Instance& inst) {
    Solution sol;
    bool have_kind = false;
    bool have_objective = false;
    bool have_tour = false;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;
    const auto fail = [&line_no](const std::string& what) {
        return std::runtime_error("corrupt solution file: line " + std::to_string(line_no) + ": " + what);
    };
    while (std::getline(in, raw)) {
        ++line_no;
        const std::vector<std::string> tok = split_ws(raw);
        if (tok.empty()) continue;
        const std::string key = upper(tok[0]);
        if (key == "KIND") {
            if (tok.size() != 2) throw fail("KIND expects one value");
            sol.kind = parse_kind(tok[1]);
            have_kind = true;
        } else if (key == "OBJECTIVE") {
            if (tok.size() != 2 || !parse_as(tok[1], sol.objective)) throw fail("malformed OBJECTIVE");
            have_objective = true;
        } else if (key == "FEASIBLE") {
            if (tok.size() != 2 || (tok[1] != "0" && tok[1] != "1")) throw fail("FEASIBLE must be 0 or 1");
            sol.feasible = tok[1] == "1";
        } else if (key == "TOUR" || key == "ROUTE") {
            std::vector<NodeId> ids;
            for (std::size_t i = 1; i < tok.size(); ++i) {
                NodeId v = 0;
                if (!parse_as(tok[i], v)) throw fail("malformed node id '" + tok[i] + "'");
                ids.push_back(v);
            }
            if (key == "TOUR") {
                if (have_tour) throw fail("duplicate TOUR line");
                sol.tour = std::move(ids);
                have_tour = true;
            } else {
                if (ids.empty()) throw fail("empty route");
                sol.routes.push_back(std::move(ids));
            }
        } else {
            throw fail("unknown key '" + tok[0] + "'");
        }
    }
    if (!have_kind || !have_objective) throw std::runtime_error("corrupt solution file: missing KIND or OBJECTIVE");
    if (sol.kind != inst.kind) throw std::runtime_error("corrupt solution file: kind does not match instance");
    if (sol.kind == ProblemKind::tsp && !sol.routes.empty()) throw std::runtime_error("corrupt solution file: ROUTE in TSP solution");
    if (sol.kind == ProblemKind::cvrp && have_tour) throw std::runtime_error("corrupt solution file: TOUR in CVRP solution");
    const auto bad_id = [&inst](NodeId v) { return v >= inst.size(); };
    if (std::any_of(sol.tour.begin(), sol.tour.end(), bad_id) ||
        std::any_of(sol.routes.begin(), sol.routes.end(),
                    [&](const auto& r) { return std::any_of(r.begin(), r.end(), bad_id); })) {
        throw std::runtime_error("corrupt solution file: node id outside instance");
    }
    const double recomputed = objective(inst, sol);
    if (std::abs(recomputed - sol.objective) > 1e-6) {
        throw std::runtime_error("corrupt solution file: stored objective " + format_double(sol.objective) +
                                 " but recomputed " + format_double(recomputed));
    }
    return sol;
}

Solution read_solution(const std::string& path, const Instance& inst) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open solution file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_solution(ss.str(), inst);
}

}  // namespace routeproj
