#include "routeproj/projections.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "routeproj/kernels.hpp"

namespace routeproj {

CoordMatrix CvrpBlocks::join() const {
    if (depot.size() != 1 || last.size() != 1 || customers.empty()) {
        throw std::invalid_argument("CVRP blocks must be 1 depot row, >=1 customer rows, 1 last row");
    }
    CoordMatrix out;
    out.reserve(customers.size() + 2);
    out.push_back(depot[0]);
    for (std::size_t i = 0; i < customers.size(); ++i) out.push_back(customers[i]);
    out.push_back(last[0]);
    return out;
}

CvrpBlocks CvrpBlocks::split(const CoordMatrix& stacked) {
    if (stacked.size() < 3) throw std::invalid_argument("stacked CVRP subgraph needs at least 3 rows");
    CvrpBlocks b;
    b.depot.push_back(stacked[0]);
    b.customers.reserve(stacked.size() - 2);
    for (std::size_t i = 1; i + 1 < stacked.size(); ++i) b.customers.push_back(stacked[i]);
    b.last.push_back(stacked[stacked.size() - 1]);
    return b;
}

namespace projection {

namespace {

Box tsp_window(const CoordMatrix& in) {
    if (in.size() < 2) throw std::invalid_argument("TSP projection needs an anchor row plus at least one row");
    return bbox(in, {1, in.size()});
}

double guarded(double r) { return r == 0.0 ? 1.0 : r; }

void clip(CoordMatrix& m) { kernels::clip_unit(m.xs(), m.ys()); }

std::vector<double> depot_offsets(CoordMatrix& m) {
    if (m.empty()) throw std::invalid_argument("CVRP projection needs at least the depot row");
    kernels::translate(m.xs(), m.ys(), m[0]);
    std::vector<double> norms(m.size());
    kernels::distances({0.0, 0.0}, m.xs(), m.ys(), norms);
    return norms;
}

CoordMatrix cvrp10k_with(const CoordMatrix& in, double eps) {
    CoordMatrix out = in;
    const Point depot = in[0];
    const std::vector<double> norms = depot_offsets(out);
    const double nmax = *std::max_element(norms.begin(), norms.end());
    // expm1 overflows past ~709; above that use the equivalent ratio
    // exp(n - nmax) * (1 - exp(-n)) / (1 - exp(-nmax)).
    const bool huge = nmax > 700.0;
    std::vector<double> grown(norms.size());
    double vmax = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < norms.size(); ++i) {
        grown[i] = huge ? std::exp(norms[i] - nmax) * -std::expm1(-norms[i]) : std::expm1(norms[i]);
        vmax = std::max(vmax, grown[i]);
    }
    if (!(vmax > 0.0)) vmax = 1.0;
    auto xs = out.xs();
    auto ys = out.ys();
    for (std::size_t i = 0; i < norms.size(); ++i) {
        const double magnitude = grown[i] / vmax;
        const double denom = norms[i] + eps;
        xs[i] = magnitude * (xs[i] / denom);
        ys[i] = magnitude * (ys[i] / denom);
    }
    kernels::add(out.xs(), out.ys(), depot);
    return out;
}

}  // namespace

CoordMatrix identity(const CoordMatrix& in) { return in; }

CoordMatrix seed_tsp(const CoordMatrix& in) {
    const Box w = tsp_window(in);
    CoordMatrix out = in;
    kernels::translate(out.xs(), out.ys(), w.min);
    const double ratio = w.range_max();
    kernels::divide(out.xs(), out.ys(), guarded(ratio));
    if (ratio == 0.0) kernels::add(out.xs(), out.ys(), w.min);
    clip(out);
    return out;
}

CoordMatrix tsp1k(const CoordMatrix& in) {
    const Box w = tsp_window(in);
    CoordMatrix out = in;
    kernels::mirror(out.xs(), out.ys(), w.max);
    kernels::divide(out.xs(), out.ys(), guarded(w.range_max()));
    kernels::add(out.xs(), out.ys(), w.max);
    clip(out);
    return out;
}

CoordMatrix tsp5k(const CoordMatrix& in) {
    const Box w = tsp_window(in);
    CoordMatrix out = in;
    kernels::translate(out.xs(), out.ys(), w.min);
    for (double& v : out.xs()) v = std::tanh(v);
    for (double& v : out.ys()) v = std::tanh(v);
    kernels::divide(out.xs(), out.ys(), guarded(w.range_max()));
    clip(out);
    return out;
}

CoordMatrix tsp10k(const CoordMatrix& in) {
    const Box w = tsp_window(in);
    CoordMatrix out = in;
    kernels::translate(out.xs(), out.ys(), w.mid());
    kernels::divide(out.xs(), out.ys(), guarded(w.range_max()));
    kernels::add(out.xs(), out.ys(), {0.5, 0.5});
    clip(out);
    return out;
}

CoordMatrix cvrp1k(const CoordMatrix& in) {
    CoordMatrix out = in;
    const Point depot = in[0];
    const std::vector<double> norms = depot_offsets(out);
    const double vmax = guarded(*std::max_element(norms.begin(), norms.end()));
    auto xs = out.xs();
    auto ys = out.ys();
    for (std::size_t i = 0; i < norms.size(); ++i) {
        const double n = guarded(norms[i]);
        const double scale = n / vmax;
        xs[i] = (xs[i] / n) * scale;
        ys[i] = (ys[i] / n) * scale;
    }
    kernels::add(out.xs(), out.ys(), depot);
    return out;
}

CoordMatrix cvrp5k(const CoordMatrix& in) {
    CoordMatrix out = in;
    const Point depot = in[0];
    const std::vector<double> norms = depot_offsets(out);
    const double vmax = guarded(std::sqrt(*std::max_element(norms.begin(), norms.end())));
    kernels::divide(out.xs(), out.ys(), vmax);
    kernels::add(out.xs(), out.ys(), depot);
    return out;
}

CoordMatrix cvrp10k(const CoordMatrix& in) { return cvrp10k_with(in, kCvrp10kEps); }

CoordMatrix cvrp10k_verbatim(const CoordMatrix& in) { return cvrp10k_with(in, kCvrp10kVerbatimEps); }

}  // namespace projection

const std::vector<std::string>& StrategyRegistry::builtin_names() {
    static const std::vector<std::string> names = {
        "identity", "seed", "tsp1k", "tsp5k", "tsp10k", "cvrp1k", "cvrp5k", "cvrp10k", "cvrp10k-verbatim"};
    return names;
}

StrategyRegistry::StrategyRegistry() {
    table_["identity"] = projection::identity;
    table_["seed"] = projection::seed_tsp;
    table_["tsp1k"] = projection::tsp1k;
    table_["tsp5k"] = projection::tsp5k;
    table_["tsp10k"] = projection::tsp10k;
    table_["cvrp1k"] = [](const CoordMatrix& m) { return projection::cvrp1k(m); };
    table_["cvrp5k"] = [](const CoordMatrix& m) { return projection::cvrp5k(m); };
    table_["cvrp10k"] = [](const CoordMatrix& m) { return projection::cvrp10k(m); };
    table_["cvrp10k-verbatim"] = projection::cvrp10k_verbatim;
}

const Projection& StrategyRegistry::lookup(const std::string& name) const {
    const auto it = table_.find(name);
    if (it == table_.end()) {
        std::string msg = "unknown projection strategy '" + name + "'; known:";
        for (const auto& n : names()) msg += " " + n;
        throw std::invalid_argument(msg);
    }
    return it->second;
}

void StrategyRegistry::add(const std::string& name, Projection fn) {
    const auto& builtins = builtin_names();
    if (std::find(builtins.begin(), builtins.end(), name) != builtins.end()) {
        throw std::invalid_argument("cannot replace built-in strategy '" + name + "'");
    }
    table_[name] = std::move(fn);
}

std::vector<std::string> StrategyRegistry::names() const {
    std::vector<std::string> out;
    out.reserve(table_.size());
    for (const auto& [n, _] : table_) out.push_back(n);
    return out;
}

}  // namespace routeproj
