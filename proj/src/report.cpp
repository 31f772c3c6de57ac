#include "routeproj/report.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <map>
#include <sstream>

#include "routeproj/instance_io.hpp"
#include "routeproj/oracle.hpp"

namespace routeproj {

void GapReport::add(std::string instance, std::string method, double objective, std::optional<double> reference,
                    double seconds) {
    Row r;
    r.instance = std::move(instance);
    r.method = std::move(method);
    r.objective = objective;
    r.reference = reference;
    if (reference && *reference > 0.0) r.gap = oracle::gap(objective, *reference);
    r.seconds = std::max(0.0, seconds);
    rows.push_back(std::move(r));
}

std::vector<GapReport::Summary> GapReport::summarize() const {
    std::vector<Summary> out;
    std::map<std::string, std::size_t> slot;
    std::vector<std::size_t> gap_counts;
    for (const Row& r : rows) {
        auto [it, fresh] = slot.emplace(r.method, out.size());
        if (fresh) {
            Summary fresh_summary;
            fresh_summary.method = r.method;
            out.push_back(fresh_summary);
            gap_counts.push_back(0);
        }
        Summary& s = out[it->second];
        ++s.instances;
        s.mean_objective += r.objective;
        s.total_seconds += r.seconds;
        if (r.gap) {
            s.mean_gap = s.mean_gap.value_or(0.0) + *r.gap;
            ++gap_counts[it->second];
        }
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i].mean_objective /= static_cast<double>(out[i].instances);
        if (out[i].mean_gap) *out[i].mean_gap /= static_cast<double>(gap_counts[i]);
    }
    return out;
}

namespace {

std::string opt_number(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

}  // namespace

std::string GapReport::rows_csv() const {
    std::ostringstream out;
    out << "instance,method,objective,reference,gap,seconds\n";
    for (const Row& r : rows) {
        out << r.instance << ',' << r.method << ',' << format_double(r.objective) << ',' << opt_number(r.reference)
            << ',' << opt_number(r.gap) << ',' << format_double(r.seconds) << '\n';
    }
    return out.str();
}

std::string GapReport::summary_csv() const {
    std::ostringstream out;
    out << "method,instances,mean_objective,mean_gap,total_seconds\n";
    for (const Summary& s : summarize()) {
        out << s.method << ',' << s.instances << ',' << format_double(s.mean_objective) << ','
            << opt_number(s.mean_gap) << ',' << format_double(s.total_seconds) << '\n';
    }
    return out.str();
}

std::string GapReport::summary_table() const {
    const std::vector<Summary> sums = summarize();
    std::vector<std::array<std::string, 4>> cells;
    cells.push_back({"Method", "Obj.", reference_kind == "exact" ? "Gap" : "Ref-gap", "Time"});
    for (const Summary& s : sums) {
        cells.push_back({s.method, fixed(s.mean_objective, 2), s.mean_gap ? fixed(*s.mean_gap * 100.0, 2) + "%" : "-",
                         format_duration(s.total_seconds)});
    }
    std::array<std::size_t, 4> width{};
    for (const auto& row : cells) {
        for (std::size_t c = 0; c < 4; ++c) width[c] = std::max(width[c], row[c].size());
    }
    std::ostringstream out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        for (std::size_t c = 0; c < 4; ++c) {
            const std::string& v = cells[i][c];
            const std::string pad(width[c] - v.size(), ' ');
            out << (c == 0 ? v + pad : pad + v) << (c + 1 < 4 ? "  " : "\n");
        }
        if (i == 0) {
            std::size_t total = 6;
            for (auto w : width) total += w;
            out << std::string(total, '-') << '\n';
        }
    }
    return out.str();
}

std::string format_duration(double seconds) {
    if (seconds < 60.0) return fixed(seconds, 1) + "s";
    if (seconds < 3600.0) return fixed(seconds / 60.0, 1) + "m";
    return fixed(seconds / 3600.0, 1) + "h";
}

}  // namespace routeproj
