#pragma once

#include <optional>
#include <string>
#include <vector>

namespace routeproj {

/// Per-instance results of one or more methods against a reference objective.
struct GapReport {
    struct Row {
        std::string instance;
        std::string method;
        double objective = 0.0;
        std::optional<double> reference;
        std::optional<double> gap;  // (objective - reference) / reference
        double seconds = 0.0;
    };

    struct Summary {
        std::string method;
        std::size_t instances = 0;
        double mean_objective = 0.0;
        std::optional<double> mean_gap;
        double total_seconds = 0.0;
    };

    // "exact" when references are provably optimal, "reference" otherwise.
    std::string reference_kind = "reference";
    std::vector<Row> rows;

    /// Appends a row, computing the gap when a positive reference is given.
    void add(std::string instance, std::string method, double objective, std::optional<double> reference,
             double seconds);

    /// One summary per method, in order of first appearance.
    std::vector<Summary> summarize() const;

    /// instance,method,objective,reference,gap,seconds
    std::string rows_csv() const;
    /// method,instances,mean_objective,mean_gap,total_seconds
    std::string summary_csv() const;
    /// Aligned text table of the summary: Method | Obj. | Gap | Time.
    std::string summary_table() const;
};

/// "12.3s", "4.5m", "1.2h".
std::string format_duration(double seconds);

}  // namespace routeproj
