#pragma once

// A small, total expression language for projection strategies.
//
//   program  := [ stmt (";" stmt)* [";"] ]
//   stmt     := "window" ("all" | "exclude_first")
//             | "translate" anchor | "mirror" anchor
//             | "scale" ("range_max" | "norm_max" | "sqrt_norm_max" | "const" NUMBER)
//             | "map" ("tanh" | "expm1" | "identity" | "rexpm1")
//             | "add" (anchor | NUMBER NUMBER)
//             | "clip_unit"
//   anchor   := "min" | "max" | "mid" | "centroid" | "first" | "last" | "depot"
//
// Keywords are case-insensitive, '#' starts a comment that runs to the end of
// the line. The canonical text is lowercase, "; " separated, with numbers in
// shortest round-trip form.
//
// Evaluation keeps the original input as a reference and a working copy that
// the steps rewrite in order:
//   window      selects the statistics rows (default all; exclude_first drops
//               row 0 and falls back to all on a single-row input)
//   anchors     min/max/mid/centroid are windowed statistics of the ORIGINAL
//               input; first and depot are its row 0, last its final row
//   translate a v <- v - a          mirror a   v <- a - v
//   add a|c     v <- v + a          clip_unit  clamp to [0,1]^2
//   scale       v <- v / d where d is
//                 range_max      largest windowed axis range of the input
//                 norm_max       largest windowed norm |v| of the working rows
//                 sqrt_norm_max  sqrt of norm_max
//                 const c        c (nonzero)
//               and every zero denominator is replaced by 1
//   map         elementwise tanh / expm1 / identity; rexpm1 maps each row
//               radially, v <- expm1(|v|) * v / |v|
// Working values are saturated to +-1e150 (and expm1 arguments capped at 700)
// so the output is finite for every finite input.
//
// Reference encodings of the built-in strategies:
//   seed     window exclude_first; translate min; scale range_max; clip_unit
//   tsp1k    window exclude_first; mirror max; scale range_max; add max; clip_unit
//   tsp5k    window exclude_first; translate min; map tanh; scale range_max; clip_unit
//   tsp10k   window exclude_first; translate mid; scale range_max; add 0.5 0.5; clip_unit
//   cvrp1k   window all; translate depot; scale norm_max; add depot
//   cvrp5k   window all; translate depot; scale sqrt_norm_max; add depot
//   cvrp10k  window all; translate depot; map rexpm1; scale norm_max; add depot
// seed (away from zero-range windows), tsp1k, tsp5k, tsp10k and cvrp5k are
// bit-identical to the built-ins. cvrp1k agrees up to rounding (the built-in
// forms (v/|v|) * (|v|/max) instead of v/max). cvrp10k differs by the 1e-6
// direction guard, a relative error of order 1e-6 / max|v|.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "routeproj/geometry.hpp"
#include "routeproj/projections.hpp"

namespace routeproj::dsl {

enum class Anchor { min, max, mid, centroid, first, last, depot };
enum class WindowMode { all, exclude_first };
enum class ScaleMode { range_max, norm_max, sqrt_norm_max, constant };
enum class MapFn { tanh, expm1, identity, rexpm1 };

struct WindowStep {
    WindowMode mode = WindowMode::all;
    friend bool operator==(const WindowStep&, const WindowStep&) = default;
};
struct TranslateStep {
    Anchor anchor = Anchor::min;
    friend bool operator==(const TranslateStep&, const TranslateStep&) = default;
};
struct MirrorStep {
    Anchor anchor = Anchor::max;
    friend bool operator==(const MirrorStep&, const MirrorStep&) = default;
};
struct ScaleStep {
    ScaleMode mode = ScaleMode::range_max;
    double constant = 1.0;  // used by ScaleMode::constant only
    friend bool operator==(const ScaleStep&, const ScaleStep&) = default;
};
struct MapStep {
    MapFn fn = MapFn::identity;
    friend bool operator==(const MapStep&, const MapStep&) = default;
};
struct AddStep {
    std::optional<Anchor> anchor;  // when empty, `offset` is added
    Point offset;
    friend bool operator==(const AddStep&, const AddStep&) = default;
};
struct ClipStep {
    friend bool operator==(const ClipStep&, const ClipStep&) = default;
};

using Step = std::variant<WindowStep, TranslateStep, MirrorStep, ScaleStep, MapStep, AddStep, ClipStep>;

std::string to_string(const Step& step);

class DslError : public std::runtime_error {
public:
    DslError(const std::string& what, std::size_t line, std::size_t column);
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

struct Program {
    std::vector<Step> steps;
    std::string description;

    /// Canonical text of the steps (the description is not part of it).
    std::string source() const;

    /// Step lists compare equal; descriptions are ignored.
    friend bool operator==(const Program& a, const Program& b) { return a.steps == b.steps; }
};

/// Throws DslError with a 1-based line/column on syntax errors, unknown ops,
/// arity mismatches, non-finite literals and zero const scales.
Program parse(std::string_view source);

/// Validates a program built in code (const scales nonzero, literals finite).
void validate(const Program& program);

CoordMatrix eval(const Program& program, const CoordMatrix& input);

Projection as_projection(Program program);

/// Canonical programs for the built-in strategies (see header comment).
const Program& builtin_program(std::string_view name);

// Variation operators used by the mock offspring generator. All are
// deterministic in `seed` and always return a valid program; drafts that fail
// validation are redrawn a bounded number of times before falling back to
// the empty (identity) program.
enum class MutationOp { fresh, crossover, replace_step, perturb_consts };

Program random_program(std::uint64_t seed);
Program crossover(const Program& a, const Program& b, std::uint64_t seed);
Program replace_step(const Program& p, std::uint64_t seed);
/// Multiplies every numeric constant by an independent factor in [0.5, 2.0].
Program perturb_consts(const Program& p, std::uint64_t seed);

Program mutate(const Program& p, MutationOp op, std::uint64_t seed, const Program* other = nullptr);

/// Grammar text embedded in generator prompts.
std::string_view grammar_text();

/// On-disk strategy description: {name, description, source, created_by, fitness?}.
struct StrategyFile {
    std::string name;
    std::string description;
    std::string source;
    std::string created_by;
    std::optional<double> fitness;
};

StrategyFile read_strategy_file(const std::string& path);
void write_strategy_file(const StrategyFile& file, const std::string& path);

}  // namespace routeproj::dsl
