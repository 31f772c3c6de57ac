#include "routeproj/dsl.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "routeproj/kernels.hpp"

namespace routeproj::dsl {

namespace {

constexpr double kSaturation = 1e150;
constexpr double kExpCap = 700.0;
constexpr int kMaxDraftRetries = 32;

constexpr std::array<std::pair<std::string_view, Anchor>, 7> kAnchors{{
    {"min", Anchor::min},
    {"max", Anchor::max},
    {"mid", Anchor::mid},
    {"centroid", Anchor::centroid},
    {"first", Anchor::first},
    {"last", Anchor::last},
    {"depot", Anchor::depot},
}};

constexpr std::array<std::pair<std::string_view, MapFn>, 4> kMaps{{
    {"tanh", MapFn::tanh},
    {"expm1", MapFn::expm1},
    {"identity", MapFn::identity},
    {"rexpm1", MapFn::rexpm1},
}};

constexpr std::array<std::pair<std::string_view, ScaleMode>, 3> kScales{{
    {"range_max", ScaleMode::range_max},
    {"norm_max", ScaleMode::norm_max},
    {"sqrt_norm_max", ScaleMode::sqrt_norm_max},
}};

template <typename E, std::size_t N>
std::string_view name_of(const std::array<std::pair<std::string_view, E>, N>& table, E value) {
    for (const auto& [n, v] : table) {
        if (v == value) return n;
    }
    return "?";
}

template <typename E, std::size_t N>
std::optional<E> lookup(const std::array<std::pair<std::string_view, E>, N>& table, std::string_view word) {
    for (const auto& [n, v] : table) {
        if (n == word) return v;
    }
    return std::nullopt;
}

std::string format_number(double v) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

// ---------------------------------------------------------------------------
// Lexer

enum class TokKind { word, number, semicolon, end };

struct Token {
    TokKind kind = TokKind::end;
    std::string text;
    std::size_t line = 1;
    std::size_t column = 1;
};

bool is_number_start(std::string_view s, std::size_t i) {
    const char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) return true;
    if ((c == '-' || c == '+' || c == '.') && i + 1 < s.size()) {
        const char n = s[i + 1];
        if (std::isdigit(static_cast<unsigned char>(n))) return true;
        if (c != '.' && n == '.' && i + 2 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 2])))
            return true;
        // Signed words such as "-inf" are lexed as numbers so they get the
        // non-finite diagnostic rather than "syntax error".
        if (c != '.' && std::isalpha(static_cast<unsigned char>(n))) return true;
    }
    return false;
}

std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    std::size_t line = 1;
    std::size_t col = 1;
    std::size_t i = 0;
    const auto advance = [&](std::size_t count) {
        for (std::size_t j = 0; j < count; ++j, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < src.size()) {
        const char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        Token t;
        t.line = line;
        t.column = col;
        if (c == ';') {
            t.kind = TokKind::semicolon;
            t.text = ";";
            advance(1);
        } else if (is_number_start(src, i)) {
            std::size_t j = i + 1;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '.' ||
                                      ((src[j] == '-' || src[j] == '+') && (src[j - 1] == 'e' || src[j - 1] == 'E')))) {
                ++j;
            }
            t.kind = TokKind::number;
            t.text = std::string(src.substr(i, j - i));
            advance(j - i);
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i + 1;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
            t.kind = TokKind::word;
            t.text = std::string(src.substr(i, j - i));
            std::transform(t.text.begin(), t.text.end(), t.text.begin(),
                           [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
            advance(j - i);
        } else {
            throw DslError(std::string("syntax error: unexpected character '") + c + "'", line, col);
        }
        out.push_back(std::move(t));
    }
    Token end;
    end.kind = TokKind::end;
    end.line = line;
    end.column = col;
    out.push_back(end);
    return out;
}

double parse_number(const Token& t) {
    std::string_view text = t.text;
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    std::string lowered(text);
    std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    const std::string_view body = lowered.front() == '-' ? std::string_view(lowered).substr(1) : lowered;
    if (body.starts_with("inf") || body.starts_with("nan")) {
        throw DslError("non-finite literal '" + t.text + "'", t.line, t.column);
    }
    double v = 0.0;
    const auto res = std::from_chars(lowered.data(), lowered.data() + lowered.size(), v);
    if (res.ec == std::errc::result_out_of_range) {
        throw DslError("non-finite literal '" + t.text + "'", t.line, t.column);
    }
    if (res.ec != std::errc() || res.ptr != lowered.data() + lowered.size()) {
        throw DslError("syntax error: malformed number '" + t.text + "'", t.line, t.column);
    }
    if (!std::isfinite(v)) throw DslError("non-finite literal '" + t.text + "'", t.line, t.column);
    return v;
}

Anchor parse_anchor(const Token& t) {
    if (t.kind == TokKind::word) {
        if (const auto a = lookup(kAnchors, t.text)) return *a;
        throw DslError("unknown anchor '" + t.text + "'", t.line, t.column);
    }
    throw DslError("syntax error: expected anchor, found '" + t.text + "'", t.line, t.column);
}

void expect_arity(const Token& op, const std::vector<Token>& args, std::size_t n, std::string_view what) {
    if (args.size() != n) {
        throw DslError("arity mismatch: '" + op.text + "' expects " + std::string(what) + ", got " +
                           std::to_string(args.size()) + " argument(s)",
                       op.line, op.column);
    }
}

Step parse_statement(const Token& op, const std::vector<Token>& args) {
    const std::string& name = op.text;
    if (name == "window") {
        expect_arity(op, args, 1, "all|exclude_first");
        if (args[0].text == "all") return WindowStep{WindowMode::all};
        if (args[0].text == "exclude_first") return WindowStep{WindowMode::exclude_first};
        throw DslError("unknown window mode '" + args[0].text + "'", args[0].line, args[0].column);
    }
    if (name == "translate" || name == "mirror") {
        expect_arity(op, args, 1, "one anchor");
        const Anchor a = parse_anchor(args[0]);
        if (name == "translate") return TranslateStep{a};
        return MirrorStep{a};
    }
    if (name == "scale") {
        if (args.empty()) expect_arity(op, args, 1, "a scale mode");
        if (args[0].kind == TokKind::word && args[0].text == "const") {
            if (args.size() != 2) {
                throw DslError("arity mismatch: 'scale const' expects one number", op.line, op.column);
            }
            if (args[1].kind != TokKind::number) {
                throw DslError("syntax error: expected number, found '" + args[1].text + "'", args[1].line,
                               args[1].column);
            }
            const double c = parse_number(args[1]);
            if (c == 0.0) throw DslError("const scale must be nonzero", args[1].line, args[1].column);
            return ScaleStep{ScaleMode::constant, c};
        }
        expect_arity(op, args, 1, "range_max|norm_max|sqrt_norm_max|const NUMBER");
        if (const auto m = lookup(kScales, args[0].text); m && args[0].kind == TokKind::word) {
            return ScaleStep{*m, 1.0};
        }
        throw DslError("unknown scale mode '" + args[0].text + "'", args[0].line, args[0].column);
    }
    if (name == "map") {
        expect_arity(op, args, 1, "tanh|expm1|identity|rexpm1");
        if (const auto f = lookup(kMaps, args[0].text); f && args[0].kind == TokKind::word) return MapStep{*f};
        throw DslError("unknown map function '" + args[0].text + "'", args[0].line, args[0].column);
    }
    if (name == "add") {
        if (args.size() == 1) return AddStep{parse_anchor(args[0]), {}};
        if (args.size() == 2) {
            for (const Token& a : args) {
                if (a.kind != TokKind::number) {
                    throw DslError("syntax error: expected number, found '" + a.text + "'", a.line, a.column);
                }
            }
            return AddStep{std::nullopt, {parse_number(args[0]), parse_number(args[1])}};
        }
        expect_arity(op, args, 2, "one anchor or two numbers");
    }
    if (name == "clip_unit") {
        expect_arity(op, args, 0, "no arguments");
        return ClipStep{};
    }
    throw DslError("unknown op '" + name + "'", op.line, op.column);
}

// ---------------------------------------------------------------------------
// Evaluation

struct EvalState {
    const CoordMatrix& ref;
    CoordMatrix cur;
    IndexRange window;
};

IndexRange window_for(WindowMode mode, std::size_t rows) {
    if (mode == WindowMode::exclude_first && rows >= 2) return {1, rows};
    return {0, rows};
}

Point anchor_value(Anchor a, const EvalState& s) {
    switch (a) {
        case Anchor::first:
        case Anchor::depot: return s.ref[0];
        case Anchor::last: return s.ref[s.ref.size() - 1];
        case Anchor::min: return bbox(s.ref, s.window).min;
        case Anchor::max: return bbox(s.ref, s.window).max;
        case Anchor::mid: return bbox(s.ref, s.window).mid();
        case Anchor::centroid: {
            double sx = 0.0;
            double sy = 0.0;
            for (std::size_t i = s.window.begin; i < s.window.end; ++i) {
                sx += s.ref[i].x;
                sy += s.ref[i].y;
            }
            const auto n = static_cast<double>(s.window.size());
            return {sx / n, sy / n};
        }
    }
    return {};
}

double guard(double d) { return d == 0.0 ? 1.0 : d; }

double scale_denominator(const ScaleStep& step, const EvalState& s) {
    switch (step.mode) {
        case ScaleMode::constant: return step.constant;
        case ScaleMode::range_max: return guard(bbox(s.ref, s.window).range_max());
        case ScaleMode::norm_max:
        case ScaleMode::sqrt_norm_max: {
            std::vector<double> norms(s.window.size());
            kernels::distances({0.0, 0.0}, s.cur.xs().subspan(s.window.begin, s.window.size()),
                               s.cur.ys().subspan(s.window.begin, s.window.size()), norms);
            const double m = *std::max_element(norms.begin(), norms.end());
            return step.mode == ScaleMode::norm_max ? guard(m) : guard(std::sqrt(m));
        }
    }
    return 1.0;
}

void saturate(CoordMatrix& m) {
    for (double& v : m.xs()) v = std::clamp(v, -kSaturation, kSaturation);
    for (double& v : m.ys()) v = std::clamp(v, -kSaturation, kSaturation);
}

void apply_map(MapFn fn, CoordMatrix& m) {
    switch (fn) {
        case MapFn::identity: return;
        case MapFn::tanh:
            for (double& v : m.xs()) v = std::tanh(v);
            for (double& v : m.ys()) v = std::tanh(v);
            return;
        case MapFn::expm1:
            for (double& v : m.xs()) v = std::expm1(std::min(v, kExpCap));
            for (double& v : m.ys()) v = std::expm1(std::min(v, kExpCap));
            return;
        case MapFn::rexpm1: {
            std::vector<double> norms(m.size());
            kernels::distances({0.0, 0.0}, m.xs(), m.ys(), norms);
            auto xs = m.xs();
            auto ys = m.ys();
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (norms[i] == 0.0) continue;
                const double grown = std::expm1(std::min(norms[i], kExpCap));
                xs[i] = grown * (xs[i] / norms[i]);
                ys[i] = grown * (ys[i] / norms[i]);
            }
            return;
        }
    }
}

// ---------------------------------------------------------------------------
// Random programs

Step random_step(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> kind(0, 99);
    std::uniform_int_distribution<std::size_t> anchor(0, kAnchors.size() - 1);
    const auto round_to = [](double v, double q) { return std::round(v / q) * q; };
    const int k = kind(rng);
    if (k < 10) return WindowStep{(rng() & 1U) ? WindowMode::exclude_first : WindowMode::all};
    if (k < 28) return TranslateStep{kAnchors[anchor(rng)].second};
    if (k < 38) return MirrorStep{kAnchors[anchor(rng)].second};
    if (k < 62) {
        std::uniform_int_distribution<int> mode(0, 3);
        const int m = mode(rng);
        if (m == 3) {
            std::uniform_real_distribution<double> c(0.25, 4.0);
            return ScaleStep{ScaleMode::constant, round_to(c(rng), 0.01)};
        }
        return ScaleStep{kScales[static_cast<std::size_t>(m)].second, 1.0};
    }
    if (k < 72) {
        std::uniform_int_distribution<std::size_t> f(0, kMaps.size() - 1);
        return MapStep{kMaps[f(rng)].second};
    }
    if (k < 86) {
        if (rng() & 1U) return AddStep{kAnchors[anchor(rng)].second, {}};
        std::uniform_real_distribution<double> c(-0.5, 0.5);
        const double a = round_to(c(rng), 0.05);
        const double b = round_to(c(rng), 0.05);
        return AddStep{std::nullopt, {a, b}};
    }
    return ClipStep{};
}

bool is_valid(const Program& p) {
    try {
        validate(p);
        return parse(p.source()) == p;
    } catch (const std::exception&) {
        return false;
    }
}

template <typename Draft>
Program first_valid(std::uint64_t seed, Draft draft) {
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < kMaxDraftRetries; ++attempt) {
        Program p = draft(rng);
        if (is_valid(p)) return p;
    }
    return Program{};
}

}  // namespace

DslError::DslError(const std::string& what, std::size_t line, std::size_t column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

std::string to_string(const Step& step) {
    return std::visit(
        [](const auto& s) -> std::string {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, WindowStep>) {
                return s.mode == WindowMode::all ? "window all" : "window exclude_first";
            } else if constexpr (std::is_same_v<T, TranslateStep>) {
                return "translate " + std::string(name_of(kAnchors, s.anchor));
            } else if constexpr (std::is_same_v<T, MirrorStep>) {
                return "mirror " + std::string(name_of(kAnchors, s.anchor));
            } else if constexpr (std::is_same_v<T, ScaleStep>) {
                if (s.mode == ScaleMode::constant) return "scale const " + format_number(s.constant);
                return "scale " + std::string(name_of(kScales, s.mode));
            } else if constexpr (std::is_same_v<T, MapStep>) {
                return "map " + std::string(name_of(kMaps, s.fn));
            } else if constexpr (std::is_same_v<T, AddStep>) {
                if (s.anchor) return "add " + std::string(name_of(kAnchors, *s.anchor));
                return "add " + format_number(s.offset.x) + " " + format_number(s.offset.y);
            } else {
                return "clip_unit";
            }
        },
        step);
}

std::string Program::source() const {
    std::string out;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (i > 0) out += "; ";
        out += to_string(steps[i]);
    }
    return out;
}

Program parse(std::string_view source) {
    const std::vector<Token> tokens = lex(source);
    Program program;
    std::size_t i = 0;
    while (tokens[i].kind != TokKind::end) {
        const Token& op = tokens[i];
        if (op.kind == TokKind::semicolon) {
            // Empty statements between separators are only allowed as a
            // trailing separator.
            if (tokens[i + 1].kind == TokKind::end && !program.steps.empty()) break;
            throw DslError("syntax error: empty statement", op.line, op.column);
        }
        if (op.kind != TokKind::word) {
            throw DslError("syntax error: expected an op, found '" + op.text + "'", op.line, op.column);
        }
        std::vector<Token> args;
        ++i;
        while (tokens[i].kind != TokKind::semicolon && tokens[i].kind != TokKind::end) args.push_back(tokens[i++]);
        program.steps.push_back(parse_statement(op, args));
        if (tokens[i].kind == TokKind::semicolon) ++i;
    }
    return program;
}

void validate(const Program& program) {
    for (const Step& step : program.steps) {
        if (const auto* s = std::get_if<ScaleStep>(&step); s && s->mode == ScaleMode::constant) {
            if (!std::isfinite(s->constant)) throw std::invalid_argument("non-finite literal in const scale");
            if (s->constant == 0.0) throw std::invalid_argument("const scale must be nonzero");
        }
        if (const auto* a = std::get_if<AddStep>(&step); a && !a->anchor && !is_finite(a->offset)) {
            throw std::invalid_argument("non-finite literal in add");
        }
    }
}

CoordMatrix eval(const Program& program, const CoordMatrix& input) {
    if (input.empty()) return input;
    CoordMatrix ref = input;
    saturate(ref);
    EvalState s{ref, ref, {0, ref.size()}};
    for (const Step& step : program.steps) {
        std::visit(
            [&s](const auto& st) {
                using T = std::decay_t<decltype(st)>;
                if constexpr (std::is_same_v<T, WindowStep>) {
                    s.window = window_for(st.mode, s.ref.size());
                } else if constexpr (std::is_same_v<T, TranslateStep>) {
                    kernels::translate(s.cur.xs(), s.cur.ys(), anchor_value(st.anchor, s));
                } else if constexpr (std::is_same_v<T, MirrorStep>) {
                    kernels::mirror(s.cur.xs(), s.cur.ys(), anchor_value(st.anchor, s));
                } else if constexpr (std::is_same_v<T, ScaleStep>) {
                    kernels::divide(s.cur.xs(), s.cur.ys(), scale_denominator(st, s));
                } else if constexpr (std::is_same_v<T, MapStep>) {
                    apply_map(st.fn, s.cur);
                } else if constexpr (std::is_same_v<T, AddStep>) {
                    kernels::add(s.cur.xs(), s.cur.ys(), st.anchor ? anchor_value(*st.anchor, s) : st.offset);
                } else {
                    kernels::clip_unit(s.cur.xs(), s.cur.ys());
                }
            },
            step);
        saturate(s.cur);
    }
    return std::move(s.cur);
}

Projection as_projection(Program program) {
    return [p = std::move(program)](const CoordMatrix& m) { return eval(p, m); };
}

const Program& builtin_program(std::string_view name) {
    static const std::array<std::pair<std::string_view, Program>, 8> table{{
        {"identity", Program{}},
        {"seed", parse("window exclude_first; translate min; scale range_max; clip_unit")},
        {"tsp1k", parse("window exclude_first; mirror max; scale range_max; add max; clip_unit")},
        {"tsp5k", parse("window exclude_first; translate min; map tanh; scale range_max; clip_unit")},
        {"tsp10k", parse("window exclude_first; translate mid; scale range_max; add 0.5 0.5; clip_unit")},
        {"cvrp1k", parse("window all; translate depot; scale norm_max; add depot")},
        {"cvrp5k", parse("window all; translate depot; scale sqrt_norm_max; add depot")},
        {"cvrp10k", parse("window all; translate depot; map rexpm1; scale norm_max; add depot")},
    }};
    for (const auto& [n, p] : table) {
        if (n == name) return p;
    }
    throw std::invalid_argument("no DSL encoding for strategy '" + std::string(name) + "'");
}

Program random_program(std::uint64_t seed) {
    return first_valid(seed, [](std::mt19937_64& rng) {
        Program p;
        std::uniform_int_distribution<int> len(2, 6);
        const int n = len(rng);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        if (u(rng) < 0.7) p.steps.push_back(WindowStep{u(rng) < 0.7 ? WindowMode::exclude_first : WindowMode::all});
        while (static_cast<int>(p.steps.size()) < n) p.steps.push_back(random_step(rng));
        if (u(rng) < 0.6 && (p.steps.empty() || !std::holds_alternative<ClipStep>(p.steps.back()))) {
            p.steps.push_back(ClipStep{});
        }
        return p;
    });
}

Program crossover(const Program& a, const Program& b, std::uint64_t seed) {
    return first_valid(seed, [&](std::mt19937_64& rng) {
        std::uniform_int_distribution<std::size_t> cut_a(0, a.steps.size());
        std::uniform_int_distribution<std::size_t> cut_b(0, b.steps.size());
        const std::size_t i = cut_a(rng);
        const std::size_t j = cut_b(rng);
        Program p;
        p.steps.assign(a.steps.begin(), a.steps.begin() + static_cast<std::ptrdiff_t>(i));
        p.steps.insert(p.steps.end(), b.steps.begin() + static_cast<std::ptrdiff_t>(j), b.steps.end());
        return p;
    });
}

Program replace_step(const Program& p, std::uint64_t seed) {
    return first_valid(seed, [&](std::mt19937_64& rng) {
        Program out = p;
        if (out.steps.empty()) {
            out.steps.push_back(random_step(rng));
            return out;
        }
        std::uniform_int_distribution<std::size_t> pos(0, out.steps.size() - 1);
        out.steps[pos(rng)] = random_step(rng);
        return out;
    });
}

Program perturb_consts(const Program& p, std::uint64_t seed) {
    return first_valid(seed, [&](std::mt19937_64& rng) {
        std::uniform_real_distribution<double> factor(0.5, 2.0);
        Program out = p;
        for (Step& step : out.steps) {
            if (auto* s = std::get_if<ScaleStep>(&step); s && s->mode == ScaleMode::constant) {
                s->constant *= factor(rng);
            } else if (auto* a = std::get_if<AddStep>(&step); a && !a->anchor) {
                a->offset.x *= factor(rng);
                a->offset.y *= factor(rng);
            }
        }
        return out;
    });
}

Program mutate(const Program& p, MutationOp op, std::uint64_t seed, const Program* other) {
    switch (op) {
        case MutationOp::fresh: return random_program(seed);
        case MutationOp::crossover: return crossover(p, other ? *other : p, seed);
        case MutationOp::replace_step: return replace_step(p, seed);
        case MutationOp::perturb_consts: return perturb_consts(p, seed);
    }
    return p;
}

std::string_view grammar_text() {
    return R"(program  := stmt (";" stmt)*
stmt     := "window" ("all" | "exclude_first")
          | "translate" anchor | "mirror" anchor
          | "scale" ("range_max" | "norm_max" | "sqrt_norm_max" | "const" NUMBER)
          | "map" ("tanh" | "expm1" | "identity" | "rexpm1")
          | "add" (anchor | NUMBER NUMBER)
          | "clip_unit"
anchor   := "min" | "max" | "mid" | "centroid" | "first" | "last" | "depot"

Semantics: rows are [first/depot | k candidates | current]. Steps rewrite the
coordinates in order. Anchors and range_max are statistics of the ORIGINAL input
over the current window (default all rows; exclude_first drops row 0).
translate a: v-a; mirror a: a-v; add: v+a; scale: v/d (zero d becomes 1);
norm_max: largest |v| of the current rows; map rexpm1: radial expm1 of |v|;
clip_unit clamps to [0,1].)";
}

StrategyFile read_strategy_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open strategy file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("malformed strategy file " + path + ": " + e.what());
    }
    StrategyFile f;
    try {
        f.name = j.at("name").get<std::string>();
        f.source = j.at("source").get<std::string>();
        f.description = j.value("description", std::string{});
        f.created_by = j.value("created_by", std::string{});
        if (j.contains("fitness") && !j.at("fitness").is_null()) f.fitness = j.at("fitness").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("malformed strategy file " + path + ": " + e.what());
    }
    return f;
}

void write_strategy_file(const StrategyFile& file, const std::string& path) {
    nlohmann::json j;
    j["name"] = file.name;
    j["description"] = file.description;
    j["source"] = file.source;
    j["created_by"] = file.created_by;
    if (file.fitness) j["fitness"] = *file.fitness;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write strategy file " + path);
    out << j.dump(2) << '\n';
}

}  // namespace routeproj::dsl
