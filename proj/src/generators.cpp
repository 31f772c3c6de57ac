#include "routeproj/generators.hpp"

#include <stdexcept>

namespace routeproj::evolution {

std::string_view operator_name(Operator op) noexcept {
    switch (op) {
        case Operator::e1: return "E1";
        case Operator::e2: return "E2";
        case Operator::m1: return "M1";
        case Operator::m2: return "M2";
    }
    return "E1";
}

Operator parse_operator(std::string_view text) {
    for (Operator op : kOperatorCycle) {
        if (text == operator_name(op)) return op;
    }
    throw std::invalid_argument("unknown operator '" + std::string(text) + "' (expected E1, E2, M1, M2)");
}

std::size_t operator_arity(Operator op) noexcept { return op == Operator::e1 || op == Operator::e2 ? 2 : 1; }

std::optional<Draft> MockGenerator::generate(const OffspringRequest& req) {
    if (req.parents.size() < operator_arity(req.op)) {
        throw std::invalid_argument("operator " + std::string(operator_name(req.op)) + " needs " +
                                    std::to_string(operator_arity(req.op)) + " parents");
    }
    dsl::Program child;
    std::string what;
    switch (req.op) {
        case Operator::e1:
            child = dsl::random_program(req.seed);
            what = "fresh program";
            break;
        case Operator::e2:
            child = dsl::crossover(dsl::parse(req.parents[0].source), dsl::parse(req.parents[1].source), req.seed);
            what = "crossover of two parents";
            break;
        case Operator::m1:
            child = dsl::replace_step(dsl::parse(req.parents[0].source), req.seed);
            what = "one step replaced";
            break;
        case Operator::m2:
            child = dsl::perturb_consts(dsl::parse(req.parents[0].source), req.seed);
            what = "constants perturbed";
            break;
    }
    return Draft{std::string(operator_name(req.op)) + ": " + what, child.source()};
}

std::unique_ptr<Generator> make_generator(const std::string& name) {
    if (name == "mock") return std::make_unique<MockGenerator>();
    if (name == "llm") return std::make_unique<LlmGenerator>(LlmConfig::from_env());
    throw std::invalid_argument("unknown generator '" + name + "' (expected mock or llm)");
}

}  // namespace routeproj::evolution
