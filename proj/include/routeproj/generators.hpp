#pragma once

// Offspring generators for projection evolution. A generator turns an
// operator tag plus parent programs into a new (description, source) pair.

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "routeproj/dsl.hpp"

namespace routeproj::evolution {

/// E1: a new strategy unlike the parents. E2: a strategy sharing the parents'
/// common idea. M1: structural modification of one parent. M2: same form,
/// different constants.
enum class Operator { e1, e2, m1, m2 };

inline constexpr Operator kOperatorCycle[] = {Operator::e1, Operator::e2, Operator::m1, Operator::m2};

std::string_view operator_name(Operator op) noexcept;  // "E1" ...
Operator parse_operator(std::string_view text);
std::size_t operator_arity(Operator op) noexcept;      // 2 for E1/E2, 1 for M1/M2

struct Parent {
    std::string description;
    std::string source;
    std::optional<double> fitness;
};

struct OffspringRequest {
    Operator op = Operator::e1;
    std::vector<Parent> parents;
    std::uint64_t seed = 0;
};

struct Draft {
    std::string description;
    std::string source;
};

/// Thrown for transport problems (network, HTTP status, timeouts).
class GeneratorError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Generator {
public:
    virtual ~Generator() = default;
    virtual std::string name() const = 0;
    /// Returns std::nullopt when the reply could not be turned into a draft
    /// (counted as a failure). Throws GeneratorError on transport failure.
    virtual std::optional<Draft> generate(const OffspringRequest& request) = 0;
};

/// Deterministic DSL mutators: E1 -> fresh random program, E2 -> crossover,
/// M1 -> replace one step, M2 -> perturb constants.
class MockGenerator final : public Generator {
public:
    std::string name() const override { return "mock"; }
    std::optional<Draft> generate(const OffspringRequest& request) override;
};

struct LlmConfig {
    std::string endpoint;  // e.g. http://127.0.0.1:8000/v1/chat/completions
    std::string api_key;
    std::string model = "gpt-4o-mini";
    double temperature = 1.0;
    std::chrono::seconds timeout{60};
    int retries = 3;

    /// Reads LLM_ENDPOINT, LLM_API_KEY and LLM_MODEL. Throws
    /// std::invalid_argument when LLM_ENDPOINT is unset.
    static LlmConfig from_env();
};

/// Client for an OpenAI-compatible chat completions endpoint.
class LlmGenerator final : public Generator {
public:
    explicit LlmGenerator(LlmConfig config);
    std::string name() const override { return "llm"; }
    std::optional<Draft> generate(const OffspringRequest& request) override;
    const LlmConfig& config() const noexcept { return config_; }

private:
    std::string post(const std::string& body) const;
    LlmConfig config_;
};

/// Prompt for one operator: task description, parent strategies, the DSL
/// grammar and the expected reply format.
std::string build_prompt(const OffspringRequest& request);

/// Extracts the description from "\boxed{...}" (or "{...}") and the program
/// from the first ``` fenced block. std::nullopt when no fence is present.
std::optional<Draft> parse_reply(std::string_view reply);

/// "mock" or "llm" (configured from the environment).
std::unique_ptr<Generator> make_generator(const std::string& name);

}  // namespace routeproj::evolution
