#include <cstdlib>
#include <sstream>

#include <httplib.h>
#include <json.hpp>

#include "routeproj/generators.hpp"

namespace routeproj::evolution {

using nlohmann::json;

namespace {

const char* kTask =
    "I need help designing an innovative coordinate normalize strategy to normalize the coordinates of a "
    "local subgraph of nodes, aiming to maximize the final negative gap. The input is a matrix with rows "
    "[anchor | k candidates | current] and the result must have the same number of rows. The strategy is "
    "written in the small projection language described below.";

void append_parent(std::ostringstream& out, const Parent& p) {
    out << p.description << "\n\n```\n" << p.source << "\n```\n";
}

}  // namespace

std::string build_prompt(const OffspringRequest& req) {
    std::ostringstream out;
    out << kTask << "\n\n";
    if (operator_arity(req.op) == 2) {
        out << "I have " << req.parents.size() << " existing algorithms with their codes as follows:\n\n";
        for (std::size_t i = 0; i < req.parents.size(); ++i) {
            out << "No. " << (i + 1) << " algorithm and the corresponding code are:\n\n";
            append_parent(out, req.parents[i]);
            out << '\n';
        }
    } else {
        out << "I have one algorithm with its code as follows. Algorithm description:\n\n";
        if (!req.parents.empty()) append_parent(out, req.parents.front());
        out << '\n';
    }
    switch (req.op) {
        case Operator::e1:
            out << "Please help me create a new algorithm that has a totally different form from the given ones.\n\n"
                   "1. First, describe your new algorithm and main steps in one sentence. The description must be "
                   "inside within boxed {}.\n\n2. Next, implement it in the projection language.\n\n";
            break;
        case Operator::e2:
            out << "Please help me create a new algorithm that has a totally different form from the given ones but "
                   "can be motivated from them.\n\n1. Firstly, identify the common backbone idea in the provided "
                   "algorithms.\n\n2. Secondly, based on the backbone idea describe your new algorithm in one "
                   "sentence. The description must be inside within boxed {}.\n\n3. Thirdly, implement it in the "
                   "projection language.\n\n";
            break;
        case Operator::m1:
            out << "Please assist me in creating a new algorithm that has a different form but can be a modified "
                   "version of the algorithm provided.\n\n1. First, describe your new algorithm and main steps in "
                   "one sentence. The description must be inside within boxed {}.\n\n2. Next, implement it in the "
                   "projection language.\n\n";
            break;
        case Operator::m2:
            out << "Please identify the main algorithm parameters and assist me in creating a new algorithm that has "
                   "different parameter settings for the strategy provided.\n\n1. First, describe your new algorithm "
                   "and main steps in one sentence. The description must be inside within boxed {}.\n\n2. Next, "
                   "implement it in the projection language.\n\n";
            break;
    }
    out << "Projection language:\n\n" << dsl::grammar_text() << "\n\n";
    out << "Template program:\n\n```\n" << dsl::builtin_program("seed").source() << "\n```\n\n";
    out << "Return the program inside a single ``` fenced block and nothing else after it.\n";
    return out.str();
}

std::optional<Draft> parse_reply(std::string_view reply) {
    const auto fence = reply.find("```");
    if (fence == std::string_view::npos) return std::nullopt;
    auto body = reply.find('\n', fence);
    if (body == std::string_view::npos) return std::nullopt;
    ++body;
    const auto close = reply.find("```", body);
    if (close == std::string_view::npos) return std::nullopt;

    Draft d;
    d.source = std::string(reply.substr(body, close - body));
    auto open = reply.find("boxed{");
    if (open != std::string_view::npos) {
        open += 5;
    } else {
        open = reply.find('{');
        if (open > fence) open = std::string_view::npos;
    }
    if (open != std::string_view::npos) {
        int depth = 0;
        for (std::size_t i = open; i < reply.size(); ++i) {
            if (reply[i] == '{') {
                ++depth;
            } else if (reply[i] == '}' && --depth == 0) {
                d.description = std::string(reply.substr(open + 1, i - open - 1));
                break;
            }
        }
    }
    return d;
}

LlmConfig LlmConfig::from_env() {
    LlmConfig cfg;
    const char* endpoint = std::getenv("LLM_ENDPOINT");
    if (endpoint == nullptr || *endpoint == '\0') {
        throw std::invalid_argument("LLM_ENDPOINT is not set (required by the llm generator)");
    }
    cfg.endpoint = endpoint;
    if (const char* key = std::getenv("LLM_API_KEY")) cfg.api_key = key;
    if (const char* model = std::getenv("LLM_MODEL"); model != nullptr && *model != '\0') cfg.model = model;
    return cfg;
}

LlmGenerator::LlmGenerator(LlmConfig config) : config_(std::move(config)) {
    if (config_.endpoint.find("://") == std::string::npos) {
        throw std::invalid_argument("LLM endpoint must be an http:// or https:// URL");
    }
    if (config_.retries < 0) throw std::invalid_argument("LLM retries must be >= 0");
}

std::string LlmGenerator::post(const std::string& body) const {
    const auto scheme_end = config_.endpoint.find("://") + 3;
    const auto path_start = config_.endpoint.find('/', scheme_end);
    const std::string origin = config_.endpoint.substr(0, path_start);
    const std::string path = path_start == std::string::npos ? "/v1/chat/completions" : config_.endpoint.substr(path_start);

    httplib::Client client(origin);
    if (!client.is_valid()) throw GeneratorError("cannot create HTTP client for " + origin);
    const auto secs = static_cast<time_t>(config_.timeout.count());
    client.set_connection_timeout(secs, 0);
    client.set_read_timeout(secs, 0);
    client.set_write_timeout(secs, 0);
    httplib::Headers headers;
    if (!config_.api_key.empty()) headers.emplace("Authorization", "Bearer " + config_.api_key);

    std::string last_error;
    for (int attempt = 0; attempt <= config_.retries; ++attempt) {
        auto res = client.Post(path, headers, body, "application/json");
        if (!res) {
            last_error = "request failed: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status != 200) {
            last_error = "HTTP status " + std::to_string(res->status);
            continue;
        }
        try {
            const json reply = json::parse(res->body);
            return reply.at("choices").at(0).at("message").at("content").get<std::string>();
        } catch (const json::exception& e) {
            last_error = std::string("unexpected response body: ") + e.what();
        }
    }
    throw GeneratorError("LLM endpoint " + config_.endpoint + ": " + last_error);
}

std::optional<Draft> LlmGenerator::generate(const OffspringRequest& req) {
    const json body = {
        {"model", config_.model},
        {"temperature", config_.temperature},
        {"messages", json::array({{{"role", "user"}, {"content", build_prompt(req)}}})},
    };
    return parse_reply(post(body.dump()));
}

}  // namespace routeproj::evolution
