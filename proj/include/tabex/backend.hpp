#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>

#include "tabex/prompts.hpp"

namespace tabex {

enum class BackendKind { http, replay, fixed };

std::string_view backend_kind_name(BackendKind kind);

struct BackendSpec {
    BackendKind kind = BackendKind::fixed;
    std::string name = "backend";
    std::string endpoint;      // http: full chat-completions URL
    std::string model_name;
    int max_concurrency = 4;
    std::chrono::milliseconds timeout{60000};
    int retries = 3;           // total attempts
    std::string replay_path;   // replay: JSONL of {key, response}
    std::string fixed_response;
    double temperature = 0.0;
    std::size_t max_response_chars = 1 << 20;  // oversize outputs get truncated
};

// Environment variable carrying the API key for a named http backend:
// uppercased name, non-alphanumerics mapped to '_', suffix "_API_KEY".
std::string api_key_env_var(std::string_view backend_name);

// A usable backend instance (replay files are loaded once).
class Backend {
public:
    explicit Backend(BackendSpec spec);

    // Returns the model's text for the prompt.  The key hint (usually the
    // task id) addresses replay entries; replay falls back to the prompt
    // hash.  Throws Error(Timeout|HttpStatus|ReplayMiss|ExhaustedRetries).
    std::string complete(const PromptPair& prompt, std::string_view key_hint = {}) const;

    const BackendSpec& spec() const { return spec_; }

private:
    std::string complete_http(const PromptPair& prompt) const;

    BackendSpec spec_;
    std::unordered_map<std::string, std::string> replay_;
};

// One-shot form matching the batch API surface.
std::string complete(const BackendSpec& backend, const PromptPair& prompt,
                     std::string_view key_hint = {});

// Replay key derived from a prompt (used when no key hint matches).
std::string prompt_replay_key(const PromptPair& prompt);

// Test/recording helper: serialize one replay entry.
std::string replay_entry_json(std::string_view key, std::string_view response);

}  // namespace tabex
