#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "tabex/backend.hpp"

namespace tabex::cli {

// Key-value config file, TOML-style subset: top-level defaults plus one
// [backend.NAME] section per backend.
//
//   seed = 7
//   threshold = 0.5
//   concurrency = 4
//
//   [backend.extractor]
//   kind = "http"
//   endpoint = "https://api.openai.com/v1/chat/completions"
//   model = "gpt-4o"
//   timeout_ms = 60000
//   retries = 3
//
// API keys are never read from the file; an http backend named NAME reads
// the environment variable NAME_API_KEY (uppercased, non-alphanumerics
// replaced by '_').
struct Config {
    std::map<std::string, BackendSpec> backends;
    std::uint64_t seed = 0;
    double threshold = 0.5;
    int concurrency = 4;
    int max_repair_rounds = 1;

    const BackendSpec& require_backend(const std::string& name) const;
};

Config load_config(const std::string& path);
Config parse_config(const std::string& text, const std::string& origin);

}  // namespace tabex::cli
