#include "tabex/backend.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "tabex/errors.hpp"
#include "tabex/task_io.hpp"
#include "tabex/text.hpp"

namespace tabex {

namespace {

using nlohmann::json;

struct UrlParts {
    std::string base;  // scheme://host[:port]
    std::string path;  // /v1/chat/completions
};

UrlParts split_url(const std::string& url) {
    const std::size_t scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
        throw Error(ErrorCode::ConfigError, "endpoint URL needs a scheme: " + url);
    }
    const std::size_t path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

std::string truncated(std::string text, std::size_t limit) {
    if (text.size() > limit) text.resize(limit);
    return text;
}

}  // namespace

std::string_view backend_kind_name(BackendKind kind) {
    switch (kind) {
        case BackendKind::http: return "http";
        case BackendKind::replay: return "replay";
        case BackendKind::fixed: return "fixed";
    }
    return "fixed";
}

std::string api_key_env_var(std::string_view backend_name) {
    std::string out;
    for (char c : backend_name) {
        out.push_back(std::isalnum(static_cast<unsigned char>(c))
                          ? static_cast<char>(std::toupper(static_cast<unsigned char>(c)))
                          : '_');
    }
    return out + "_API_KEY";
}

std::string prompt_replay_key(const PromptPair& prompt) {
    return to_hex(fnv1a64(prompt.system + '\x1f' + prompt.user));
}

std::string replay_entry_json(std::string_view key, std::string_view response) {
    json j;
    j["key"] = std::string(key);
    j["response"] = std::string(response);
    return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

Backend::Backend(BackendSpec spec) : spec_(std::move(spec)) {
    if (spec_.max_concurrency < 1) {
        throw Error(ErrorCode::ConfigError,
                    "backend '" + spec_.name + "' needs max_concurrency >= 1");
    }
    if (spec_.kind == BackendKind::http && spec_.endpoint.empty()) {
        throw Error(ErrorCode::ConfigError,
                    "http backend '" + spec_.name + "' needs an endpoint");
    }
    if (spec_.kind != BackendKind::replay) return;
    std::ifstream in(spec_.replay_path);
    if (!in) {
        throw Error(ErrorCode::ConfigError, "cannot open replay file " + spec_.replay_path);
    }
    for_each_jsonl_line(in, [&](std::size_t line_no, const std::string& line) {
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw Error(ErrorCode::IoError, spec_.replay_path + " line " +
                                                std::to_string(line_no) + ": " + e.what());
        }
        replay_[j.value("key", "")] = j.value("response", "");
    });
}

std::string Backend::complete(const PromptPair& prompt, std::string_view key_hint) const {
    switch (spec_.kind) {
        case BackendKind::fixed:
            return truncated(spec_.fixed_response, spec_.max_response_chars);
        case BackendKind::replay: {
            if (!key_hint.empty()) {
                auto it = replay_.find(std::string(key_hint));
                if (it != replay_.end()) return truncated(it->second, spec_.max_response_chars);
            }
            auto it = replay_.find(prompt_replay_key(prompt));
            if (it != replay_.end()) return truncated(it->second, spec_.max_response_chars);
            throw Error(ErrorCode::ReplayMiss,
                        "no recorded response for key '" + std::string(key_hint) + "' or hash " +
                            prompt_replay_key(prompt));
        }
        case BackendKind::http:
            return truncated(complete_http(prompt), spec_.max_response_chars);
    }
    throw Error(ErrorCode::ConfigError, "unknown backend kind");
}

std::string Backend::complete_http(const PromptPair& prompt) const {
    const UrlParts url = split_url(spec_.endpoint);

    json body;
    body["model"] = spec_.model_name;
    body["messages"] = json::array({
        json{{"role", "system"}, {"content", prompt.system}},
        json{{"role", "user"}, {"content", prompt.user}},
    });
    body["temperature"] = spec_.temperature;
    const std::string payload = body.dump(-1, ' ', false, json::error_handler_t::replace);

    httplib::Headers headers;
    if (const char* key = std::getenv(api_key_env_var(spec_.name).c_str())) {
        headers.emplace("Authorization", std::string("Bearer ") + key);
    }

    const int attempts = std::max(1, spec_.retries);
    std::string last_failure;
    bool last_was_timeout = false;
    int last_status = 0;

    for (int attempt = 0; attempt < attempts; ++attempt) {
        if (attempt > 0) {
            std::this_thread::sleep_for(std::chrono::milliseconds(250) * (1 << (attempt - 1)));
        }
        httplib::Client client(url.base);
        client.set_connection_timeout(spec_.timeout);
        client.set_read_timeout(spec_.timeout);
        client.set_write_timeout(spec_.timeout);

        httplib::Result res = client.Post(url.path, headers, payload, "application/json");
        if (!res) {
            last_was_timeout = res.error() == httplib::Error::ConnectionTimeout ||
                               res.error() == httplib::Error::Read ||
                               res.error() == httplib::Error::Write;
            last_failure = httplib::to_string(res.error());
            last_status = 0;
            continue;
        }
        if (res->status < 200 || res->status >= 300) {
            last_status = res->status;
            last_failure = "HTTP " + std::to_string(res->status);
            last_was_timeout = false;
            // client errors other than rate limiting will not improve on retry
            if (res->status >= 400 && res->status < 500 && res->status != 429) {
                throw Error(ErrorCode::HttpStatus, last_failure);
            }
            continue;
        }
        try {
            json reply = json::parse(res->body);
            return reply.at("choices").at(0).at("message").at("content").get<std::string>();
        } catch (const json::exception& e) {
            throw Error(ErrorCode::HttpStatus,
                        std::string("malformed completion response: ") + e.what());
        }
    }

    if (attempts == 1) {
        if (last_was_timeout) throw Error(ErrorCode::Timeout, last_failure);
        if (last_status != 0) throw Error(ErrorCode::HttpStatus, last_failure);
    }
    throw Error(ErrorCode::ExhaustedRetries,
                std::to_string(attempts) + " attempts failed; last: " + last_failure);
}

std::string complete(const BackendSpec& backend, const PromptPair& prompt,
                     std::string_view key_hint) {
    return Backend(backend).complete(prompt, key_hint);
}

}  // namespace tabex
