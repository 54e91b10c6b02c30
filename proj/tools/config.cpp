#include "config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "tabex/errors.hpp"

namespace tabex::cli {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string unquote(const std::string& raw) {
    if (raw.size() >= 2 && (raw.front() == '"' || raw.front() == '\'') &&
        raw.back() == raw.front()) {
        std::string out;
        for (std::size_t i = 1; i + 1 < raw.size(); ++i) {
            if (raw[i] == '\\' && i + 2 < raw.size()) {
                ++i;
                switch (raw[i]) {
                    case 'n': out.push_back('\n'); break;
                    case 't': out.push_back('\t'); break;
                    default: out.push_back(raw[i]);
                }
            } else {
                out.push_back(raw[i]);
            }
        }
        return out;
    }
    return raw;
}

long to_int(const std::string& value, const std::string& key, const std::string& origin) {
    try {
        return std::stol(value);
    } catch (...) {
        throw Error(ErrorCode::ConfigError, origin + ": " + key + " must be an integer");
    }
}

double to_double(const std::string& value, const std::string& key, const std::string& origin) {
    try {
        return std::stod(value);
    } catch (...) {
        throw Error(ErrorCode::ConfigError, origin + ": " + key + " must be a number");
    }
}

void apply_backend_key(BackendSpec& spec, const std::string& key, const std::string& value,
                       const std::string& origin) {
    if (key == "kind") {
        if (value == "http") spec.kind = BackendKind::http;
        else if (value == "replay") spec.kind = BackendKind::replay;
        else if (value == "fixed") spec.kind = BackendKind::fixed;
        else throw Error(ErrorCode::ConfigError, origin + ": unknown backend kind " + value);
    } else if (key == "endpoint") {
        spec.endpoint = value;
    } else if (key == "model") {
        spec.model_name = value;
    } else if (key == "concurrency") {
        spec.max_concurrency = static_cast<int>(to_int(value, key, origin));
    } else if (key == "timeout_ms") {
        spec.timeout = std::chrono::milliseconds(to_int(value, key, origin));
    } else if (key == "retries") {
        spec.retries = static_cast<int>(to_int(value, key, origin));
    } else if (key == "path" || key == "replay_path") {
        spec.replay_path = value;
    } else if (key == "response" || key == "fixed_response") {
        spec.fixed_response = value;
    } else if (key == "temperature") {
        spec.temperature = to_double(value, key, origin);
    } else if (key == "max_response_chars") {
        spec.max_response_chars = static_cast<std::size_t>(to_int(value, key, origin));
    } else {
        throw Error(ErrorCode::ConfigError, origin + ": unknown backend key " + key);
    }
}

}  // namespace

const BackendSpec& Config::require_backend(const std::string& name) const {
    auto it = backends.find(name);
    if (it == backends.end()) {
        throw Error(ErrorCode::ConfigError, "backend '" + name + "' is not defined");
    }
    return it->second;
}

Config parse_config(const std::string& text, const std::string& origin) {
    Config config;
    std::istringstream in(text);
    std::string line;
    std::string section;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string where = origin + ":" + std::to_string(line_no);
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[') {
            if (t.back() != ']') throw Error(ErrorCode::ConfigError, where + ": bad section");
            section = trim(t.substr(1, t.size() - 2));
            if (section.rfind("backend.", 0) == 0) {
                const std::string name = section.substr(8);
                if (name.empty()) {
                    throw Error(ErrorCode::ConfigError, where + ": backend needs a name");
                }
                config.backends[name].name = name;
            } else {
                throw Error(ErrorCode::ConfigError, where + ": unknown section " + section);
            }
            continue;
        }
        const std::size_t eq = t.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorCode::ConfigError, where + ": expected key = value");
        }
        const std::string key = trim(t.substr(0, eq));
        std::string raw = trim(t.substr(eq + 1));
        if (!raw.empty() && raw[0] != '"' && raw[0] != '\'') {
            const std::size_t hash = raw.find('#');
            if (hash != std::string::npos) raw = trim(raw.substr(0, hash));
        }
        const std::string value = unquote(raw);

        if (section.empty()) {
            if (key == "seed") config.seed = static_cast<std::uint64_t>(to_int(value, key, where));
            else if (key == "threshold") config.threshold = to_double(value, key, where);
            else if (key == "concurrency") config.concurrency = static_cast<int>(to_int(value, key, where));
            else if (key == "max_repair_rounds") config.max_repair_rounds = static_cast<int>(to_int(value, key, where));
            else throw Error(ErrorCode::ConfigError, where + ": unknown key " + key);
        } else {
            const std::string name = section.substr(8);
            apply_backend_key(config.backends[name], key, value, where);
        }
    }
    return config;
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ConfigError, "cannot open config " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), path);
}

}  // namespace tabex::cli
