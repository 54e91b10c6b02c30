#include "tabex/perturb.hpp"

#include <string_view>

#include <json.hpp>

#include "tabex/errors.hpp"
#include "tabex/html.hpp"
#include "tabex/rng.hpp"

namespace tabex {

namespace {

bool needs_quoting(std::string_view text) {
    for (char c : text) {
        for (char sep : kCsvSeparators) {
            if (c == sep) return true;
        }
        if (c == '"' || c == '\n' || c == '\r') return true;
    }
    return false;
}

std::string csv_field(std::string_view text) {
    if (!needs_quoting(text)) return std::string(text);
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += '"';
    return out;
}

std::string junk_line(Rng& rng) {
    static constexpr std::string_view kAlphabet =
        "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
    const std::size_t n_tokens = 2 + rng.below(4);  // 2..5 tokens
    std::string out;
    for (std::size_t t = 0; t < n_tokens; ++t) {
        if (t > 0) out.push_back(' ');
        const std::size_t len = 3 + rng.below(6);  // 3..8 chars
        for (std::size_t k = 0; k < len; ++k) {
            out.push_back(kAlphabet[rng.below(kAlphabet.size())]);
        }
    }
    return out;
}

bool is_header_row(const TableGrid& grid, int r) {
    if (grid.n_cols == 0) return false;
    for (int c = 0; c < grid.n_cols; ++c) {
        if (!grid.at(r, c).header) return false;
    }
    return true;
}

}  // namespace

std::string flatten_clipboard(const TableGrid& grid) {
    std::string out;
    for (int r = 0; r < grid.n_rows; ++r) {
        if (r > 0) out.push_back('\n');
        bool first = true;
        for (int c = 0; c < grid.n_cols; ++c) {
            const GridCell& cell = grid.at(r, c);
            if (!cell.anchor() || cell.text.empty()) continue;
            if (!first) out.push_back(' ');
            out += cell.text;
            first = false;
        }
    }
    return out;
}

std::string flatten_clipboard(const TableTree& tree) {
    return flatten_clipboard(to_grid(tree));
}

std::string make_noisy_csv(const TableGrid& grid, const PerturbConfig& cfg) {
    if (grid.has_spans()) {
        throw Error(ErrorCode::HasSpans, "noisy CSV has no span representation");
    }
    Rng rng(cfg.seed);

    std::string out;
    if (rng.chance(cfg.junk_line_probability)) {
        out += junk_line(rng);
        out.push_back('\n');
    }
    for (int r = 0; r < grid.n_rows; ++r) {
        for (int c = 0; c < grid.n_cols; ++c) {
            if (c > 0) {
                char sep = ',';
                if (rng.chance(cfg.separator_flip_probability)) {
                    sep = kCsvSeparators[rng.below(4)];
                }
                out.push_back(sep);
            }
            out += csv_field(grid.at(r, c).text);
        }
        out.push_back('\n');
    }
    if (rng.chance(cfg.junk_line_probability)) {
        out += junk_line(rng);
        out.push_back('\n');
    }
    return out;
}

std::string make_json(const TableGrid& grid) {
    if (grid.has_spans()) {
        throw Error(ErrorCode::HasSpans, "JSON rows have no span representation");
    }
    if (grid.n_rows == 0 || !is_header_row(grid, 0)) {
        throw Error(ErrorCode::NoHeader, "first row is not a header row");
    }

    std::vector<std::string> keys(static_cast<std::size_t>(grid.n_cols));
    std::vector<int> seen_count;
    for (int c = 0; c < grid.n_cols; ++c) {
        std::string key = grid.at(0, c).text;
        int occurrence = 1;
        for (int prev = 0; prev < c; ++prev) {
            if (grid.at(0, prev).text == grid.at(0, c).text) ++occurrence;
        }
        if (occurrence > 1) key += "#" + std::to_string(occurrence);
        keys[static_cast<std::size_t>(c)] = std::move(key);
    }

    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (int r = 1; r < grid.n_rows; ++r) {
        nlohmann::ordered_json row = nlohmann::ordered_json::object();
        for (int c = 0; c < grid.n_cols; ++c) {
            row[keys[static_cast<std::size_t>(c)]] = grid.at(r, c).text;
        }
        rows.push_back(std::move(row));
    }
    return rows.dump(-1, ' ', false, nlohmann::ordered_json::error_handler_t::replace);
}

RobustnessSets sample_robustness_set(const std::vector<Task>& tasks, std::size_t n,
                                     std::uint64_t seed, const PerturbConfig& cfg) {
    Rng rng(seed);
    RobustnessSets out;
    for (std::size_t idx : rng.sample_indices(tasks.size(), n)) {
        const Task& task = tasks[idx];
        TableGrid grid;
        try {
            grid = to_grid(parse_table(task.ground_truth_html));
        } catch (const Error&) {
            continue;  // unusable ground truth
        }
        if (grid.has_spans()) continue;

        PerturbConfig task_cfg = cfg;
        task_cfg.seed = mix_seed(seed, task.id);
        Task csv_task = task;
        csv_task.id += "#csv";
        csv_task.raw_text = make_noisy_csv(grid, task_cfg);
        out.csv_tasks.push_back(std::move(csv_task));

        if (grid.n_rows > 0 && is_header_row(grid, 0)) {
            Task json_task = task;
            json_task.id += "#json";
            json_task.raw_text = make_json(grid);
            out.json_tasks.push_back(std::move(json_task));
        }
    }
    return out;
}

}  // namespace tabex
