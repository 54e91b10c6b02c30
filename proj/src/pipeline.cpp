#include "tabex/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "tabex/errors.hpp"
#include "tabex/html.hpp"
#include "tabex/rng.hpp"
#include "tabex/text.hpp"

namespace tabex {

namespace {

using nlohmann::json;

std::string dump_safe(const json& j) {
    return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

json verdict_to_json(const ValidityVerdict& v) {
    return json{{"well_formed", v.well_formed},
                {"quality_pass", v.quality_pass},
                {"reason", v.reason}};
}

ValidityVerdict verdict_from_json(const json& j) {
    ValidityVerdict v;
    v.well_formed = j.value("well_formed", false);
    v.quality_pass = j.value("quality_pass", false);
    v.reason = j.value("reason", "");
    return v;
}

json metrics_to_json(const MetricVector& m) {
    return json{{"teds", m.teds},
                {"lev_ted", m.lev_ted},
                {"grits_top_lower", m.grits_top_lower},
                {"grits_top_upper", m.grits_top_upper},
                {"grits_top_mean", m.grits_top_mean},
                {"grits_con_lower", m.grits_con_lower},
                {"grits_con_upper", m.grits_con_upper},
                {"grits_con_mean", m.grits_con_mean},
                {"exact_match", m.exact_match}};
}

MetricVector metrics_from_json(const json& j) {
    MetricVector m;
    m.teds = j.value("teds", 0.0);
    m.lev_ted = j.value("lev_ted", 0.0);
    m.grits_top_lower = j.value("grits_top_lower", 0.0);
    m.grits_top_upper = j.value("grits_top_upper", 0.0);
    m.grits_top_mean = j.value("grits_top_mean", 0.0);
    m.grits_con_lower = j.value("grits_con_lower", 0.0);
    m.grits_con_upper = j.value("grits_con_upper", 0.0);
    m.grits_con_mean = j.value("grits_con_mean", 0.0);
    m.exact_match = j.value("exact_match", false);
    return m;
}

// Wall time of http calls only; replay and fixed backends report zero so
// replayed runs stay byte-identical.
class CallTimer {
public:
    explicit CallTimer(std::int64_t& total_ms) : total_ms_(total_ms) {}

    std::string timed(const Backend& backend, const PromptPair& prompt,
                      std::string_view key_hint) {
        if (backend.spec().kind != BackendKind::http) {
            return backend.complete(prompt, key_hint);
        }
        const auto start = std::chrono::steady_clock::now();
        try {
            std::string out = backend.complete(prompt, key_hint);
            add(start);
            return out;
        } catch (...) {
            add(start);
            throw;
        }
    }

private:
    void add(std::chrono::steady_clock::time_point start) {
        total_ms_ += std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    }

    std::int64_t& total_ms_;
};

}  // namespace

std::string_view mode_name(Mode mode) {
    switch (mode) {
        case Mode::extract_only: return "extract-only";
        case Mode::sd: return "sd";
        case Mode::lift: return "lift";
        case Mode::eeft: return "eeft";
    }
    return "extract-only";
}

std::optional<Mode> mode_from_name(std::string_view name) {
    if (name == "extract-only" || name == "extract_only") return Mode::extract_only;
    if (name == "sd") return Mode::sd;
    if (name == "lift") return Mode::lift;
    if (name == "eeft") return Mode::eeft;
    return std::nullopt;
}

std::string prediction_to_json_line(const Prediction& pred) {
    json j;
    j["task_id"] = pred.task_id;
    j["mode"] = std::string(mode_name(pred.mode));
    if (pred.extractor_output) j["extractor_output"] = *pred.extractor_output;
    j["final_output"] = pred.final_output;
    j["verdict"] = verdict_to_json(pred.verdict);
    j["latency_ms"] = pred.latency_ms;
    j["backend_calls"] = pred.backend_calls;
    if (!pred.error.empty()) j["error"] = pred.error;
    if (pred.metrics) j["metrics"] = metrics_to_json(*pred.metrics);
    return dump_safe(j);
}

Prediction prediction_from_json_line(const std::string& line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::IoError, std::string("bad prediction line: ") + e.what());
    }
    Prediction pred;
    pred.task_id = j.value("task_id", "");
    if (pred.task_id.empty()) throw Error(ErrorCode::IoError, "prediction line missing task_id");
    pred.mode = mode_from_name(j.value("mode", "extract-only")).value_or(Mode::extract_only);
    if (j.contains("extractor_output")) {
        pred.extractor_output = j["extractor_output"].get<std::string>();
    }
    pred.final_output = j.value("final_output", "");
    if (j.contains("verdict")) pred.verdict = verdict_from_json(j["verdict"]);
    pred.latency_ms = j.value("latency_ms", std::int64_t{0});
    pred.backend_calls = j.value("backend_calls", 0);
    pred.error = j.value("error", "");
    if (j.contains("metrics")) pred.metrics = metrics_from_json(j["metrics"]);
    return pred;
}

std::optional<std::string> extract_table_text(std::string_view model_output) {
    const std::string lowered = to_lower_ascii(model_output);
    std::size_t start = std::string::npos;
    for (std::size_t pos = lowered.find("<table"); pos != std::string::npos;
         pos = lowered.find("<table", pos + 1)) {
        const std::size_t after = pos + 6;
        if (after >= lowered.size() || lowered[after] == '>' || lowered[after] == ' ' ||
            lowered[after] == '\t' || lowered[after] == '\n' || lowered[after] == '\r' ||
            lowered[after] == '/') {
            start = pos;
            break;
        }
    }
    if (start == std::string::npos) return std::nullopt;

    int depth = 0;
    std::size_t pos = start;
    while (pos < lowered.size()) {
        const std::size_t open = lowered.find("<table", pos);
        const std::size_t close = lowered.find("</table", pos);
        if (close == std::string::npos) break;
        if (open != std::string::npos && open < close) {
            ++depth;
            pos = open + 6;
            continue;
        }
        --depth;
        if (depth == 0) {
            std::size_t end = lowered.find('>', close);
            if (end == std::string::npos) break;
            return std::string(model_output.substr(start, end + 1 - start));
        }
        pos = close + 7;
    }
    // table opened but never closed: hand back the tail for the parser to judge
    return std::string(model_output.substr(start));
}

namespace {

// The repairer consumes the extracted table when one exists, otherwise the
// raw response (still "a table that may or may not contain errors").
std::string extracted_or_raw(const std::string& response) {
    return extract_table_text(response).value_or(response);
}

}  // namespace

Prediction run_task(const Task& task, Mode mode, const Backend& extractor,
                    const Backend* repairer, const RunOptions& options) {
    const bool needs_repairer = mode == Mode::sd || mode == Mode::lift;
    if (needs_repairer && repairer == nullptr) {
        throw Error(ErrorCode::ConfigError,
                    std::string(mode_name(mode)) + " mode requires a repairer backend");
    }

    Prediction pred;
    pred.task_id = task.id;
    pred.mode = mode;

    std::optional<TableTree> truth;
    try {
        truth = parse_table(task.ground_truth_html);
    } catch (const Error&) {
        truth.reset();  // scoring degrades to well-formedness only
    }
    auto verdict_for = [&](const std::string& candidate) {
        return check_validity(candidate, truth ? &*truth : nullptr, options.quality_threshold);
    };

    CallTimer timer(pred.latency_ms);
    try {
        const PromptPair explicitation =
            render_prompt(PromptKind::explicitation, task.raw_text);
        ++pred.backend_calls;
        const std::string first = timer.timed(extractor, explicitation, task.id);

        if (!needs_repairer) {
            pred.final_output = extracted_or_raw(first);
            pred.verdict = verdict_for(pred.final_output);
            return pred;
        }

        pred.extractor_output = extracted_or_raw(first);
        // a repair failure falls back to the unrepaired extraction
        pred.final_output = *pred.extractor_output;
        std::string current = *pred.extractor_output;
        for (int round = 1; round <= std::max(1, options.max_repair_rounds); ++round) {
            const PromptPair repair =
                render_prompt(PromptKind::repair, task.raw_text, current);
            const std::string key =
                round == 1 ? task.id : task.id + "@r" + std::to_string(round);
            ++pred.backend_calls;
            current = extracted_or_raw(timer.timed(*repairer, repair, key));
            pred.final_output = current;
            pred.verdict = verdict_for(current);
            if (pred.verdict.quality_pass) break;
        }
    } catch (const Error& e) {
        pred.error = e.what();
        pred.verdict = verdict_for(pred.final_output);
        pred.verdict.reason = pred.verdict.well_formed ? pred.verdict.reason : e.code_name();
    }
    return pred;
}

void run_batch(const std::vector<Task>& tasks, Mode mode, const Backend& extractor,
               const Backend* repairer, const BatchOptions& options,
               const std::function<void(const Prediction&)>& sink) {
    const bool needs_repairer = mode == Mode::sd || mode == Mode::lift;
    if (needs_repairer && repairer == nullptr) {
        throw Error(ErrorCode::ConfigError,
                    std::string(mode_name(mode)) + " mode requires a repairer backend");
    }

    int workers = std::max(1, options.concurrency);
    workers = std::min(workers, std::max(1, extractor.spec().max_concurrency));
    if (repairer) workers = std::min(workers, std::max(1, repairer->spec().max_concurrency));
    workers = static_cast<int>(
        std::min<std::size_t>(static_cast<std::size_t>(workers), std::max<std::size_t>(1, tasks.size())));

    std::atomic<std::size_t> next{0};
    std::mutex mu;
    std::map<std::size_t, Prediction> done;  // reorder buffer
    std::size_t write_cursor = 0;
    std::exception_ptr failure;

    auto flush_locked = [&] {
        for (auto it = done.begin(); it != done.end() && it->first == write_cursor;) {
            sink(it->second);
            it = done.erase(it);
            ++write_cursor;
            if (options.progress) options.progress(write_cursor, tasks.size());
        }
    };

    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            try {
                Prediction pred = run_task(tasks[i], mode, extractor, repairer, options.run);
                std::lock_guard<std::mutex> lock(mu);
                if (failure) return;
                done.emplace(i, std::move(pred));
                flush_locked();
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };

    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
}

RepairCorpusSummary build_repair_corpus(
    const std::vector<Task>& tasks, const Backend& extractor, double filter_threshold,
    const std::function<void(const std::string&)>& emit_line) {
    RepairCorpusSummary summary;
    for (const Task& task : tasks) {
        std::optional<TableTree> truth;
        try {
            truth = parse_table(task.ground_truth_html);
        } catch (const Error&) {
            ++summary.dropped;
            continue;
        }

        std::string broken;
        try {
            const PromptPair prompt = render_prompt(PromptKind::explicitation, task.raw_text);
            broken = extracted_or_raw(extractor.complete(prompt, task.id));
        } catch (const Error&) {
            ++summary.dropped;
            continue;
        }

        const ValidityVerdict verdict = check_validity(broken, &*truth, filter_threshold);
        if (!verdict.quality_pass) {
            ++summary.dropped;
            continue;
        }

        const PromptPair repair = render_prompt(PromptKind::repair, task.raw_text, broken);
        json record;
        record["id"] = task.id;
        record["raw_text"] = task.raw_text;
        record["broken_html"] = broken;
        record["ground_truth_html"] = task.ground_truth_html;
        record["messages"] = json::array({
            json{{"role", "system"}, {"content", repair.system}},
            json{{"role", "user"}, {"content", repair.user}},
        });
        record["target"] = task.ground_truth_html;
        emit_line(dump_safe(record));
        ++summary.kept;
    }
    return summary;
}

std::string SplitSummary::to_table() const {
    static constexpr std::string_view kDatasets[4] = {"pubtabnet", "fintabnet", "scitsr",
                                                      "other"};
    std::ostringstream os;
    os << "Dataset      Train    Val   Test\n";
    std::array<std::size_t, 3> totals{};
    for (std::size_t d = 0; d < 4; ++d) {
        const auto& row = counts[d];
        if (row[0] + row[1] + row[2] == 0) continue;
        os << kDatasets[d];
        for (std::size_t pad = kDatasets[d].size(); pad < 10; ++pad) os << ' ';
        for (std::size_t s = 0; s < 3; ++s) {
            std::string v = std::to_string(row[s]);
            for (std::size_t pad = v.size(); pad < 7; ++pad) os << ' ';
            os << v;
            totals[s] += row[s];
        }
        os << '\n';
    }
    os << "total     ";
    for (std::size_t s = 0; s < 3; ++s) {
        std::string v = std::to_string(totals[s]);
        for (std::size_t pad = v.size(); pad < 7; ++pad) os << ' ';
        os << v;
    }
    os << '\n';
    return os.str();
}

std::vector<Task> split_tasks(std::vector<Task> tasks, const SplitSpec& spec,
                              std::uint64_t seed, SplitSummary* summary) {
    if (spec.sizes.has_value() == spec.ratios.has_value()) {
        throw Error(ErrorCode::ConfigError, "specify exactly one of sizes or ratios");
    }
    std::array<std::size_t, 3> sizes{};
    if (spec.sizes) {
        sizes = *spec.sizes;
        if (sizes[0] + sizes[1] + sizes[2] > tasks.size()) {
            throw Error(ErrorCode::ConfigError,
                        "requested split sizes exceed the corpus (" +
                            std::to_string(tasks.size()) + " tasks)");
        }
    } else {
        const auto& r = *spec.ratios;
        if (r[0] < 0 || r[1] < 0 || r[2] < 0 || r[0] + r[1] + r[2] > 1.0 + 1e-9) {
            throw Error(ErrorCode::ConfigError, "ratios must be non-negative and sum to <= 1");
        }
        sizes[0] = static_cast<std::size_t>(r[0] * static_cast<double>(tasks.size()));
        sizes[1] = static_cast<std::size_t>(r[1] * static_cast<double>(tasks.size()));
        sizes[2] = (r[0] + r[1] + r[2] >= 1.0 - 1e-9)
                       ? tasks.size() - sizes[0] - sizes[1]
                       : static_cast<std::size_t>(r[2] * static_cast<double>(tasks.size()));
    }

    Rng rng(seed);
    rng.shuffle(tasks);

    SplitSummary local;
    const std::size_t total = sizes[0] + sizes[1] + sizes[2];
    std::vector<Task> out;
    out.reserve(total);
    for (std::size_t i = 0; i < total; ++i) {
        Task task = std::move(tasks[i]);
        const std::size_t split_index = i < sizes[0] ? 0 : (i < sizes[0] + sizes[1] ? 1 : 2);
        task.split = split_index == 0 ? Split::train
                                      : (split_index == 1 ? Split::val : Split::test);
        local.counts[static_cast<std::size_t>(task.source_dataset)][split_index] += 1;
        out.push_back(std::move(task));
    }
    local.assigned = total;
    local.left_out = tasks.size() - total;
    if (summary) *summary = local;
    return out;
}

}  // namespace tabex
