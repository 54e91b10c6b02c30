#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tabex/backend.hpp"
#include "tabex/metrics.hpp"
#include "tabex/table.hpp"
#include "tabex/validity.hpp"

namespace tabex {

enum class Mode { extract_only, sd, lift, eeft };

std::string_view mode_name(Mode mode);
std::optional<Mode> mode_from_name(std::string_view name);

// One pipeline result.  extract-only and eeft make exactly one backend call;
// sd and lift make an explicitation call followed by a repair call.
struct Prediction {
    std::string task_id;
    Mode mode = Mode::extract_only;
    std::optional<std::string> extractor_output;  // table handed to the repairer
    std::string final_output;
    ValidityVerdict verdict;
    std::int64_t latency_ms = 0;
    int backend_calls = 0;
    std::string error;  // backend failure, recorded rather than thrown
    std::optional<MetricVector> metrics;
};

std::string prediction_to_json_line(const Prediction& pred);
Prediction prediction_from_json_line(const std::string& line);

// Isolate the first <table>...</table> span of a model response, dropping
// code fences and chatter.  Nullopt when the response has no table element.
std::optional<std::string> extract_table_text(std::string_view model_output);

struct RunOptions {
    double quality_threshold = kDefaultQualityThreshold;
    int max_repair_rounds = 1;  // repair re-runs while the check fails
};

// Run one task.  Configuration problems (sd/lift without a repairer) throw;
// backend failures are recorded in the Prediction so batch runs survive
// them.  The verdict is computed against the task's ground truth when
// present.
Prediction run_task(const Task& task, Mode mode, const Backend& extractor,
                    const Backend* repairer = nullptr, const RunOptions& options = {});

struct BatchOptions {
    RunOptions run;
    int concurrency = 4;
    std::function<void(std::size_t done, std::size_t total)> progress;
};

// Run tasks concurrently; the sink receives predictions in task order
// regardless of completion order.
void run_batch(const std::vector<Task>& tasks, Mode mode, const Backend& extractor,
               const Backend* repairer, const BatchOptions& options,
               const std::function<void(const Prediction&)>& sink);

// ─── Repair-training corpus ──────────────────────────────────

struct RepairCorpusSummary {
    std::size_t kept = 0;
    std::size_t dropped = 0;
};

// For each task: run extraction, keep the task when the extracted table
// passes the validity check against its ground truth at the threshold, and
// emit one training record (JSONL: raw text, broken table, rendered repair
// prompt messages, ground-truth target).
RepairCorpusSummary build_repair_corpus(const std::vector<Task>& tasks,
                                        const Backend& extractor, double filter_threshold,
                                        const std::function<void(const std::string&)>& emit_line);

// ─── Splits ──────────────────────────────────────────────────

struct SplitSpec {
    // Exactly one of sizes/ratios; sizes may sum to less than the corpus
    // (the remainder is left out), never more.
    std::optional<std::array<std::size_t, 3>> sizes;   // train, val, test
    std::optional<std::array<double, 3>> ratios;
};

struct SplitSummary {
    // counts[dataset][split]
    std::array<std::array<std::size_t, 3>, 4> counts{};
    std::size_t assigned = 0;
    std::size_t left_out = 0;

    std::string to_table() const;
};

// Deterministic seeded partition; returns tasks in shuffled order with their
// split fields assigned (left-out tasks are omitted).
std::vector<Task> split_tasks(std::vector<Task> tasks, const SplitSpec& spec,
                              std::uint64_t seed, SplitSummary* summary = nullptr);

}  // namespace tabex
