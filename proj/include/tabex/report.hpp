#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tabex/pipeline.hpp"

namespace tabex {

// Names of the per-task metrics a report aggregates, in report order.
const std::vector<std::string>& report_metric_names();

struct Aggregate {
    std::string metric_name;
    double mean = 0.0;
    std::size_t n_valid = 0;
    std::size_t n_total = 0;
    std::size_t exact_match_count = 0;
    double ci_low = 0.0;
    double ci_high = 0.0;
};

struct AggregateOptions {
    bool penalize_invalid = false;  // invalid predictions score 0 instead of dropping out
    std::size_t resamples = 1000;
    double level = 0.95;
    std::uint64_t seed = 0;
};

// Means over well-formed predictions (or all of them, scored 0, under
// penalize_invalid) with percentile-bootstrap confidence intervals.  Throws
// Error(EmptySample) on an empty prediction list.
std::vector<Aggregate> aggregate(const std::vector<Prediction>& predictions,
                                 const AggregateOptions& options = {});

// Percentile bootstrap of the mean; deterministic given the seed.
std::pair<double, double> bootstrap_ci(const std::vector<double>& values,
                                       std::size_t resamples = 1000, double level = 0.95,
                                       std::uint64_t seed = 0);

// ─── Improvement vs. a baseline ──────────────────────────────

struct Improvement {
    std::string metric_name;
    double ratio_improved = 0.0;        // strict improvements / joined tasks
    double mean_abs_improvement = 0.0;  // sign flipped for lev_ted (lower is better)
    std::size_t n_joined = 0;
};

struct JoinReport {
    std::vector<std::string> method_only;
    std::vector<std::string> baseline_only;

    bool mismatched() const { return !method_only.empty() || !baseline_only.empty(); }
};

// Joined on task ids valid on both sides.  Orphan ids land in the JoinReport
// so callers can surface a JoinMismatch warning.
std::vector<Improvement> improvement_vs_baseline(const std::vector<Prediction>& method,
                                                 const std::vector<Prediction>& baseline,
                                                 JoinReport* join = nullptr);

// ─── Rendering ───────────────────────────────────────────────

enum class ReportFormat { table_text, csv, json };

struct ReportRow {
    std::string label;
    std::vector<Aggregate> aggregates;
    std::vector<Improvement> improvements;  // empty outside compare mode
};

std::string render_report(const std::vector<ReportRow>& rows, ReportFormat format);

}  // namespace tabex
