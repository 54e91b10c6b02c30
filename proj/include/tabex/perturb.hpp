#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tabex/table.hpp"

namespace tabex {

struct PerturbConfig {
    std::uint64_t seed = 0;
    double separator_flip_probability = 0.3;
    // Applied independently to the header and the footer junk line.
    double junk_line_probability = 0.5;
};

// The four separators noisy CSV draws from.
inline constexpr char kCsvSeparators[4] = {',', '\t', '|', '^'};

// Desk-scale stand-in for clipboard text: one line per grid row, anchor cell
// texts joined by single spaces, no structural markers.
std::string flatten_clipboard(const TableTree& tree);
std::string flatten_clipboard(const TableGrid& grid);

// Broken CSV: clean comma-separated lines, then each separator independently
// replaced (with the flip probability) by a uniform draw from comma, tab,
// pipe or caret; junk header/footer lines of random alphanumeric tokens.
// Cells containing a separator symbol are double-quoted.  Deterministic
// given the seed.  Throws Error(HasSpans) on grids with spanning cells.
std::string make_noisy_csv(const TableGrid& grid, const PerturbConfig& cfg);

// Well-formed JSON: array of row objects keyed by the header-row texts in
// column order; duplicate headers get a "#k" suffix.  Requires a spanless
// grid whose first row is a header row (throws HasSpans / NoHeader).
std::string make_json(const TableGrid& grid);

// Draw n tasks, then exclude spanning-cell tables from both sets and
// headerless tables from the JSON set.  Emitted tasks carry the perturbed
// text as raw_text and the unchanged ground truth; ids gain a "#csv" or
// "#json" suffix.
struct RobustnessSets {
    std::vector<Task> csv_tasks;
    std::vector<Task> json_tasks;
};
RobustnessSets sample_robustness_set(const std::vector<Task>& tasks, std::size_t n,
                                     std::uint64_t seed, const PerturbConfig& cfg = {});

}  // namespace tabex
