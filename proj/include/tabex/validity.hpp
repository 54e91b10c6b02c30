#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "tabex/table.hpp"

namespace tabex {

// Outcome of the programmatic table check: structural well-formedness plus,
// when a ground truth is supplied, a TEDS quality gate.
struct ValidityVerdict {
    bool well_formed = false;
    bool quality_pass = false;
    std::string reason;
};

constexpr double kDefaultQualityThreshold = 0.5;

// well_formed: parses, expands to a grid with at least one row, one column
// and one non-empty cell.  quality_pass: well_formed and (no ground truth or
// TEDS(candidate, truth) >= threshold).
ValidityVerdict check_validity(std::string_view candidate_html,
                               const TableTree* ground_truth = nullptr,
                               double quality_threshold = kDefaultQualityThreshold);

// The parse+grid part of the check, reusable by scoring.
struct WellFormedTable {
    TableTree tree;
    TableGrid grid;
};
std::optional<WellFormedTable> try_well_formed(std::string_view html,
                                               std::string* reason = nullptr);

}  // namespace tabex
