#include "tabex/validity.hpp"

#include <cmath>
#include <sstream>

#include "tabex/errors.hpp"
#include "tabex/html.hpp"
#include "tabex/metrics.hpp"

namespace tabex {

std::optional<WellFormedTable> try_well_formed(std::string_view html, std::string* reason) {
    try {
        WellFormedTable out;
        out.tree = parse_table(html);
        out.grid = to_grid(out.tree);
        if (out.grid.empty()) {
            if (reason) *reason = "EmptyGrid";
            return std::nullopt;
        }
        if (!out.grid.has_content()) {
            if (reason) *reason = "NoContent";
            return std::nullopt;
        }
        return out;
    } catch (const Error& e) {
        if (reason) *reason = e.code_name();
        return std::nullopt;
    }
}

ValidityVerdict check_validity(std::string_view candidate_html, const TableTree* ground_truth,
                               double quality_threshold) {
    ValidityVerdict verdict;
    std::string reason;
    std::optional<WellFormedTable> table = try_well_formed(candidate_html, &reason);
    if (!table) {
        verdict.reason = reason;
        return verdict;
    }
    verdict.well_formed = true;
    if (!ground_truth) {
        verdict.quality_pass = true;
        return verdict;
    }
    const double similarity = teds(table->tree, *ground_truth);
    verdict.quality_pass = similarity >= quality_threshold;
    if (!verdict.quality_pass) {
        std::ostringstream os;
        os << "TedsBelowThreshold: " << similarity << " < " << quality_threshold;
        verdict.reason = os.str();
    }
    return verdict;
}

}  // namespace tabex
