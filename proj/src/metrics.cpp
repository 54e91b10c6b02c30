#include "tabex/metrics.hpp"

#include "tabex/errors.hpp"
#include "tabex/html.hpp"
#include "tabex/validity.hpp"

namespace tabex {

bool exact_match(std::string_view a_html, std::string_view b_html) {
    try {
        return canonical_html(parse_table(a_html)) == canonical_html(parse_table(b_html));
    } catch (const Error&) {
        return false;
    }
}

std::optional<MetricVector> score(std::string_view prediction_html,
                                  std::string_view truth_html, TedsNorm teds_norm) {
    std::string truth_reason;
    std::optional<WellFormedTable> truth = try_well_formed(truth_html, &truth_reason);
    if (!truth) {
        throw Error(ErrorCode::TruthUnparseable, truth_reason);
    }

    std::optional<WellFormedTable> pred = try_well_formed(prediction_html);
    if (!pred) return std::nullopt;

    MetricVector m;
    m.teds = teds(pred->tree, truth->tree, teds_norm);
    m.lev_ted = lev_ted(pred->tree, truth->tree);
    const GritsBounds top = grits_top(pred->grid, truth->grid);
    const GritsBounds con = grits_con(pred->grid, truth->grid);
    m.grits_top_lower = top.lower;
    m.grits_top_upper = top.upper;
    m.grits_top_mean = (top.lower + top.upper) / 2.0;
    m.grits_con_lower = con.lower;
    m.grits_con_upper = con.upper;
    m.grits_con_mean = (con.lower + con.upper) / 2.0;
    m.exact_match = canonical_html(pred->tree) == canonical_html(truth->tree);
    return m;
}

}  // namespace tabex
