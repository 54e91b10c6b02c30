#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "tabex/table.hpp"

namespace tabex {

// Node edit costs for tree edit distance.  Unit: 0/1 substitution, 1 for
// insert/delete.  Levenshtein: substitution is the string edit distance
// between labels; inserting or deleting a node costs max(1, label length),
// lengths in Unicode scalar values.
struct CostModel {
    enum class Kind { unit, levenshtein };
    Kind kind = Kind::unit;

    static CostModel unit() { return {Kind::unit}; }
    static CostModel levenshtein() { return {Kind::levenshtein}; }
};

// Exact ordered-tree edit distance (Zhang-Shasha).
double ted(const TableTree& a, const TableTree& b, CostModel cost);

enum class TedsNorm {
    size_sum,  // 1 - Ted/(|t1|+|t2|)
    size_max,  // 1 - Ted/max(|t1|,|t2|), clamped at 0
};

double teds(const TableTree& a, const TableTree& b, TedsNorm norm = TedsNorm::size_sum);

// Raw (unnormalized) tree edit distance under the Levenshtein cost model.
double lev_ted(const TableTree& a, const TableTree& b);

// ─── GriTS ───────────────────────────────────────────────────

struct GritsBounds {
    double lower = 0.0;
    double upper = 0.0;
};

using CellSim = std::function<double(const GridCell&, const GridCell&)>;

// Bounds on 2*S*/(n_a+n_b) where S* is the 2D most-similar-substructure
// value: the best total similarity over order-preserving row and column
// subsequence selections applied consistently to both grids.
//
// Upper bound: min of the row-factored and column-factored relaxations (each
// aligns one axis with per-pair optimal 1D alignments on the other axis,
// dropping the shared-alignment constraint).  Lower bound: alternate fixing
// one axis' alignment and re-solving the other, starting from the
// row-factored solution, until the feasible value stops improving (at most
// 10 rounds).
GritsBounds grits(const TableGrid& a, const TableGrid& b, const CellSim& sim);

// Topology similarity: IoU of span rectangles placed relative to the aligned
// grid location.
GritsBounds grits_top(const TableGrid& a, const TableGrid& b);
double sim_top(const GridCell& a, const GridCell& b);

// Content similarity: 2*LCS/(len1+len2) over cell text, 1 when both empty.
GritsBounds grits_con(const TableGrid& a, const TableGrid& b);
double sim_con(const GridCell& a, const GridCell& b);

// ─── Whole-table scoring ─────────────────────────────────────

bool exact_match(std::string_view a_html, std::string_view b_html);

struct MetricVector {
    double teds = 0.0;
    double lev_ted = 0.0;
    double grits_top_lower = 0.0;
    double grits_top_upper = 0.0;
    double grits_top_mean = 0.0;
    double grits_con_lower = 0.0;
    double grits_con_upper = 0.0;
    double grits_con_mean = 0.0;
    bool exact_match = false;
};

// All metrics in one pass.  Returns nullopt when the prediction is not
// well-formed (the caller decides denominator handling).  Throws
// Error(TruthUnparseable) when the ground truth does not parse to a usable
// table.  teds_norm switches the TEDS normalization (size_sum is the
// default reported everywhere).
std::optional<MetricVector> score(std::string_view prediction_html,
                                  std::string_view truth_html,
                                  TedsNorm teds_norm = TedsNorm::size_sum);

}  // namespace tabex
