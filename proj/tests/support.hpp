// Test-only helpers: tree/grid builders, seeded generators, and independent
// oracles the implementation is checked against.  The oracles are written
// from the metric definitions, not from the library's algorithms.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "tabex/html.hpp"
#include "tabex/metrics.hpp"
#include "tabex/rng.hpp"
#include "tabex/table.hpp"
#include "tabex/text.hpp"

namespace testsupport {

using tabex::GridCell;
using tabex::Rng;
using tabex::TableGrid;
using tabex::TableNode;
using tabex::TableTree;

// ─── builders ────────────────────────────────────────────────

inline TableNode n(std::string label, std::vector<TableNode> children = {}) {
    return TableNode{std::move(label), std::move(children)};
}

inline TableTree tree(TableNode root) { return TableTree{std::move(root)}; }

inline TableGrid grid_from_texts(const std::vector<std::vector<std::string>>& rows,
                                 int header_rows = 0) {
    TableGrid grid;
    grid.n_rows = static_cast<int>(rows.size());
    grid.n_cols = rows.empty() ? 0 : static_cast<int>(rows[0].size());
    grid.cells.resize(static_cast<std::size_t>(grid.n_rows) * grid.n_cols);
    for (int r = 0; r < grid.n_rows; ++r) {
        for (int c = 0; c < grid.n_cols; ++c) {
            grid.at(r, c).text = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
            grid.at(r, c).header = r < header_rows;
        }
    }
    return grid;
}

// ─── random generators ───────────────────────────────────────

// Random ordered tree with size in [1, max_nodes]: node i attaches to a
// random earlier node, children ordered by creation.
inline TableTree random_tree(Rng& rng, int max_nodes,
                             const std::vector<std::string>& labels) {
    const int size = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_nodes)));
    std::vector<TableNode> nodes(static_cast<std::size_t>(size));
    std::vector<int> parent(static_cast<std::size_t>(size), -1);
    for (int i = 0; i < size; ++i) {
        nodes[static_cast<std::size_t>(i)].label = labels[rng.below(labels.size())];
        if (i > 0) parent[static_cast<std::size_t>(i)] = static_cast<int>(rng.below(i));
    }
    // attach children bottom-up so vectors stay stable
    for (int i = size - 1; i >= 1; --i) {
        auto& p = nodes[static_cast<std::size_t>(parent[static_cast<std::size_t>(i)])];
        p.children.insert(p.children.begin(), std::move(nodes[static_cast<std::size_t>(i)]));
    }
    return TableTree{std::move(nodes[0])};
}

inline std::string random_text(Rng& rng, const std::vector<std::string>& alphabet,
                               std::size_t max_len) {
    std::string out;
    const std::size_t len = rng.below(max_len + 1);
    for (std::size_t i = 0; i < len; ++i) out += alphabet[rng.below(alphabet.size())];
    return out;
}

// Random spanless grid up to max_rows x max_cols with texts over alphabet.
inline TableGrid random_grid(Rng& rng, int max_rows, int max_cols,
                             const std::vector<std::string>& alphabet) {
    std::vector<std::vector<std::string>> rows(
        1 + rng.below(static_cast<std::uint64_t>(max_rows)));
    const std::size_t cols = 1 + rng.below(static_cast<std::uint64_t>(max_cols));
    for (auto& row : rows) {
        row.resize(cols);
        for (auto& cell : row) cell = random_text(rng, alphabet, 2);
    }
    return grid_from_texts(rows);
}

// Random table HTML with occasional spans; expanded via to_grid.  Returns
// grids no larger than max_rows x max_cols (retries otherwise).
inline TableGrid random_span_grid(Rng& rng, int max_rows, int max_cols,
                                  const std::vector<std::string>& alphabet) {
    for (;;) {
        const int rows = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_rows)));
        const int cols = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_cols)));
        std::string html = "<table>";
        for (int r = 0; r < rows; ++r) {
            html += "<tr>";
            for (int c = 0; c < cols; ++c) {
                const int rowspan = rng.below(4) == 0 ? 2 : 1;
                const int colspan = rng.below(4) == 0 ? 2 : 1;
                html += "<td";
                if (rowspan != 1) html += " rowspan=\"2\"";
                if (colspan != 1) html += " colspan=\"2\"";
                html += ">" + random_text(rng, alphabet, 2) + "</td>";
            }
            html += "</tr>";
        }
        html += "</table>";
        TableGrid grid = tabex::to_grid(tabex::parse_table(html));
        if (grid.n_rows <= max_rows && grid.n_cols <= max_cols && !grid.empty()) return grid;
    }
}

// ─── brute-force tree edit distance ──────────────────────────
//
// Minimum cost over all valid ordered-tree mappings (Tai mappings): an
// injective pairing where every two pairs agree on both preorder and
// postorder relations.  Cost = substitutions + deletions of unmapped source
// nodes + insertions of unmapped target nodes.

struct FlatNode {
    const std::string* label;
    int pre = 0;
    int post = 0;
};

inline void flatten_orders(const TableNode& node, std::vector<FlatNode>& out, int& pre,
                           int& post) {
    const std::size_t self = out.size();
    out.push_back({&node.label, pre++, 0});
    for (const TableNode& child : node.children) flatten_orders(child, out, pre, post);
    out[self].post = post++;
}

inline std::vector<FlatNode> flatten_orders(const TableTree& tree) {
    std::vector<FlatNode> out;
    int pre = 0, post = 0;
    flatten_orders(tree.root, out, pre, post);
    return out;
}

class BruteForceTed {
public:
    BruteForceTed(const TableTree& a, const TableTree& b, tabex::CostModel model)
        : a_(flatten_orders(a)), b_(flatten_orders(b)), model_(model) {}

    double run() {
        best_ = std::numeric_limits<double>::infinity();
        used_.assign(b_.size(), false);
        pairs_.clear();
        double ins_all = 0.0;
        for (std::size_t j = 0; j < b_.size(); ++j) ins_all += ins(j);
        search(0, 0.0, ins_all);
        return best_;
    }

private:
    double del(std::size_t i) const { return node_cost(*a_[i].label); }
    double ins(std::size_t j) const { return node_cost(*b_[j].label); }

    double node_cost(const std::string& label) const {
        if (model_.kind == tabex::CostModel::Kind::unit) return 1.0;
        return static_cast<double>(std::max<std::size_t>(1, tabex::utf8_length(label)));
    }

    double sub(std::size_t i, std::size_t j) const {
        if (model_.kind == tabex::CostModel::Kind::unit) {
            return *a_[i].label == *b_[j].label ? 0.0 : 1.0;
        }
        return static_cast<double>(tabex::levenshtein(*a_[i].label, *b_[j].label));
    }

    bool consistent(std::size_t i, std::size_t j) const {
        for (const auto& [pi, pj] : pairs_) {
            const bool pre_lt = a_[pi].pre < a_[i].pre;
            const bool post_lt = a_[pi].post < a_[i].post;
            if (pre_lt != (b_[pj].pre < b_[j].pre)) return false;
            if (post_lt != (b_[pj].post < b_[j].post)) return false;
        }
        return true;
    }

    // cost: fixed cost so far; pending_ins: insertion cost of every B node
    // not yet claimed by a pair.
    void search(std::size_t i, double cost, double pending_ins) {
        if (cost >= best_) return;
        if (i == a_.size()) {
            best_ = std::min(best_, cost + pending_ins);
            return;
        }
        for (std::size_t j = 0; j < b_.size(); ++j) {
            if (used_[j] || !consistent(i, j)) continue;
            used_[j] = true;
            pairs_.emplace_back(i, j);
            search(i + 1, cost + sub(i, j), pending_ins - ins(j));
            pairs_.pop_back();
            used_[j] = false;
        }
        search(i + 1, cost + del(i), pending_ins);
    }

    std::vector<FlatNode> a_, b_;
    tabex::CostModel model_;
    double best_ = 0.0;
    std::vector<bool> used_;
    std::vector<std::pair<std::size_t, std::size_t>> pairs_;
};

inline double brute_force_ted(const TableTree& a, const TableTree& b,
                              tabex::CostModel model) {
    return BruteForceTed(a, b, model).run();
}

// ─── exhaustive 2D most-similar substructure ─────────────────
//
// Enumerates every pair of equal-length row subsequences and every pair of
// equal-length column subsequences; reports 2*S*/(n_a+n_b).

inline std::vector<std::vector<int>> subsequences(int n) {
    std::vector<std::vector<int>> out;
    for (int mask = 0; mask < (1 << n); ++mask) {
        std::vector<int> seq;
        for (int i = 0; i < n; ++i) {
            if (mask & (1 << i)) seq.push_back(i);
        }
        out.push_back(std::move(seq));
    }
    return out;
}

inline double exhaustive_2dmss(const TableGrid& a, const TableGrid& b,
                               const tabex::CellSim& sim) {
    const auto rows_a = subsequences(a.n_rows);
    const auto rows_b = subsequences(b.n_rows);
    const auto cols_a = subsequences(a.n_cols);
    const auto cols_b = subsequences(b.n_cols);

    double best = 0.0;
    for (const auto& ra : rows_a) {
        for (const auto& rb : rows_b) {
            if (ra.size() != rb.size() || ra.empty()) continue;
            for (const auto& ca : cols_a) {
                for (const auto& cb : cols_b) {
                    if (ca.size() != cb.size() || ca.empty()) continue;
                    double total = 0.0;
                    for (std::size_t i = 0; i < ra.size(); ++i) {
                        for (std::size_t j = 0; j < ca.size(); ++j) {
                            total += sim(a.at(ra[i], ca[j]), b.at(rb[i], cb[j]));
                        }
                    }
                    best = std::max(best, total);
                }
            }
        }
    }
    return 2.0 * best / static_cast<double>(a.size() + b.size());
}

}  // namespace testsupport
