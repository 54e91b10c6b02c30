#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tabex {

// ─── Tree model ──────────────────────────────────────────────
//
// An HTML table as an ordered labeled tree.  Structural nodes carry the tag
// name ("table", "thead", "tbody", "tr", "td", "th"); a spanning cell's label
// is suffixed "@rRcC" (e.g. "td@r2c1"); cell content lives in a single leaf
// child whose label is the cell text (omitted when the text is empty).

struct TableNode {
    std::string label;
    std::vector<TableNode> children;

    bool operator==(const TableNode& other) const {
        return label == other.label && children == other.children;
    }
};

struct TableTree {
    TableNode root;

    bool operator==(const TableTree& other) const { return root == other.root; }
};

std::size_t tree_size(const TableNode& node);
inline std::size_t tree_size(const TableTree& tree) { return tree_size(tree.root); }

struct CellSpan {
    int rows = 1;
    int cols = 1;

    bool operator==(const CellSpan&) const = default;
};

// "td" + {2,3} -> "td@r2c3"; spans of 1x1 leave the tag unannotated.
std::string cell_label(std::string_view tag, CellSpan span);

// Inverse of cell_label; nullopt when the label is not a cell label.
struct CellLabelParts {
    std::string tag;  // "td" or "th"
    CellSpan span;
};
std::optional<CellLabelParts> split_cell_label(std::string_view label);

bool is_cell_label(std::string_view label);
bool is_row_label(std::string_view label);
bool is_section_label(std::string_view label);

// ─── Grid model ──────────────────────────────────────────────
//
// The span-expanded rectangular matrix.  Every grid location is covered by
// exactly one source cell; locations under a spanning cell repeat its text
// and spans and record their offset within it.

struct GridCell {
    std::string text;
    int rowspan = 1;
    int colspan = 1;
    int row_offset = 0;
    int col_offset = 0;
    bool header = false;

    bool spanning() const { return rowspan != 1 || colspan != 1; }
    bool anchor() const { return row_offset == 0 && col_offset == 0; }

    bool operator==(const GridCell&) const = default;
};

struct TableGrid {
    int n_rows = 0;
    int n_cols = 0;
    std::vector<GridCell> cells;  // row-major, n_rows * n_cols entries

    GridCell& at(int r, int c) { return cells[static_cast<std::size_t>(r) * n_cols + c]; }
    const GridCell& at(int r, int c) const {
        return cells[static_cast<std::size_t>(r) * n_cols + c];
    }

    bool empty() const { return n_rows == 0 || n_cols == 0; }
    std::size_t size() const { return static_cast<std::size_t>(n_rows) * n_cols; }
    bool has_spans() const;
    bool has_content() const;

    bool operator==(const TableGrid&) const = default;
};

// ─── Task ────────────────────────────────────────────────────

enum class SourceDataset { pubtabnet, fintabnet, scitsr, other };
enum class Split { train, val, test };

std::string_view dataset_name(SourceDataset d);
std::optional<SourceDataset> dataset_from_name(std::string_view name);
std::string_view split_name(Split s);
std::optional<Split> split_from_name(std::string_view name);

// One explicitation instance: unstructured input text plus its HTML ground
// truth.
struct Task {
    std::string id;
    std::string raw_text;
    std::string ground_truth_html;
    SourceDataset source_dataset = SourceDataset::other;
    Split split = Split::test;
};

}  // namespace tabex
