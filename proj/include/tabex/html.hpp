#pragma once

#include <string>
#include <string_view>

#include "tabex/table.hpp"

namespace tabex {

// Parse the first <table> element of an arbitrary string into a TableTree.
// Lenient: surrounding chatter is ignored, tag case and attribute quoting are
// normalized, unclosed rows/cells are auto-closed, unknown tags inside cells
// are stripped to their text content, nested tables are flattened to text.
//
// Throws Error(NoTableFound) when the string has no table element and
// Error(UnbalancedMarkup) when the table element is never closed.
TableTree parse_table(std::string_view html);

// Span expansion by the standard placement algorithm: cells go left-to-right
// into the first free column of their row, rowspans carry down within their
// row group.  Short rows are padded with empty cells so the grid is
// rectangular.  Throws Error(SpanOverflow) when declared spans are beyond
// repair (the expanded area exceeds a sanity cap).
TableGrid to_grid(const TableTree& tree);

// Deterministic serialization: lowercase tags, canonical cell whitespace,
// rowspan/colspan attributes only when != 1 (in that order), no other
// attributes, no inter-tag whitespace.
std::string canonical_html(const TableTree& tree);

// Rebuild a tree from a grid: one tr per grid row, anchors only, thead around
// the leading run of all-header rows, th for header cells.
TableTree grid_to_tree(const TableGrid& grid);

}  // namespace tabex
