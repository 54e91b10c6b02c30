#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace tabex {

// One annotated cell: inclusive row/column extents plus its text.
struct AnnotatedCell {
    std::string text;
    int start_row = 0;
    int end_row = 0;
    int start_col = 0;
    int end_col = 0;
};

// Convert a structured cell list to canonical HTML whose grid expansion
// reproduces the annotated occupancy exactly.  Unoccupied locations become
// empty unit cells.
//
// Throws Error(SpanOverflow) on overlapping extents and Error(NoTableFound)
// on an empty cell list.
std::string scitsr_to_html(const std::vector<AnnotatedCell>& cells);

// Parse a SciTSR-style JSON object: {"cells": [{"content": [tokens] | text,
// "start_row": r0, "end_row": r1, "start_col": c0, "end_col": c1}, ...]}.
std::vector<AnnotatedCell> parse_scitsr_json(std::string_view json_text);

}  // namespace tabex
