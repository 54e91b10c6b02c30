#include "tabex/scitsr.hpp"

#include <algorithm>

#include <json.hpp>

#include "tabex/errors.hpp"
#include "tabex/html.hpp"
#include "tabex/table.hpp"
#include "tabex/text.hpp"

namespace tabex {

std::string scitsr_to_html(const std::vector<AnnotatedCell>& cells) {
    if (cells.empty()) {
        throw Error(ErrorCode::NoTableFound, "empty cell list");
    }
    int n_rows = 0, n_cols = 0;
    for (const AnnotatedCell& cell : cells) {
        if (cell.start_row < 0 || cell.start_col < 0 || cell.end_row < cell.start_row ||
            cell.end_col < cell.start_col) {
            throw Error(ErrorCode::SpanOverflow, "invalid cell extents");
        }
        n_rows = std::max(n_rows, cell.end_row + 1);
        n_cols = std::max(n_cols, cell.end_col + 1);
    }

    std::vector<int> owner(static_cast<std::size_t>(n_rows) * n_cols, -1);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const AnnotatedCell& cell = cells[i];
        for (int r = cell.start_row; r <= cell.end_row; ++r) {
            for (int c = cell.start_col; c <= cell.end_col; ++c) {
                int& slot = owner[static_cast<std::size_t>(r) * n_cols + c];
                if (slot >= 0) {
                    throw Error(ErrorCode::SpanOverflow,
                                "cells overlap at row " + std::to_string(r) + ", col " +
                                    std::to_string(c));
                }
                slot = static_cast<int>(i);
            }
        }
    }

    TableNode table{"table", {}};
    for (int r = 0; r < n_rows; ++r) {
        TableNode row{"tr", {}};
        for (int c = 0; c < n_cols; ++c) {
            const int idx = owner[static_cast<std::size_t>(r) * n_cols + c];
            if (idx < 0) {
                row.children.push_back(TableNode{"td", {}});
                continue;
            }
            const AnnotatedCell& cell = cells[static_cast<std::size_t>(idx)];
            if (r != cell.start_row || c != cell.start_col) continue;  // anchor only
            CellSpan span{cell.end_row - cell.start_row + 1, cell.end_col - cell.start_col + 1};
            TableNode node{cell_label("td", span), {}};
            std::string text = collapse_whitespace(cell.text);
            if (!text.empty()) node.children.push_back(TableNode{std::move(text), {}});
            row.children.push_back(std::move(node));
        }
        table.children.push_back(std::move(row));
    }
    return canonical_html(TableTree{std::move(table)});
}

std::vector<AnnotatedCell> parse_scitsr_json(std::string_view json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::IoError, std::string("bad annotation JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("cells") || !doc["cells"].is_array()) {
        throw Error(ErrorCode::IoError, "annotation JSON lacks a \"cells\" array");
    }
    std::vector<AnnotatedCell> cells;
    for (const auto& item : doc["cells"]) {
        AnnotatedCell cell;
        if (item.contains("content")) {
            const auto& content = item["content"];
            if (content.is_array()) {
                std::string joined;
                for (const auto& token : content) {
                    if (!joined.empty()) joined += ' ';
                    joined += token.get<std::string>();
                }
                cell.text = std::move(joined);
            } else if (content.is_string()) {
                cell.text = content.get<std::string>();
            }
        }
        cell.start_row = item.value("start_row", 0);
        cell.end_row = item.value("end_row", cell.start_row);
        cell.start_col = item.value("start_col", 0);
        cell.end_col = item.value("end_col", cell.start_col);
        cells.push_back(std::move(cell));
    }
    return cells;
}

}  // namespace tabex
