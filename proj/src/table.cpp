#include "tabex/table.hpp"

namespace tabex {

std::size_t tree_size(const TableNode& node) {
    std::size_t n = 1;
    for (const TableNode& child : node.children) n += tree_size(child);
    return n;
}

std::string cell_label(std::string_view tag, CellSpan span) {
    std::string label(tag);
    if (span.rows != 1 || span.cols != 1) {
        label += "@r" + std::to_string(span.rows) + "c" + std::to_string(span.cols);
    }
    return label;
}

std::optional<CellLabelParts> split_cell_label(std::string_view label) {
    std::string_view tag = label;
    CellSpan span;
    std::size_t at = label.find('@');
    if (at != std::string_view::npos) {
        tag = label.substr(0, at);
        std::string_view ann = label.substr(at + 1);
        // expected shape: rRcC with positive integers
        if (ann.size() < 4 || ann[0] != 'r') return std::nullopt;
        std::size_t cpos = ann.find('c', 1);
        if (cpos == std::string_view::npos) return std::nullopt;
        int rows = 0, cols = 0;
        for (std::size_t i = 1; i < cpos; ++i) {
            if (ann[i] < '0' || ann[i] > '9') return std::nullopt;
            rows = rows * 10 + (ann[i] - '0');
        }
        for (std::size_t i = cpos + 1; i < ann.size(); ++i) {
            if (ann[i] < '0' || ann[i] > '9') return std::nullopt;
            cols = cols * 10 + (ann[i] - '0');
        }
        if (rows < 1 || cols < 1 || cpos == 1 || cpos + 1 == ann.size()) return std::nullopt;
        span = {rows, cols};
    }
    if (tag != "td" && tag != "th") return std::nullopt;
    return CellLabelParts{std::string(tag), span};
}

bool is_cell_label(std::string_view label) { return split_cell_label(label).has_value(); }

bool is_row_label(std::string_view label) { return label == "tr"; }

bool is_section_label(std::string_view label) {
    return label == "thead" || label == "tbody";
}

bool TableGrid::has_spans() const {
    for (const GridCell& cell : cells) {
        if (cell.spanning()) return true;
    }
    return false;
}

bool TableGrid::has_content() const {
    for (const GridCell& cell : cells) {
        if (!cell.text.empty()) return true;
    }
    return false;
}

std::string_view dataset_name(SourceDataset d) {
    switch (d) {
        case SourceDataset::pubtabnet: return "pubtabnet";
        case SourceDataset::fintabnet: return "fintabnet";
        case SourceDataset::scitsr: return "scitsr";
        case SourceDataset::other: return "other";
    }
    return "other";
}

std::optional<SourceDataset> dataset_from_name(std::string_view name) {
    if (name == "pubtabnet") return SourceDataset::pubtabnet;
    if (name == "fintabnet") return SourceDataset::fintabnet;
    if (name == "scitsr") return SourceDataset::scitsr;
    if (name == "other") return SourceDataset::other;
    return std::nullopt;
}

std::string_view split_name(Split s) {
    switch (s) {
        case Split::train: return "train";
        case Split::val: return "val";
        case Split::test: return "test";
    }
    return "test";
}

std::optional<Split> split_from_name(std::string_view name) {
    if (name == "train") return Split::train;
    if (name == "val") return Split::val;
    if (name == "test") return Split::test;
    return std::nullopt;
}

}  // namespace tabex
