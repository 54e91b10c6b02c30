#include "tabex/html.hpp"

#include <algorithm>
#include <cctype>
#include <string>
#include <utility>
#include <vector>

#include "tabex/errors.hpp"
#include "tabex/text.hpp"

namespace tabex {

namespace {

constexpr int kMaxSpan = 10000;
constexpr std::size_t kMaxGridArea = 4'000'000;

struct Tag {
    std::string name;  // lowercased
    bool closing = false;
    std::vector<std::pair<std::string, std::string>> attrs;  // lowercased keys
    std::size_t end = 0;  // index just past '>'

    std::string attr(std::string_view key) const {
        for (const auto& [k, v] : attrs) {
            if (k == key) return v;
        }
        return {};
    }
};

bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == ':';
}

// Scan one tag starting at s[pos] == '<'.  Returns nullopt when the '<' does
// not open a tag (kept as text).
std::optional<Tag> scan_tag(std::string_view s, std::size_t pos) {
    std::size_t i = pos + 1;
    if (i >= s.size()) return std::nullopt;
    Tag tag;
    if (s[i] == '/') {
        tag.closing = true;
        ++i;
    }
    if (i >= s.size() || !std::isalpha(static_cast<unsigned char>(s[i]))) return std::nullopt;
    std::size_t name_start = i;
    while (i < s.size() && is_name_char(s[i])) ++i;
    tag.name = to_lower_ascii(s.substr(name_start, i - name_start));
    // attributes
    while (i < s.size() && s[i] != '>') {
        if (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == '/') {
            ++i;
            continue;
        }
        std::size_t key_start = i;
        while (i < s.size() && s[i] != '=' && s[i] != '>' && s[i] != '/' &&
               !std::isspace(static_cast<unsigned char>(s[i]))) {
            ++i;
        }
        std::string key = to_lower_ascii(s.substr(key_start, i - key_start));
        std::string value;
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        if (i < s.size() && s[i] == '=') {
            ++i;
            while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
            if (i < s.size() && (s[i] == '"' || s[i] == '\'')) {
                char quote = s[i++];
                std::size_t val_start = i;
                while (i < s.size() && s[i] != quote) ++i;
                value = std::string(s.substr(val_start, i - val_start));
                if (i < s.size()) ++i;
            } else {
                std::size_t val_start = i;
                while (i < s.size() && s[i] != '>' &&
                       !std::isspace(static_cast<unsigned char>(s[i]))) {
                    ++i;
                }
                value = std::string(s.substr(val_start, i - val_start));
            }
        }
        if (!key.empty()) tag.attrs.emplace_back(std::move(key), std::move(value));
    }
    if (i >= s.size()) return std::nullopt;  // ran off the end mid-tag
    tag.end = i + 1;
    return tag;
}

int parse_span_attr(const std::string& value) {
    if (value.empty()) return 1;
    int n = 0;
    for (char c : value) {
        if (c < '0' || c > '9') return 1;  // non-numeric spans fall back to 1
        n = n * 10 + (c - '0');
        if (n > kMaxSpan) return kMaxSpan;
    }
    return n < 1 ? 1 : n;
}

// Streaming builder for the tree while scanning tags.
class TableBuilder {
public:
    TableTree finish() && {
        close_cell();
        close_row();
        close_section();
        return TableTree{std::move(table_)};
    }

    void open_section(const std::string& name) {
        close_cell();
        close_row();
        close_section();
        section_ = TableNode{name, {}};
    }

    void close_section() {
        close_cell();
        close_row();
        if (section_) {
            table_.children.push_back(std::move(*section_));
            section_.reset();
        }
    }

    void open_row() {
        close_cell();
        close_row();
        row_ = TableNode{"tr", {}};
    }

    void close_row() {
        close_cell();
        if (row_) {
            (section_ ? *section_ : table_).children.push_back(std::move(*row_));
            row_.reset();
        }
    }

    void open_cell(const std::string& tag, CellSpan span) {
        close_cell();
        if (!row_) open_row();
        cell_tag_ = tag;
        cell_span_ = span;
        cell_text_.clear();
        in_cell_ = true;
    }

    void close_cell() {
        if (!in_cell_) return;
        TableNode cell{cell_label(cell_tag_, cell_span_), {}};
        std::string text = collapse_whitespace(html_unescape(cell_text_));
        if (!text.empty()) cell.children.push_back(TableNode{std::move(text), {}});
        row_->children.push_back(std::move(cell));
        in_cell_ = false;
    }

    bool in_cell() const { return in_cell_; }

    void append_text(std::string_view text) {
        if (in_cell_) cell_text_ += text;
        // text outside cells (between rows, captions, …) is dropped
    }

private:
    TableNode table_{"table", {}};
    std::optional<TableNode> section_;
    std::optional<TableNode> row_;
    std::string cell_tag_;
    CellSpan cell_span_;
    std::string cell_text_;
    bool in_cell_ = false;
};

std::size_t find_table_open(std::string_view s, std::size_t from) {
    std::size_t pos = from;
    while (pos < s.size()) {
        pos = s.find('<', pos);
        if (pos == std::string_view::npos) return std::string_view::npos;
        if (s.compare(pos, 4, "<!--") == 0) {
            std::size_t end = s.find("-->", pos + 4);
            if (end == std::string_view::npos) return std::string_view::npos;
            pos = end + 3;
            continue;
        }
        std::optional<Tag> tag = scan_tag(s, pos);
        if (tag && !tag->closing && tag->name == "table") return pos;
        ++pos;
    }
    return std::string_view::npos;
}

}  // namespace

TableTree parse_table(std::string_view html) {
    std::size_t start = find_table_open(html, 0);
    if (start == std::string_view::npos) {
        throw Error(ErrorCode::NoTableFound, "no <table> element in input");
    }
    Tag open = *scan_tag(html, start);

    TableBuilder builder;
    int nested_tables = 0;  // tables inside cells flatten to text
    std::size_t i = open.end;
    while (i < html.size()) {
        if (html[i] != '<') {
            std::size_t next = html.find('<', i);
            if (next == std::string_view::npos) next = html.size();
            builder.append_text(html.substr(i, next - i));
            i = next;
            continue;
        }
        if (html.compare(i, 4, "<!--") == 0) {
            std::size_t end = html.find("-->", i + 4);
            i = (end == std::string_view::npos) ? html.size() : end + 3;
            continue;
        }
        std::optional<Tag> tag = scan_tag(html, i);
        if (!tag) {
            builder.append_text(html.substr(i, 1));
            ++i;
            continue;
        }
        i = tag->end;
        std::string name = tag->name;
        if (name == "tfoot") name = "tbody";

        if (nested_tables > 0) {
            if (name == "table") nested_tables += tag->closing ? -1 : 1;
            continue;  // drop inner-table markup, keep its text
        }
        if (name == "table") {
            if (tag->closing) return std::move(builder).finish();
            ++nested_tables;  // inner table: flatten to text (or drop outside cells)
            continue;
        }
        if (name == "thead" || name == "tbody") {
            if (tag->closing) {
                builder.close_section();
            } else {
                builder.open_section(name);
            }
            continue;
        }
        if (name == "tr") {
            if (tag->closing) {
                builder.close_row();
            } else {
                builder.open_row();
            }
            continue;
        }
        if (name == "td" || name == "th") {
            if (tag->closing) {
                builder.close_cell();
            } else {
                CellSpan span{parse_span_attr(tag->attr("rowspan")),
                              parse_span_attr(tag->attr("colspan"))};
                builder.open_cell(name, span);
            }
            continue;
        }
        if (name == "br") {
            builder.append_text(" ");
            continue;
        }
        // any other tag is stripped; its text content flows through
    }
    throw Error(ErrorCode::UnbalancedMarkup, "<table> never closed");
}

namespace {

struct RowRef {
    const TableNode* node;
    bool in_thead;
    int group;  // rowspans may not cross row groups
};

std::vector<RowRef> collect_rows(const TableNode& table) {
    std::vector<RowRef> rows;
    int group = -1;
    bool prev_direct = false;
    for (const TableNode& child : table.children) {
        if (is_section_label(child.label)) {
            ++group;
            prev_direct = false;
            for (const TableNode& row : child.children) {
                if (is_row_label(row.label)) {
                    rows.push_back({&row, child.label == "thead", group});
                }
            }
        } else if (is_row_label(child.label)) {
            if (!prev_direct) ++group;  // consecutive bare rows form one group
            prev_direct = true;
            rows.push_back({&child, false, group});
        }
    }
    return rows;
}

}  // namespace

TableGrid to_grid(const TableTree& tree) {
    const std::vector<RowRef> rows = collect_rows(tree.root);
    const int n_rows = static_cast<int>(rows.size());

    std::vector<int> group_end(rows.size());  // one past the last row of the group
    for (int r = n_rows - 1; r >= 0; --r) {
        group_end[r] = (r + 1 < n_rows && rows[r + 1].group == rows[r].group)
                           ? group_end[r + 1]
                           : r + 1;
    }

    struct Source {
        std::string text;
        int rowspan, colspan;
        bool header;
        int row, col;
    };
    std::vector<Source> sources;
    // occupancy[r][c] = index into sources, -1 when free
    std::vector<std::vector<int>> occ(rows.size());

    auto occupied = [&](int r, int c) {
        return c < static_cast<int>(occ[r].size()) && occ[r][c] >= 0;
    };
    auto claim = [&](int r, int c, int idx) {
        if (c >= static_cast<int>(occ[r].size())) occ[r].resize(c + 1, -1);
        occ[r][c] = idx;
    };

    for (int r = 0; r < n_rows; ++r) {
        int col = 0;
        for (const TableNode& child : rows[r].node->children) {
            std::optional<CellLabelParts> parts = split_cell_label(child.label);
            if (!parts) continue;
            while (occupied(r, col)) ++col;

            if (static_cast<std::size_t>(parts->span.rows) * parts->span.cols > kMaxGridArea ||
                static_cast<std::size_t>(col) + parts->span.cols >
                    kMaxGridArea / rows.size()) {
                throw Error(ErrorCode::SpanOverflow,
                            "declared spans expand past the grid size cap");
            }
            // Declared spans that run into already-claimed locations clamp to
            // the maximal free rectangle at their anchor, so every location
            // keeps exactly one owner.
            int colspan = 1;
            while (colspan < parts->span.cols && !occupied(r, col + colspan)) ++colspan;
            const int max_rowspan = std::min(parts->span.rows, group_end[r] - r);
            int rowspan = 1;
            while (rowspan < max_rowspan) {
                bool row_free = true;
                for (int dc = 0; dc < colspan && row_free; ++dc) {
                    row_free = !occupied(r + rowspan, col + dc);
                }
                if (!row_free) break;
                ++rowspan;
            }

            std::string text = child.children.empty() ? std::string() : child.children[0].label;
            bool header = parts->tag == "th" || rows[r].in_thead;
            int idx = static_cast<int>(sources.size());
            sources.push_back({std::move(text), rowspan, colspan, header, r, col});
            for (int dr = 0; dr < rowspan; ++dr) {
                for (int dc = 0; dc < colspan; ++dc) {
                    claim(r + dr, col + dc, idx);
                }
            }
            col += colspan;
        }
    }

    int n_cols = 0;
    for (const auto& row : occ) n_cols = std::max(n_cols, static_cast<int>(row.size()));
    if (n_rows > 0 && static_cast<std::size_t>(n_rows) * n_cols > kMaxGridArea) {
        throw Error(ErrorCode::SpanOverflow, "expanded grid exceeds the size cap");
    }

    TableGrid grid;
    grid.n_rows = n_rows;
    grid.n_cols = n_cols;
    grid.cells.resize(static_cast<std::size_t>(n_rows) * n_cols);
    for (int r = 0; r < n_rows; ++r) {
        for (int c = 0; c < n_cols; ++c) {
            GridCell& cell = grid.at(r, c);
            int idx = (c < static_cast<int>(occ[r].size())) ? occ[r][c] : -1;
            if (idx < 0) {
                cell.header = rows[r].in_thead;  // padding cell
                continue;
            }
            const Source& src = sources[static_cast<std::size_t>(idx)];
            cell.text = src.text;
            cell.rowspan = src.rowspan;
            cell.colspan = src.colspan;
            cell.row_offset = r - src.row;
            cell.col_offset = c - src.col;
            cell.header = src.header;
        }
    }
    return grid;
}

namespace {

void serialize_node(const TableNode& node, std::string& out) {
    if (node.label == "table" || is_section_label(node.label) || is_row_label(node.label)) {
        out += "<" + node.label + ">";
        for (const TableNode& child : node.children) serialize_node(child, out);
        out += "</" + node.label + ">";
        return;
    }
    if (std::optional<CellLabelParts> parts = split_cell_label(node.label)) {
        out += "<" + parts->tag;
        if (parts->span.rows != 1) out += " rowspan=\"" + std::to_string(parts->span.rows) + "\"";
        if (parts->span.cols != 1) out += " colspan=\"" + std::to_string(parts->span.cols) + "\"";
        out += ">";
        if (!node.children.empty()) {
            out += html_escape(collapse_whitespace(node.children[0].label));
        }
        out += "</" + parts->tag + ">";
        return;
    }
    // leaf text reached outside a cell: ignore (cannot occur on valid trees)
}

}  // namespace

std::string canonical_html(const TableTree& tree) {
    std::string out;
    serialize_node(tree.root, out);
    return out;
}

TableTree grid_to_tree(const TableGrid& grid) {
    int header_rows = 0;
    for (int r = 0; r < grid.n_rows; ++r) {
        bool all_header = grid.n_cols > 0;
        for (int c = 0; c < grid.n_cols; ++c) {
            if (!grid.at(r, c).header) {
                all_header = false;
                break;
            }
        }
        if (!all_header) break;
        ++header_rows;
    }

    auto make_row = [&](int r) {
        TableNode row{"tr", {}};
        for (int c = 0; c < grid.n_cols; ++c) {
            const GridCell& cell = grid.at(r, c);
            if (!cell.anchor()) continue;
            TableNode node{cell_label(cell.header ? "th" : "td",
                                      {cell.rowspan, cell.colspan}),
                           {}};
            if (!cell.text.empty()) node.children.push_back(TableNode{cell.text, {}});
            row.children.push_back(std::move(node));
        }
        return row;
    };

    TableNode table{"table", {}};
    if (header_rows > 0 && header_rows < grid.n_rows) {
        TableNode thead{"thead", {}};
        for (int r = 0; r < header_rows; ++r) thead.children.push_back(make_row(r));
        TableNode tbody{"tbody", {}};
        for (int r = header_rows; r < grid.n_rows; ++r) tbody.children.push_back(make_row(r));
        table.children.push_back(std::move(thead));
        table.children.push_back(std::move(tbody));
    } else if (header_rows == grid.n_rows && header_rows > 0) {
        TableNode thead{"thead", {}};
        for (int r = 0; r < grid.n_rows; ++r) thead.children.push_back(make_row(r));
        table.children.push_back(std::move(thead));
    } else {
        for (int r = 0; r < grid.n_rows; ++r) table.children.push_back(make_row(r));
    }
    return TableTree{std::move(table)};
}

}  // namespace tabex
