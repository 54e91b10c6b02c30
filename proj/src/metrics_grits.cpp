#include <algorithm>
#include <unordered_map>
#include <vector>

#include "tabex/errors.hpp"
#include "tabex/metrics.hpp"
#include "tabex/text.hpp"

namespace tabex {

namespace {

struct Alignment {
    double score = 0.0;
    std::vector<std::pair<int, int>> pairs;
};

// Maximizing global alignment with free skips.  Traceback tie-break: match
// over skip-left over skip-right, so results are deterministic.
template <typename ScoreFn>
Alignment align_max(int n, int m, ScoreFn&& s, bool traceback) {
    std::vector<double> d(static_cast<std::size_t>(n + 1) * (m + 1), 0.0);
    auto at = [&](int i, int j) -> double& {
        return d[static_cast<std::size_t>(i) * (m + 1) + j];
    };
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= m; ++j) {
            at(i, j) = std::max({at(i - 1, j - 1) + s(i - 1, j - 1), at(i - 1, j), at(i, j - 1)});
        }
    }
    Alignment out;
    out.score = at(n, m);
    if (traceback) {
        int i = n, j = m;
        while (i > 0 && j > 0) {
            if (at(i, j) == at(i - 1, j - 1) + s(i - 1, j - 1)) {
                out.pairs.emplace_back(i - 1, j - 1);
                --i;
                --j;
            } else if (at(i, j) == at(i - 1, j)) {
                --i;
            } else {
                --j;
            }
        }
        std::reverse(out.pairs.begin(), out.pairs.end());
    }
    return out;
}

class SimMatrix {
public:
    SimMatrix(const TableGrid& a, const TableGrid& b, const CellSim& sim)
        : a_(a), b_(b), values_(a.size() * b.size()) {
        for (int ra = 0; ra < a.n_rows; ++ra) {
            for (int ca = 0; ca < a.n_cols; ++ca) {
                for (int rb = 0; rb < b.n_rows; ++rb) {
                    for (int cb = 0; cb < b.n_cols; ++cb) {
                        values_[index(ra, ca, rb, cb)] = sim(a.at(ra, ca), b.at(rb, cb));
                    }
                }
            }
        }
    }

    double operator()(int ra, int ca, int rb, int cb) const {
        return values_[index(ra, ca, rb, cb)];
    }

private:
    std::size_t index(int ra, int ca, int rb, int cb) const {
        return ((static_cast<std::size_t>(ra) * a_.n_cols + ca) * b_.n_rows + rb) * b_.n_cols +
               cb;
    }

    const TableGrid& a_;
    const TableGrid& b_;
    std::vector<double> values_;
};

// sim(ra, ca, rb, cb) between one grid location of each side.
using SimFn = std::function<double(int, int, int, int)>;

struct GridDims {
    int rows;
    int cols;
};

Alignment relaxed_row_alignment(GridDims a, GridDims b, const SimFn& s, bool traceback) {
    auto row_pair_score = [&](int ra, int rb) {
        return align_max(a.cols, b.cols,
                         [&](int ca, int cb) { return s(ra, ca, rb, cb); }, false)
            .score;
    };
    return align_max(a.rows, b.rows, row_pair_score, traceback);
}

// Feasible 2D-MSS value: take the relaxed row pairing, DP a single shared
// column alignment, then alternate re-solving one axis with the other fixed
// until the value stops improving (at most 10 rounds).
double alternation_value(GridDims a, GridDims b, const SimFn& s) {
    std::vector<std::pair<int, int>> rows = relaxed_row_alignment(a, b, s, true).pairs;
    double best = 0.0;
    for (int round = 0; round < 10; ++round) {
        Alignment cols = align_max(
            a.cols, b.cols,
            [&](int ca, int cb) {
                double total = 0.0;
                for (const auto& [ra, rb] : rows) total += s(ra, ca, rb, cb);
                return total;
            },
            true);
        Alignment next_rows = align_max(
            a.rows, b.rows,
            [&](int ra, int rb) {
                double total = 0.0;
                for (const auto& [ca, cb] : cols.pairs) total += s(ra, ca, rb, cb);
                return total;
            },
            true);
        const double value = std::max(cols.score, next_rows.score);
        if (value <= best) break;
        best = value;
        rows = std::move(next_rows.pairs);
    }
    return best;
}

}  // namespace

GritsBounds grits(const TableGrid& a, const TableGrid& b, const CellSim& sim) {
    if (a.empty() || b.empty()) {
        throw Error(ErrorCode::EmptyGrid, "grits requires non-empty grids");
    }
    const SimMatrix s(a, b, sim);
    const double denom = static_cast<double>(a.size() + b.size());
    const GridDims da{a.n_rows, a.n_cols};
    const GridDims db{b.n_rows, b.n_cols};
    const SimFn sim_ab = [&](int ra, int ca, int rb, int cb) { return s(ra, ca, rb, cb); };
    const SimFn sim_ba = [&](int rb, int cb, int ra, int ca) { return s(ra, ca, rb, cb); };

    const double row_factored = relaxed_row_alignment(da, db, sim_ab, false).score;
    // column-factored relaxation = row-factored on the transposed grids
    const GridDims ta{a.n_cols, a.n_rows};
    const GridDims tb{b.n_cols, b.n_rows};
    const SimFn sim_ab_t = [&](int ca, int ra, int cb, int rb) { return s(ra, ca, rb, cb); };
    const double col_factored = relaxed_row_alignment(ta, tb, sim_ab_t, false).score;
    const double upper_raw = std::min(row_factored, col_factored);

    // The alternation chain is deterministic but orientation-dependent;
    // running it both ways keeps the published bound symmetric (both values
    // are feasible, so the max still lower-bounds S*).
    const double lower_raw =
        std::max(alternation_value(da, db, sim_ab), alternation_value(db, da, sim_ba));

    GritsBounds out;
    out.upper = 2.0 * upper_raw / denom;
    out.lower = std::min(2.0 * lower_raw / denom, out.upper);
    return out;
}

double sim_top(const GridCell& a, const GridCell& b) {
    // Span rectangles relative to the aligned grid location.
    const double ar0 = -a.row_offset, ar1 = a.rowspan - a.row_offset;
    const double ac0 = -a.col_offset, ac1 = a.colspan - a.col_offset;
    const double br0 = -b.row_offset, br1 = b.rowspan - b.row_offset;
    const double bc0 = -b.col_offset, bc1 = b.colspan - b.col_offset;

    const double ir = std::max(0.0, std::min(ar1, br1) - std::max(ar0, br0));
    const double ic = std::max(0.0, std::min(ac1, bc1) - std::max(ac0, bc0));
    const double inter = ir * ic;
    const double area_a = static_cast<double>(a.rowspan) * a.colspan;
    const double area_b = static_cast<double>(b.rowspan) * b.colspan;
    return inter / (area_a + area_b - inter);
}

double sim_con(const GridCell& a, const GridCell& b) {
    if (a.text.empty() && b.text.empty()) return 1.0;
    const std::vector<char32_t> ta = utf8_decode(a.text);
    const std::vector<char32_t> tb = utf8_decode(b.text);
    if (ta.empty() && tb.empty()) return 1.0;
    return 2.0 * static_cast<double>(lcs_length(ta, tb)) /
           static_cast<double>(ta.size() + tb.size());
}

GritsBounds grits_top(const TableGrid& a, const TableGrid& b) {
    return grits(a, b, sim_top);
}

GritsBounds grits_con(const TableGrid& a, const TableGrid& b) {
    // Texts repeat across grid locations (spans, empty padding); memoize.
    std::unordered_map<std::string, int> ids;
    auto text_id = [&](const std::string& t) {
        return ids.try_emplace(t, static_cast<int>(ids.size())).first->second;
    };
    std::unordered_map<std::uint64_t, double> cache;
    CellSim sim = [&](const GridCell& ca, const GridCell& cb) {
        const int ia = text_id(ca.text);
        const int ib = text_id(cb.text);
        const std::uint64_t key =
            (static_cast<std::uint64_t>(std::min(ia, ib)) << 32) |
            static_cast<std::uint64_t>(std::max(ia, ib));
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        const double v = sim_con(ca, cb);
        cache.emplace(key, v);
        return v;
    };
    return grits(a, b, sim);
}

}  // namespace tabex
