#include <algorithm>
#include <unordered_map>
#include <vector>

#include "tabex/metrics.hpp"
#include "tabex/text.hpp"

namespace tabex {

namespace {

// Postorder-flattened tree for the Zhang-Shasha recurrence.
struct FlatTree {
    std::vector<const std::string*> labels;  // by postorder index
    std::vector<int> lml;                    // leftmost leaf descendant
    std::vector<int> keyroots;

    int size() const { return static_cast<int>(labels.size()); }
};

int flatten(const TableNode& node, FlatTree& out) {
    int first_leaf = -1;
    for (const TableNode& child : node.children) {
        int child_lml = flatten(child, out);
        if (first_leaf < 0) first_leaf = child_lml;
    }
    int index = out.size();
    if (first_leaf < 0) first_leaf = index;
    out.labels.push_back(&node.label);
    out.lml.push_back(first_leaf);
    return first_leaf;
}

FlatTree flatten(const TableTree& tree) {
    FlatTree out;
    flatten(tree.root, out);
    // keyroots: nodes with no later node sharing their leftmost leaf
    std::unordered_map<int, int> last_with_lml;
    for (int i = 0; i < out.size(); ++i) last_with_lml[out.lml[i]] = i;
    for (int i = 0; i < out.size(); ++i) {
        if (last_with_lml[out.lml[i]] == i) out.keyroots.push_back(i);
    }
    return out;
}

// Per-node costs with memoized label-pair substitution for the Levenshtein
// model (structural labels repeat heavily).
class Costs {
public:
    Costs(const FlatTree& a, const FlatTree& b, CostModel model)
        : model_(model), a_(a), b_(b) {
        if (model_.kind == CostModel::Kind::levenshtein) {
            a_ids_ = intern(a, decoded_);
            b_ids_ = intern(b, decoded_);
            del_a_ = node_costs(a_ids_);
            del_b_ = node_costs(b_ids_);
            sub_cache_.assign(decoded_.size() * decoded_.size(), -1.0);
        }
    }

    double del(int i) const {
        return model_.kind == CostModel::Kind::unit ? 1.0 : del_a_[static_cast<std::size_t>(i)];
    }
    double ins(int j) const {
        return model_.kind == CostModel::Kind::unit ? 1.0 : del_b_[static_cast<std::size_t>(j)];
    }
    double sub(int i, int j) const {
        if (model_.kind == CostModel::Kind::unit) {
            return *a_.labels[static_cast<std::size_t>(i)] ==
                           *b_.labels[static_cast<std::size_t>(j)]
                       ? 0.0
                       : 1.0;
        }
        std::size_t ia = a_ids_[static_cast<std::size_t>(i)];
        std::size_t ib = b_ids_[static_cast<std::size_t>(j)];
        double& slot = sub_cache_[ia * decoded_.size() + ib];
        if (slot < 0.0) {
            slot = static_cast<double>(levenshtein(decoded_[ia], decoded_[ib]));
            sub_cache_[ib * decoded_.size() + ia] = slot;
        }
        return slot;
    }

private:
    std::vector<std::size_t> intern(const FlatTree& t,
                                    std::vector<std::vector<char32_t>>& pool) {
        std::vector<std::size_t> ids(t.labels.size());
        for (std::size_t i = 0; i < t.labels.size(); ++i) {
            auto [it, inserted] = label_ids_.try_emplace(*t.labels[i], pool.size());
            if (inserted) pool.push_back(utf8_decode(*t.labels[i]));
            ids[i] = it->second;
        }
        return ids;
    }

    std::vector<double> node_costs(const std::vector<std::size_t>& ids) {
        std::vector<double> out(ids.size());
        for (std::size_t i = 0; i < ids.size(); ++i) {
            out[i] = std::max<std::size_t>(1, decoded_[ids[i]].size());
        }
        return out;
    }

    CostModel model_;
    const FlatTree& a_;
    const FlatTree& b_;
    std::unordered_map<std::string, std::size_t> label_ids_;
    std::vector<std::vector<char32_t>> decoded_;
    std::vector<std::size_t> a_ids_, b_ids_;
    std::vector<double> del_a_, del_b_;
    mutable std::vector<double> sub_cache_;
};

class ZhangShasha {
public:
    ZhangShasha(const FlatTree& a, const FlatTree& b, const Costs& costs)
        : a_(a), b_(b), costs_(costs),
          td_(static_cast<std::size_t>(a.size()) * b.size(), 0.0) {}

    double run() {
        for (int i : a_.keyroots) {
            for (int j : b_.keyroots) {
                tree_dist(i, j);
            }
        }
        return td(a_.size() - 1, b_.size() - 1);
    }

private:
    double& td(int i, int j) { return td_[static_cast<std::size_t>(i) * b_.size() + j]; }

    void tree_dist(int i, int j) {
        const int li = a_.lml[static_cast<std::size_t>(i)];
        const int lj = b_.lml[static_cast<std::size_t>(j)];
        const int m = i - li + 2;
        const int n = j - lj + 2;
        fd_.assign(static_cast<std::size_t>(m) * n, 0.0);
        auto fd = [&](int x, int y) -> double& {
            return fd_[static_cast<std::size_t>(x) * n + y];
        };

        for (int x = 1; x < m; ++x) fd(x, 0) = fd(x - 1, 0) + costs_.del(li + x - 1);
        for (int y = 1; y < n; ++y) fd(0, y) = fd(0, y - 1) + costs_.ins(lj + y - 1);

        for (int x = 1; x < m; ++x) {
            const int ai = li + x - 1;
            for (int y = 1; y < n; ++y) {
                const int bj = lj + y - 1;
                const double del = fd(x - 1, y) + costs_.del(ai);
                const double ins = fd(x, y - 1) + costs_.ins(bj);
                if (a_.lml[static_cast<std::size_t>(ai)] == li &&
                    b_.lml[static_cast<std::size_t>(bj)] == lj) {
                    const double sub = fd(x - 1, y - 1) + costs_.sub(ai, bj);
                    fd(x, y) = std::min({del, ins, sub});
                    td(ai, bj) = fd(x, y);
                } else {
                    const int p = a_.lml[static_cast<std::size_t>(ai)] - li;
                    const int q = b_.lml[static_cast<std::size_t>(bj)] - lj;
                    fd(x, y) = std::min({del, ins, fd(p, q) + td(ai, bj)});
                }
            }
        }
    }

    const FlatTree& a_;
    const FlatTree& b_;
    const Costs& costs_;
    std::vector<double> td_;
    std::vector<double> fd_;
};

}  // namespace

double ted(const TableTree& a, const TableTree& b, CostModel cost) {
    FlatTree fa = flatten(a);
    FlatTree fb = flatten(b);
    Costs costs(fa, fb, cost);
    return ZhangShasha(fa, fb, costs).run();
}

double teds(const TableTree& a, const TableTree& b, TedsNorm norm) {
    const double d = ted(a, b, CostModel::unit());
    const double na = static_cast<double>(tree_size(a));
    const double nb = static_cast<double>(tree_size(b));
    if (norm == TedsNorm::size_sum) return 1.0 - d / (na + nb);
    return std::max(0.0, 1.0 - d / std::max(na, nb));
}

double lev_ted(const TableTree& a, const TableTree& b) {
    return ted(a, b, CostModel::levenshtein());
}

}  // namespace tabex
