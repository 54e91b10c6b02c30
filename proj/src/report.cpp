#include "tabex/report.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "tabex/errors.hpp"
#include "tabex/rng.hpp"

namespace tabex {

namespace {

double metric_value(const MetricVector& m, const std::string& name) {
    if (name == "teds") return m.teds;
    if (name == "lev_ted") return m.lev_ted;
    if (name == "grits_top_lower") return m.grits_top_lower;
    if (name == "grits_top_upper") return m.grits_top_upper;
    if (name == "grits_top_mean") return m.grits_top_mean;
    if (name == "grits_con_lower") return m.grits_con_lower;
    if (name == "grits_con_upper") return m.grits_con_upper;
    if (name == "grits_con_mean") return m.grits_con_mean;
    throw Error(ErrorCode::ConfigError, "unknown metric " + name);
}

bool lower_is_better(const std::string& name) { return name == "lev_ted"; }

double mean_of(const std::vector<double>& values) {
    if (values.empty()) return 0.0;
    return std::accumulate(values.begin(), values.end(), 0.0) /
           static_cast<double>(values.size());
}

std::string format_number(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

}  // namespace

const std::vector<std::string>& report_metric_names() {
    static const std::vector<std::string> kNames = {
        "teds",           "lev_ted",         "grits_top_lower", "grits_top_upper",
        "grits_top_mean", "grits_con_lower", "grits_con_upper", "grits_con_mean",
    };
    return kNames;
}

std::pair<double, double> bootstrap_ci(const std::vector<double>& values,
                                       std::size_t resamples, double level,
                                       std::uint64_t seed) {
    if (values.empty()) return {0.0, 0.0};
    if (resamples == 0) {
        const double m = mean_of(values);
        return {m, m};
    }
    Rng rng(seed);
    std::vector<double> means(resamples);
    for (std::size_t b = 0; b < resamples; ++b) {
        double total = 0.0;
        for (std::size_t k = 0; k < values.size(); ++k) {
            total += values[rng.below(values.size())];
        }
        means[b] = total / static_cast<double>(values.size());
    }
    std::sort(means.begin(), means.end());
    const double alpha = (1.0 - level) / 2.0;
    auto quantile = [&](double q) {
        const double pos = q * static_cast<double>(resamples - 1);
        const std::size_t lo = static_cast<std::size_t>(pos);
        const std::size_t hi = std::min(lo + 1, resamples - 1);
        const double frac = pos - static_cast<double>(lo);
        return means[lo] * (1.0 - frac) + means[hi] * frac;
    };
    return {quantile(alpha), quantile(1.0 - alpha)};
}

std::vector<Aggregate> aggregate(const std::vector<Prediction>& predictions,
                                 const AggregateOptions& options) {
    if (predictions.empty()) {
        throw Error(ErrorCode::EmptySample, "no predictions to aggregate");
    }

    std::size_t n_valid = 0;
    std::size_t exact_count = 0;
    for (const Prediction& pred : predictions) {
        if (pred.metrics) {
            ++n_valid;
            if (pred.metrics->exact_match) ++exact_count;
        }
    }

    std::vector<Aggregate> out;
    for (const std::string& name : report_metric_names()) {
        std::vector<double> values;
        values.reserve(predictions.size());
        for (const Prediction& pred : predictions) {
            if (pred.metrics) {
                values.push_back(metric_value(*pred.metrics, name));
            } else if (options.penalize_invalid) {
                values.push_back(0.0);
            }
        }
        Aggregate agg;
        agg.metric_name = name;
        agg.n_valid = n_valid;
        agg.n_total = predictions.size();
        agg.exact_match_count = exact_count;
        agg.mean = mean_of(values);
        std::tie(agg.ci_low, agg.ci_high) =
            bootstrap_ci(values, options.resamples, options.level,
                         mix_seed(options.seed, name));
        out.push_back(std::move(agg));
    }
    return out;
}

std::vector<Improvement> improvement_vs_baseline(const std::vector<Prediction>& method,
                                                 const std::vector<Prediction>& baseline,
                                                 JoinReport* join) {
    std::map<std::string, const MetricVector*> method_by_id, baseline_by_id;
    for (const Prediction& p : method) {
        if (p.metrics) method_by_id[p.task_id] = &*p.metrics;
    }
    for (const Prediction& p : baseline) {
        if (p.metrics) baseline_by_id[p.task_id] = &*p.metrics;
    }

    std::vector<std::pair<const MetricVector*, const MetricVector*>> joined;
    JoinReport local;
    for (const auto& [id, m] : method_by_id) {
        auto it = baseline_by_id.find(id);
        if (it == baseline_by_id.end()) {
            local.method_only.push_back(id);
        } else {
            joined.emplace_back(m, it->second);
        }
    }
    for (const auto& [id, m] : baseline_by_id) {
        if (!method_by_id.count(id)) local.baseline_only.push_back(id);
    }
    if (join) *join = std::move(local);

    std::vector<Improvement> out;
    for (const std::string& name : report_metric_names()) {
        Improvement imp;
        imp.metric_name = name;
        imp.n_joined = joined.size();
        if (!joined.empty()) {
            const bool inverted = lower_is_better(name);
            std::size_t improved = 0;
            double delta_total = 0.0;
            for (const auto& [m, b] : joined) {
                const double vm = metric_value(*m, name);
                const double vb = metric_value(*b, name);
                if (inverted ? vm < vb : vm > vb) ++improved;
                delta_total += inverted ? vb - vm : vm - vb;
            }
            imp.ratio_improved =
                static_cast<double>(improved) / static_cast<double>(joined.size());
            imp.mean_abs_improvement = delta_total / static_cast<double>(joined.size());
        }
        out.push_back(std::move(imp));
    }
    return out;
}

namespace {

std::string render_table_text(const std::vector<ReportRow>& rows) {
    std::ostringstream os;
    auto cell = [&](const std::string& text, std::size_t width) {
        os << text;
        for (std::size_t pad = text.size(); pad < width; ++pad) os << ' ';
        os << "  ";
    };
    auto fixed3 = [](double v) {
        std::ostringstream tmp;
        tmp << std::fixed << std::setprecision(3) << v;
        return tmp.str();
    };

    std::size_t label_w = 5;
    for (const ReportRow& row : rows) label_w = std::max(label_w, row.label.size());

    cell("run", label_w);
    cell("exact/valid", 12);
    cell("grits_top", 14);
    cell("grits_con", 14);
    cell("teds", 6);
    cell("lev_ted", 10);
    os << '\n';

    for (const ReportRow& row : rows) {
        std::map<std::string, const Aggregate*> by_name;
        for (const Aggregate& agg : row.aggregates) by_name[agg.metric_name] = &agg;
        const Aggregate* teds = by_name.at("teds");
        cell(row.label, label_w);
        cell(std::to_string(teds->exact_match_count) + "/" + std::to_string(teds->n_valid) +
                 " of " + std::to_string(teds->n_total),
             12);
        cell(fixed3(by_name.at("grits_top_lower")->mean) + " - " +
                 fixed3(by_name.at("grits_top_upper")->mean),
             14);
        cell(fixed3(by_name.at("grits_con_lower")->mean) + " - " +
                 fixed3(by_name.at("grits_con_upper")->mean),
             14);
        cell(fixed3(teds->mean), 6);
        cell(fixed3(by_name.at("lev_ted")->mean), 10);
        os << '\n';
    }

    os << "\n95% bootstrap intervals\n";
    for (const ReportRow& row : rows) {
        for (const Aggregate& agg : row.aggregates) {
            os << row.label << "  " << agg.metric_name << "  mean " << fixed3(agg.mean)
               << "  ci [" << fixed3(agg.ci_low) << ", " << fixed3(agg.ci_high) << "]\n";
        }
    }

    bool any_improvements = false;
    for (const ReportRow& row : rows) any_improvements |= !row.improvements.empty();
    if (any_improvements) {
        os << "\nimprovement vs baseline\n";
        for (const ReportRow& row : rows) {
            for (const Improvement& imp : row.improvements) {
                os << row.label << "  " << imp.metric_name << "  improved "
                   << fixed3(imp.ratio_improved) << "  mean_delta "
                   << fixed3(imp.mean_abs_improvement) << "  n " << imp.n_joined << '\n';
            }
        }
    }
    return os.str();
}

std::string render_csv(const std::vector<ReportRow>& rows) {
    std::ostringstream os;
    os << "run,metric,mean,ci_low,ci_high,n_valid,n_total,exact_match_count,"
          "ratio_improved,mean_abs_improvement\n";
    for (const ReportRow& row : rows) {
        std::map<std::string, const Improvement*> imp_by_name;
        for (const Improvement& imp : row.improvements) imp_by_name[imp.metric_name] = &imp;
        for (const Aggregate& agg : row.aggregates) {
            os << row.label << ',' << agg.metric_name << ',' << format_number(agg.mean) << ','
               << format_number(agg.ci_low) << ',' << format_number(agg.ci_high) << ','
               << agg.n_valid << ',' << agg.n_total << ',' << agg.exact_match_count << ',';
            auto it = imp_by_name.find(agg.metric_name);
            if (it != imp_by_name.end()) {
                os << format_number(it->second->ratio_improved) << ','
                   << format_number(it->second->mean_abs_improvement);
            } else {
                os << ',';
            }
            os << '\n';
        }
    }
    return os.str();
}

std::string render_json(const std::vector<ReportRow>& rows) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const ReportRow& row : rows) {
        nlohmann::ordered_json entry;
        entry["run"] = row.label;
        nlohmann::ordered_json metrics = nlohmann::ordered_json::array();
        std::map<std::string, const Improvement*> imp_by_name;
        for (const Improvement& imp : row.improvements) imp_by_name[imp.metric_name] = &imp;
        for (const Aggregate& agg : row.aggregates) {
            nlohmann::ordered_json m;
            m["metric"] = agg.metric_name;
            m["mean"] = agg.mean;
            m["ci_low"] = agg.ci_low;
            m["ci_high"] = agg.ci_high;
            m["n_valid"] = agg.n_valid;
            m["n_total"] = agg.n_total;
            m["exact_match_count"] = agg.exact_match_count;
            auto it = imp_by_name.find(agg.metric_name);
            if (it != imp_by_name.end()) {
                m["ratio_improved"] = it->second->ratio_improved;
                m["mean_abs_improvement"] = it->second->mean_abs_improvement;
                m["n_joined"] = it->second->n_joined;
            }
            metrics.push_back(std::move(m));
        }
        entry["metrics"] = std::move(metrics);
        doc.push_back(std::move(entry));
    }
    return doc.dump(2);
}

}  // namespace

std::string render_report(const std::vector<ReportRow>& rows, ReportFormat format) {
    switch (format) {
        case ReportFormat::table_text: return render_table_text(rows);
        case ReportFormat::csv: return render_csv(rows);
        case ReportFormat::json: return render_json(rows);
    }
    return {};
}

}  // namespace tabex
