// Acceptance suite: one criterion per function, one PASS/FAIL line each.
// Exit code is the number of failed criteria.

#include <array>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "json_decoder.hpp"
#include "support.hpp"
#include "tabex/backend.hpp"
#include "tabex/errors.hpp"
#include "tabex/html.hpp"
#include "tabex/metrics.hpp"
#include "tabex/perturb.hpp"
#include "tabex/pipeline.hpp"
#include "tabex/report.hpp"
#include "tabex/rng.hpp"
#include "tabex/scitsr.hpp"
#include "tabex/task_io.hpp"

using namespace tabex;
namespace fs = std::filesystem;

namespace {

struct CheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool condition, const std::string& message) {
    if (!condition) throw CheckFailure(message);
}

// ─── 1: TED oracle equivalence ───────────────────────────────

void criterion_ted_oracle() {
    Rng rng(20250810);
    const std::vector<std::string> labels = {"a", "b", "c"};
    for (int pair = 0; pair < 500; ++pair) {
        TableTree a = testsupport::random_tree(rng, 6, labels);
        TableTree b = testsupport::random_tree(rng, 6, labels);
        const double got = ted(a, b, CostModel::unit());
        const double expected = testsupport::brute_force_ted(a, b, CostModel::unit());
        require(std::abs(got - expected) < 1e-12,
                "pair " + std::to_string(pair) + ": ted=" + std::to_string(got) +
                    " oracle=" + std::to_string(expected));
    }
}

// ─── 2: TEDS formula ─────────────────────────────────────────

void criterion_teds_formula() {
    using testsupport::n;
    using testsupport::tree;
    const TableTree single_a = tree(n("a"));
    const TableTree single_b = tree(n("b"));
    const TableTree with_child = tree(n("a", {n("b")}));

    require(std::abs(teds(single_a, single_a) - 1.0) < 1e-12, "identity != 1");
    require(std::abs(teds(single_a, single_b) - 0.5) < 1e-12, "substitution != 0.5");
    require(std::abs(teds(single_a, with_child) - 2.0 / 3.0) < 1e-12, "insertion != 2/3");
}

// ─── 3: GriTS bracketing ─────────────────────────────────────

void criterion_grits_bracketing() {
    Rng rng(424242);
    const std::vector<std::string> alphabet = {"a", "b", "c"};
    int pairs = 0;
    auto check_pair = [&](const TableGrid& a, const TableGrid& b, const CellSim& sim,
                          const GritsBounds& bounds) {
        const double exact = testsupport::exhaustive_2dmss(a, b, sim);
        require(bounds.lower <= exact + 1e-9,
                "pair " + std::to_string(pairs) + ": lower " + std::to_string(bounds.lower) +
                    " > exact " + std::to_string(exact));
        require(exact <= bounds.upper + 1e-9,
                "pair " + std::to_string(pairs) + ": exact " + std::to_string(exact) +
                    " > upper " + std::to_string(bounds.upper));
        ++pairs;
    };
    for (int iter = 0; iter < 700; ++iter) {
        TableGrid a = testsupport::random_grid(rng, 3, 3, alphabet);
        TableGrid b = testsupport::random_grid(rng, 3, 3, alphabet);
        check_pair(a, b, sim_con, grits_con(a, b));
    }
    for (int iter = 0; iter < 350; ++iter) {
        TableGrid a = testsupport::random_span_grid(rng, 3, 3, alphabet);
        TableGrid b = testsupport::random_span_grid(rng, 3, 3, alphabet);
        check_pair(a, b, sim_top, grits_top(a, b));
    }
    require(pairs >= 1000, "only " + std::to_string(pairs) + " pairs sampled");

    for (int iter = 0; iter < 25; ++iter) {
        TableGrid g = testsupport::random_span_grid(rng, 3, 3, alphabet);
        const GritsBounds top = grits_top(g, g);
        const GritsBounds con = grits_con(g, g);
        require(top.lower == 1.0 && top.upper == 1.0, "identical grids: grits_top != (1,1)");
        require(con.lower == 1.0 && con.upper == 1.0, "identical grids: grits_con != (1,1)");
    }
}

// ─── 4: metric invariant suite ───────────────────────────────

void criterion_metric_invariants() {
    Rng rng(777);
    const std::vector<std::string> labels = {"a", "bb", "ccc"};
    for (int iter = 0; iter < 1000; ++iter) {
        TableTree a = testsupport::random_tree(rng, 7, labels);
        TableTree b = testsupport::random_tree(rng, 7, labels);
        TableTree c = testsupport::random_tree(rng, 7, labels);

        for (CostModel model : {CostModel::unit(), CostModel::levenshtein()}) {
            const double ab = ted(a, b, model);
            const double ba = ted(b, a, model);
            const double bc = ted(b, c, model);
            const double ac = ted(a, c, model);
            require(ab == ba, "ted not symmetric");
            require(ac <= ab + bc + 1e-9, "triangle inequality violated");
            require(ted(a, a, model) == 0.0, "self distance nonzero");
        }
        const double s = teds(a, b);
        require(s >= 0.0 && s <= 1.0, "teds out of range");
        require(std::abs(teds(a, b) - teds(b, a)) < 1e-12, "teds not symmetric");
        require(teds(a, a) == 1.0, "teds identity != 1");
        require(lev_ted(a, a) == 0.0, "lev_ted identity != 0");
    }
}

// ─── 5: span expansion fixtures ──────────────────────────────

const std::vector<std::string>& span_fixtures() {
    // financial-report style table: two-level header with column groups and
    // a rowspan label column
    static const std::vector<std::string> kFixtures = {
        "<table><thead>"
        "<tr><th rowspan=\"2\">Model</th><th colspan=\"3\">TEDS</th>"
        "<th colspan=\"3\">LevTED</th></tr>"
        "<tr><th>Sd</th><th>Lift</th><th>Eeft</th><th>Sd</th><th>Lift</th><th>Eeft</th></tr>"
        "</thead><tbody>"
        "<tr><td>alpha 1B</td><td>0.696</td><td>0.880</td><td>0.887</td>"
        "<td>477</td><td>214</td><td>192</td></tr>"
        "<tr><td>beta 7B</td><td>0.761</td><td>0.936</td><td>0.927</td>"
        "<td>377</td><td>98</td><td>112</td></tr>"
        "</tbody></table>",
        "<table><tr><td colspan=\"2\">x</td></tr><tr><td>a</td><td>b</td></tr></table>",
        "<table><tr><td rowspan=\"2\">x</td><td>a</td></tr><tr><td>b</td></tr></table>",
        "<table><tr><td rowspan=\"2\" colspan=\"2\">x</td><td>a</td></tr>"
        "<tr><td>b</td></tr><tr><td>c</td><td>d</td><td>e</td></tr></table>",
        "<table><tr><td>a</td><td rowspan=\"3\">tall</td></tr><tr><td>b</td></tr>"
        "<tr><td>c</td></tr></table>",
        "<table><tr><td colspan=\"3\">header</td></tr>"
        "<tr><td>1</td><td>2</td><td>3</td></tr></table>",
        "<table><thead><tr><th colspan=\"2\">group</th><th>solo</th></tr>"
        "<tr><th>a</th><th>b</th><th>c</th></tr></thead>"
        "<tbody><tr><td>1</td><td>2</td><td>3</td></tr></tbody></table>",
        "<table><tr><td rowspan=\"2\">l</td><td>a</td><td rowspan=\"2\">r</td></tr>"
        "<tr><td>b</td></tr></table>",
        "<table><tr><td>a</td><td colspan=\"2\">wide</td></tr>"
        "<tr><td colspan=\"2\">wide2</td><td>b</td></tr></table>",
        "<table><tr><td rowspan=\"2\">x</td><td rowspan=\"2\">y</td><td>a</td></tr>"
        "<tr><td>b</td></tr></table>",
        "<table><tr><td>a</td><td>b</td><td>c</td></tr>"
        "<tr><td colspan=\"3\">footer</td></tr></table>",
        "<table><tr><td rowspan=\"3\" colspan=\"2\">big</td><td>a</td></tr>"
        "<tr><td>b</td></tr><tr><td>c</td></tr></table>",
        "<table><thead><tr><th rowspan=\"2\">id</th><th colspan=\"2\">pair</th></tr>"
        "<tr><th>x</th><th>y</th></tr></thead>"
        "<tbody><tr><td>0</td><td>1</td><td>2</td></tr></tbody></table>",
        "<table><tr><td>a</td><td rowspan=\"2\">m</td><td>c</td></tr>"
        "<tr><td>d</td><td>f</td></tr></table>",
        "<table><tr><td colspan=\"2\">ab</td><td colspan=\"2\">cd</td></tr>"
        "<tr><td>1</td><td>2</td><td>3</td><td>4</td></tr></table>",
        "<table><tr><td rowspan=\"2\">a</td><td>b</td></tr><tr><td>c</td></tr>"
        "<tr><td>d</td><td>e</td></tr></table>",
        "<table><tr><td> spaced  text </td><td colspan=\"2\">x &amp; y</td></tr>"
        "<tr><td>1</td><td>2</td><td>3</td></tr></table>",
        "<table><tbody><tr><td rowspan=\"4\">quarters</td><td>q1</td></tr>"
        "<tr><td>q2</td></tr><tr><td>q3</td></tr><tr><td>q4</td></tr></tbody></table>",
        "<table><tr><td colspan=\"2\" rowspan=\"2\">nw</td><td>ne</td></tr>"
        "<tr><td rowspan=\"2\">e</td></tr><tr><td>s1</td><td>s2</td></tr></table>",
        "<table><tr><td>a</td><td>b</td></tr>"
        "<tr><td colspan=\"2\" rowspan=\"2\">blk</td></tr><tr></tr></table>",
        "<table><thead><tr><th>h1</th><th colspan=\"2\">h23</th></tr></thead>"
        "<tbody><tr><td rowspan=\"2\">r</td><td>x</td><td>y</td></tr>"
        "<tr><td>z</td><td>w</td></tr></tbody></table>",
        "<table><tr><td rowspan=\"2\">a</td><td colspan=\"2\">bc</td></tr>"
        "<tr><td>b</td><td>c</td></tr><tr><td>x</td><td>y</td><td>z</td></tr></table>",
    };
    return kFixtures;
}

void criterion_span_roundtrip() {
    const auto& fixtures = span_fixtures();
    require(fixtures.size() >= 20, "need at least 20 fixtures");
    std::size_t with_spans = 0;
    for (std::size_t i = 0; i < fixtures.size(); ++i) {
        const TableGrid grid = to_grid(parse_table(fixtures[i]));
        if (grid.has_spans()) ++with_spans;
        const std::string rebuilt = canonical_html(grid_to_tree(grid));
        const TableGrid grid2 = to_grid(parse_table(rebuilt));
        require(grid == grid2, "fixture " + std::to_string(i) + " changed occupancy");
    }
    require(with_spans >= 20, "not enough spanning fixtures");
}

// ─── 6: pipeline determinism ─────────────────────────────────

struct Fixture50 {
    std::vector<Task> tasks;
    std::string extractor_replay;
    std::string repairer_replay;
    std::string eeft_replay;
};

Fixture50 build_fixture_50(const fs::path& dir) {
    Fixture50 f;
    std::ofstream ex(dir / "extractor.jsonl");
    std::ofstream rp(dir / "repairer.jsonl");
    std::ofstream ee(dir / "eeft.jsonl");
    Rng rng(99);
    const std::vector<std::string> alphabet = {"alpha", "beta", "42", "x"};
    for (int i = 0; i < 50; ++i) {
        TableGrid grid;
        do {
            grid = testsupport::random_span_grid(rng, 4, 4, alphabet);
        } while (!grid.has_content());
        const std::string truth = canonical_html(grid_to_tree(grid));
        Task task;
        task.id = "fix" + std::to_string(i);
        task.ground_truth_html = truth;
        task.raw_text = flatten_clipboard(parse_table(truth));
        f.tasks.push_back(task);

        // the extractor answers with a slightly damaged table, the repairer
        // (and the end-to-end model) answer with the truth, except a few
        // stubborn tasks that stay broken
        std::string damaged = truth;
        const std::size_t cut = damaged.find("</td>");
        if (cut != std::string::npos) damaged.insert(cut, "!");
        ex << replay_entry_json(task.id, "Here you go:\n```html\n" + damaged + "\n```") << '\n';
        const bool stubborn = i % 9 == 0;
        rp << replay_entry_json(task.id, stubborn ? damaged : truth) << '\n';
        ee << replay_entry_json(task.id, stubborn ? "no table, sorry" : truth) << '\n';
    }
    f.extractor_replay = (dir / "extractor.jsonl").string();
    f.repairer_replay = (dir / "repairer.jsonl").string();
    f.eeft_replay = (dir / "eeft.jsonl").string();
    return f;
}

BackendSpec replay_spec(const std::string& path) {
    BackendSpec spec;
    spec.kind = BackendKind::replay;
    spec.replay_path = path;
    spec.max_concurrency = 8;
    return spec;
}

std::string run_once(const Fixture50& f, Mode mode) {
    Backend extractor(replay_spec(f.extractor_replay));
    Backend repairer(replay_spec(f.repairer_replay));
    Backend eeft_model(replay_spec(f.eeft_replay));

    const bool repaired = mode == Mode::sd || mode == Mode::lift;
    BatchOptions options;
    options.concurrency = 4;

    std::vector<Prediction> predictions;
    run_batch(f.tasks, mode, repaired ? extractor : eeft_model,
              repaired ? &repairer : nullptr, options,
              [&](const Prediction& p) { predictions.push_back(p); });

    const int expected_calls = repaired ? 2 : 1;
    for (const Prediction& p : predictions) {
        require(p.backend_calls == expected_calls,
                std::string(mode_name(mode)) + ": " + p.task_id + " made " +
                    std::to_string(p.backend_calls) + " calls, expected " +
                    std::to_string(expected_calls));
    }

    std::map<std::string, std::string> truth_by_id;
    for (const Task& t : f.tasks) truth_by_id[t.id] = t.ground_truth_html;

    std::string prediction_file;
    for (Prediction& p : predictions) {
        p.metrics = score(p.final_output, truth_by_id.at(p.task_id));
        prediction_file += prediction_to_json_line(p) + "\n";
    }

    AggregateOptions agg;
    agg.seed = 1;
    ReportRow row;
    row.label = std::string(mode_name(mode));
    row.aggregates = aggregate(predictions, agg);
    const std::string report_csv = render_report({row}, ReportFormat::csv);
    const std::string report_json = render_report({row}, ReportFormat::json);
    return prediction_file + "\x1e" + report_csv + "\x1e" + report_json;
}

void criterion_pipeline_determinism() {
    const fs::path dir = fs::temp_directory_path() / "tabex_acceptance_fixture";
    fs::create_directories(dir);
    Fixture50 f = build_fixture_50(dir);
    for (Mode mode : {Mode::sd, Mode::lift, Mode::eeft}) {
        const std::string first = run_once(f, mode);
        const std::string second = run_once(f, mode);
        require(first == second, std::string(mode_name(mode)) +
                                     ": prediction/report bytes differ between runs");
    }
    fs::remove_all(dir);
}

// ─── 7: repair corpus construction ───────────────────────────

void criterion_repair_corpus() {
    const fs::path dir = fs::temp_directory_path() / "tabex_acceptance_corpus";
    fs::create_directories(dir);
    const std::string truth = "<table><tr><td>a</td><td>b</td></tr></table>";

    std::vector<Task> tasks;
    std::ofstream replay(dir / "extractor.jsonl");
    for (int i = 0; i < 10; ++i) {
        Task t;
        t.id = "c" + std::to_string(i);
        t.raw_text = "a b";
        t.ground_truth_html = truth;
        tasks.push_back(t);
        replay << replay_entry_json(t.id, i == 3 ? "garbage with no table" : truth) << '\n';
    }
    replay.close();

    Backend extractor(replay_spec((dir / "extractor.jsonl").string()));
    std::vector<std::string> lines;
    RepairCorpusSummary summary = build_repair_corpus(
        tasks, extractor, 0.5, [&](const std::string& line) { lines.push_back(line); });

    require(summary.kept == 9, "kept " + std::to_string(summary.kept) + ", expected 9");
    require(summary.dropped == 1, "dropped " + std::to_string(summary.dropped) + ", expected 1");
    require(lines.size() == 9, "corpus has " + std::to_string(lines.size()) + " records");
    fs::remove_all(dir);
}

// ─── 8: perturbation contracts ───────────────────────────────

void criterion_perturbation_contracts() {
    TableGrid grid = testsupport::grid_from_texts(
        {{"h1", "h2", "h3"}, {"a", "b", "c"}, {"d", "e", "f"}}, /*header_rows=*/1);

    PerturbConfig cfg;
    cfg.seed = 5;
    cfg.separator_flip_probability = 1.0;
    cfg.junk_line_probability = 0.0;
    const std::string csv = make_noisy_csv(grid, cfg);
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        int separators = 0;
        for (char c : line) {
            if (c == ',' || c == '\t' || c == '|' || c == '^') ++separators;
            else require(std::isalnum(static_cast<unsigned char>(c)) != 0,
                         std::string("unexpected character '") + c + "' in noisy csv");
        }
        require(separators == 2, "wrong separator count in: " + line);
    }

    const std::string encoded = make_json(grid);
    require(testsupport::decode_reference_json(encoded) == grid,
            "JSON round trip changed the grid");

    TableGrid spanned = to_grid(parse_table(
        "<table><tr><td colspan=\"2\">x</td></tr><tr><td>a</td><td>b</td></tr></table>"));
    bool rejected = false;
    try {
        (void)make_noisy_csv(spanned, cfg);
    } catch (const Error& e) {
        rejected = e.code() == ErrorCode::HasSpans;
    }
    require(rejected, "spanning grid not rejected by make_noisy_csv");

    rejected = false;
    try {
        (void)make_json(spanned);
    } catch (const Error& e) {
        rejected = e.code() == ErrorCode::HasSpans;
    }
    require(rejected, "spanning grid not rejected by make_json");

    TableGrid headerless = testsupport::grid_from_texts({{"a", "b"}, {"c", "d"}});
    rejected = false;
    try {
        (void)make_json(headerless);
    } catch (const Error& e) {
        rejected = e.code() == ErrorCode::NoHeader;
    }
    require(rejected, "headerless grid not rejected by make_json");

    // exclusion rules applied end to end
    auto task_of = [](std::string id, std::string html) {
        Task t;
        t.id = std::move(id);
        t.raw_text = "x";
        t.ground_truth_html = std::move(html);
        return t;
    };
    std::vector<Task> tasks = {
        task_of("plain", "<table><thead><tr><th>h</th></tr></thead>"
                         "<tbody><tr><td>v</td></tr></tbody></table>"),
        task_of("nohead", "<table><tr><td>v</td></tr></table>"),
        task_of("spans", "<table><tr><td rowspan=\"2\">x</td><td>a</td></tr>"
                         "<tr><td>b</td></tr></table>"),
    };
    RobustnessSets sets = sample_robustness_set(tasks, 3, 11);
    require(sets.csv_tasks.size() == 2, "csv set should exclude spanning tables only");
    require(sets.json_tasks.size() == 1, "json set should also exclude headerless tables");
}

// ─── 9: bootstrap confidence intervals ───────────────────────

void criterion_bootstrap() {
    std::vector<double> constant(40, 0.5);
    auto [lo, hi] = bootstrap_ci(constant, 1000, 0.95, 3);
    require(lo == 0.5 && hi == 0.5, "constant sample interval not zero-width");

    // Monte-Carlo coverage on normal(mu, 1) samples, n=100 per trial
    const double mu = 0.25;
    const std::size_t trials = 10000;
    const std::size_t n = 100;
    Rng rng(123456);
    auto normal = [&] {  // Box-Muller
        const double u1 = std::max(rng.unit(), 1e-300);
        const double u2 = rng.unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    };
    std::size_t covered = 0;
    std::vector<double> sample(n);
    for (std::size_t t = 0; t < trials; ++t) {
        for (std::size_t i = 0; i < n; ++i) sample[i] = mu + normal();
        auto [low, high] = bootstrap_ci(sample, 1000, 0.95, rng.next_u64());
        if (low <= mu && mu <= high) ++covered;
    }
    const double coverage = static_cast<double>(covered) / static_cast<double>(trials);
    require(std::abs(coverage - 0.95) <= 0.02,
            "coverage " + std::to_string(coverage) + " outside 0.95 +/- 0.02");
}

// ─── 10: split reproduction ──────────────────────────────────

void criterion_split_reproduction() {
    std::vector<Task> corpus;
    Rng rng(2);
    for (int i = 0; i < 12696; ++i) {
        Task t;
        t.id = "syn" + std::to_string(i);
        t.raw_text = "x";
        t.ground_truth_html = "<table><tr><td>a</td></tr></table>";
        const std::uint64_t d = rng.below(3);
        t.source_dataset = d == 0   ? SourceDataset::pubtabnet
                           : d == 1 ? SourceDataset::fintabnet
                                    : SourceDataset::scitsr;
        corpus.push_back(std::move(t));
    }

    SplitSpec spec;
    spec.sizes = {{8967, 1133, 2596}};
    SplitSummary summary;
    std::vector<Task> assigned = split_tasks(corpus, spec, 7, &summary);

    std::array<std::size_t, 3> counts{};
    for (const Task& t : assigned) counts[static_cast<std::size_t>(t.split)] += 1;
    require(counts[0] == 8967, "train size " + std::to_string(counts[0]));
    require(counts[1] == 1133, "val size " + std::to_string(counts[1]));
    require(counts[2] == 2596, "test size " + std::to_string(counts[2]));

    const std::string table = summary.to_table();
    for (const char* dataset : {"pubtabnet", "fintabnet", "scitsr"}) {
        require(table.find(dataset) != std::string::npos,
                std::string("summary table lacks ") + dataset);
    }
    std::array<std::size_t, 3> from_summary{};
    for (std::size_t d = 0; d < 4; ++d) {
        for (std::size_t s = 0; s < 3; ++s) from_summary[s] += summary.counts[d][s];
    }
    require(from_summary == counts, "per-dataset table does not add up to the split sizes");

    // the same seed reproduces the same partition
    std::vector<Task> again = split_tasks(corpus, spec, 7, nullptr);
    require(again.size() == assigned.size(), "partition size changed");
    for (std::size_t i = 0; i < again.size(); ++i) {
        require(again[i].id == assigned[i].id && again[i].split == assigned[i].split,
                "partition not reproducible at index " + std::to_string(i));
    }
}

}  // namespace

int main() {
    struct Criterion {
        int number;
        const char* name;
        std::function<void()> body;
    };
    const std::vector<Criterion> criteria = {
        {1, "ted-oracle-equivalence (500 pairs, <=6 nodes)", criterion_ted_oracle},
        {2, "teds-formula (1e-12)", criterion_teds_formula},
        {3, "grits-bracketing (>=1000 pairs, <=3x3)", criterion_grits_bracketing},
        {4, "metric-invariants (1000 triples)", criterion_metric_invariants},
        {5, "span-expansion-roundtrip (>=20 fixtures)", criterion_span_roundtrip},
        {6, "pipeline-determinism (50 tasks, sd/lift/eeft)", criterion_pipeline_determinism},
        {7, "repair-corpus (9 kept / 1 dropped)", criterion_repair_corpus},
        {8, "perturbation-contracts", criterion_perturbation_contracts},
        {9, "bootstrap-ci (coverage 95% +/- 2%)", criterion_bootstrap},
        {10, "split-reproduction (8967/1133/2596)", criterion_split_reproduction},
    };

    int failures = 0;
    for (const Criterion& criterion : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string failure;
        try {
            criterion.body();
        } catch (const std::exception& e) {
            failure = e.what();
        }
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
        if (failure.empty()) {
            std::printf("PASS  %2d  %s  (%lld ms)\n", criterion.number, criterion.name,
                        static_cast<long long>(ms));
        } else {
            ++failures;
            std::printf("FAIL  %2d  %s  (%lld ms): %s\n", criterion.number, criterion.name,
                        static_cast<long long>(ms), failure.c_str());
        }
        std::fflush(stdout);
    }
    if (failures > 0) std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures;
}
