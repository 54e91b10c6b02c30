// tabex: table explicitation workbench.
//
//   prepare           build task files (train/val/test) from raw inputs
//   run               run an extract/repair pipeline over a task file
//   score             attach metric vectors to a prediction file
//   report            aggregate scored files into a comparison table
//   compare           report plus improvement-vs-baseline statistics
//   perturb           emit broken-CSV or JSON variants of sampled tasks
//   make-repair-data  build the repair fine-tuning corpus

#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "config.hpp"
#include "tabex/errors.hpp"
#include "tabex/html.hpp"
#include "tabex/metrics.hpp"
#include "tabex/perturb.hpp"
#include "tabex/pipeline.hpp"
#include "tabex/report.hpp"
#include "tabex/rng.hpp"
#include "tabex/scitsr.hpp"
#include "tabex/task_io.hpp"
#include "tabex/validity.hpp"

namespace fs = std::filesystem;
using namespace tabex;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct CommonOptions {
    std::string config_path;
    cli::Config config;

    void load() {
        if (!config_path.empty()) config = cli::load_config(config_path);
    }
};

std::vector<std::size_t> parse_size_list(const std::string& csv) {
    std::vector<std::size_t> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(static_cast<std::size_t>(std::stoull(item)));
        } catch (...) {
            throw Error(ErrorCode::ConfigError, "bad size '" + item + "' in --sizes");
        }
    }
    return out;
}

std::vector<double> parse_ratio_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (...) {
            throw Error(ErrorCode::ConfigError, "bad ratio '" + item + "' in --ratios");
        }
    }
    return out;
}

ReportFormat parse_format(const std::string& name) {
    if (name == "table" || name == "table-text" || name == "text") {
        return ReportFormat::table_text;
    }
    if (name == "csv") return ReportFormat::csv;
    if (name == "json") return ReportFormat::json;
    throw Error(ErrorCode::ConfigError, "unknown format " + name);
}

std::ofstream open_output(const std::string& path, bool append = false) {
    std::ofstream out(path, append ? std::ios::app : std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
    return out;
}

// ─── prepare ─────────────────────────────────────────────────

struct PrepareOptions {
    std::vector<std::string> inputs;
    std::string out_dir;
    std::string sizes;
    std::string ratios = "0.7,0.1,0.2";
    std::uint64_t seed = 0;
    std::string dataset;
};

Task record_from_json(const nlohmann::json& j, const std::string& fallback_id,
                      SourceDataset default_dataset) {
    Task task;
    task.id = j.value("id", fallback_id);
    if (j.contains("cells")) {
        task.ground_truth_html = scitsr_to_html(parse_scitsr_json(j.dump()));
        task.source_dataset = SourceDataset::scitsr;
    } else if (j.contains("html")) {
        task.ground_truth_html = j["html"].get<std::string>();
        task.source_dataset = default_dataset;
    } else if (j.contains("ground_truth_html")) {
        task.ground_truth_html = j["ground_truth_html"].get<std::string>();
        task.source_dataset = default_dataset;
    } else {
        throw Error(ErrorCode::IoError, "record needs cells, html or ground_truth_html");
    }
    if (auto d = dataset_from_name(j.value("source_dataset", ""))) task.source_dataset = *d;
    task.raw_text = j.value("raw_text", "");
    return task;
}

int cmd_prepare(CommonOptions& common, const PrepareOptions& opts) {
    common.load();
    if (opts.inputs.empty()) {
        throw Error(ErrorCode::ConfigError, "prepare needs at least one input file");
    }
    SourceDataset default_dataset = SourceDataset::other;
    if (!opts.dataset.empty()) {
        auto d = dataset_from_name(opts.dataset);
        if (!d) throw Error(ErrorCode::ConfigError, "unknown dataset " + opts.dataset);
        default_dataset = *d;
    }

    std::vector<Task> tasks;
    std::size_t dropped = 0;
    for (const std::string& path : opts.inputs) {
        if (!fs::exists(path)) {
            throw Error(ErrorCode::ConfigError, "input not found: " + path);
        }
        const std::string stem = fs::path(path).stem().string();
        const std::string ext = fs::path(path).extension().string();
        auto add = [&](Task task) {
            try {
                const TableTree tree = parse_table(task.ground_truth_html);
                if (task.raw_text.empty()) task.raw_text = flatten_clipboard(tree);
                tasks.push_back(std::move(task));
            } catch (const Error&) {
                ++dropped;  // unusable ground truth
            }
        };
        if (ext == ".jsonl") {
            std::ifstream in(path);
            if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
            for_each_jsonl_line(in, [&](std::size_t line_no, const std::string& line) {
                nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
                if (j.is_discarded()) {
                    throw Error(ErrorCode::IoError,
                                path + ":" + std::to_string(line_no) + ": bad JSON");
                }
                add(record_from_json(j, stem + ":" + std::to_string(line_no),
                                     default_dataset));
            });
        } else if (ext == ".json") {
            std::ifstream in(path);
            std::ostringstream buffer;
            buffer << in.rdbuf();
            Task task;
            task.id = stem;
            task.ground_truth_html = scitsr_to_html(parse_scitsr_json(buffer.str()));
            task.source_dataset =
                opts.dataset.empty() ? SourceDataset::scitsr : default_dataset;
            add(std::move(task));
        } else {  // raw html
            std::ifstream in(path);
            std::ostringstream buffer;
            buffer << in.rdbuf();
            Task task;
            task.id = stem;
            task.ground_truth_html = buffer.str();
            task.source_dataset = default_dataset;
            add(std::move(task));
        }
    }

    {
        std::set<std::string> ids;
        for (const Task& task : tasks) {
            if (!ids.insert(task.id).second) {
                throw Error(ErrorCode::ConfigError, "duplicate task id " + task.id);
            }
        }
    }

    SplitSpec spec;
    if (!opts.sizes.empty()) {
        const auto sizes = parse_size_list(opts.sizes);
        if (sizes.size() != 3) {
            throw Error(ErrorCode::ConfigError, "--sizes needs train,val,test");
        }
        spec.sizes = {sizes[0], sizes[1], sizes[2]};
    } else {
        const auto ratios = parse_ratio_list(opts.ratios);
        if (ratios.size() != 3) {
            throw Error(ErrorCode::ConfigError, "--ratios needs three values");
        }
        spec.ratios = {ratios[0], ratios[1], ratios[2]};
    }

    SplitSummary summary;
    std::vector<Task> assigned = split_tasks(std::move(tasks), spec, opts.seed, &summary);

    fs::create_directories(opts.out_dir);
    std::array<std::ofstream, 3> outs = {
        open_output((fs::path(opts.out_dir) / "train.jsonl").string()),
        open_output((fs::path(opts.out_dir) / "val.jsonl").string()),
        open_output((fs::path(opts.out_dir) / "test.jsonl").string()),
    };
    for (const Task& task : assigned) {
        outs[static_cast<std::size_t>(task.split)] << task_to_json_line(task) << '\n';
    }

    std::cout << summary.to_table();
    if (summary.left_out > 0) {
        std::cout << "left out (beyond requested sizes): " << summary.left_out << '\n';
    }
    if (dropped > 0) std::cout << "dropped (unparseable ground truth): " << dropped << '\n';
    return kExitOk;
}

// ─── run ─────────────────────────────────────────────────────

struct RunCmdOptions {
    std::string tasks_path;
    std::string out_path;
    std::string mode = "extract-only";
    std::string extractor;
    std::string repairer;
    double threshold = -1.0;
    int concurrency = 0;
    int max_repair_rounds = 0;
};

int cmd_run(CommonOptions& common, const RunCmdOptions& opts) {
    common.load();
    const auto mode = mode_from_name(opts.mode);
    if (!mode) throw Error(ErrorCode::ConfigError, "unknown mode " + opts.mode);
    if (opts.extractor.empty()) {
        throw Error(ErrorCode::ConfigError, "--extractor is required");
    }
    const bool needs_repairer = *mode == Mode::sd || *mode == Mode::lift;
    if (needs_repairer && opts.repairer.empty()) {
        throw Error(ErrorCode::ConfigError,
                    opts.mode + " mode requires --repairer");
    }

    Backend extractor(common.config.require_backend(opts.extractor));
    std::optional<Backend> repairer;
    if (!opts.repairer.empty()) {
        repairer.emplace(common.config.require_backend(opts.repairer));
    }

    // resumable: skip ids already present in the output file
    std::set<std::string> done;
    if (fs::exists(opts.out_path)) {
        std::ifstream in(opts.out_path);
        for_each_jsonl_line(in, [&](std::size_t, const std::string& line) {
            done.insert(prediction_from_json_line(line).task_id);
        });
        if (!done.empty()) std::cerr << "resuming: " << done.size() << " tasks already done\n";
    }

    BatchOptions batch;
    batch.run.quality_threshold =
        opts.threshold >= 0 ? opts.threshold : common.config.threshold;
    batch.run.max_repair_rounds = opts.max_repair_rounds > 0 ? opts.max_repair_rounds
                                                             : common.config.max_repair_rounds;
    batch.concurrency = opts.concurrency > 0 ? opts.concurrency : common.config.concurrency;

    std::ofstream out = open_output(opts.out_path, /*append=*/true);
    std::size_t completed = 0;
    auto sink = [&](const Prediction& pred) {
        out << prediction_to_json_line(pred) << '\n';
        out.flush();
        ++completed;
        if (completed % 10 == 0) std::cerr << "\r" << completed << std::flush;
    };

    // tasks stream through in chunks so big corpora never sit in memory whole
    constexpr std::size_t kChunk = 256;
    std::ifstream tasks_in(opts.tasks_path);
    if (!tasks_in) throw Error(ErrorCode::IoError, "cannot open " + opts.tasks_path);
    std::vector<Task> chunk;
    auto flush_chunk = [&] {
        if (chunk.empty()) return;
        run_batch(chunk, *mode, extractor, repairer ? &*repairer : nullptr, batch, sink);
        chunk.clear();
    };
    std::set<std::string> seen;
    for_each_jsonl_line(tasks_in, [&](std::size_t line_no, const std::string& line) {
        Task task;
        try {
            task = task_from_json_line(line);
        } catch (const Error& e) {
            throw Error(ErrorCode::IoError,
                        opts.tasks_path + ":" + std::to_string(line_no) + ": " + e.what());
        }
        if (!seen.insert(task.id).second) {
            throw Error(ErrorCode::IoError, opts.tasks_path + ":" + std::to_string(line_no) +
                                                ": duplicate task id " + task.id);
        }
        if (done.count(task.id)) return;
        chunk.push_back(std::move(task));
        if (chunk.size() >= kChunk) flush_chunk();
    });
    flush_chunk();
    std::cerr << "\r" << completed << " tasks completed\n";
    return kExitOk;
}

// ─── score ───────────────────────────────────────────────────

struct ScoreCmdOptions {
    std::string predictions_path;
    std::string tasks_path;
    std::string out_path;
    std::string teds_norm = "sum";
};

int cmd_score(CommonOptions& common, const ScoreCmdOptions& opts) {
    common.load();
    TedsNorm norm;
    if (opts.teds_norm == "sum") norm = TedsNorm::size_sum;
    else if (opts.teds_norm == "max") norm = TedsNorm::size_max;
    else throw Error(ErrorCode::ConfigError, "--teds-norm must be sum or max");

    std::map<std::string, std::string> truth_by_id;
    for (const Task& task : read_tasks_file(opts.tasks_path)) {
        truth_by_id[task.id] = task.ground_truth_html;
    }

    std::ifstream in(opts.predictions_path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + opts.predictions_path);
    std::ofstream out = open_output(opts.out_path);

    std::size_t total = 0, valid = 0, malformed = 0;
    std::vector<std::string> orphans;
    for_each_jsonl_line(in, [&](std::size_t, const std::string& line) {
        Prediction pred = prediction_from_json_line(line);
        ++total;
        auto it = truth_by_id.find(pred.task_id);
        if (it == truth_by_id.end()) {
            orphans.push_back(pred.task_id);
        } else {
            pred.metrics = score(pred.final_output, it->second, norm);
            if (pred.metrics) ++valid;
            else ++malformed;
        }
        out << prediction_to_json_line(pred) << '\n';
    });

    std::cout << "scored " << total << " predictions: " << valid << " valid, " << malformed
              << " malformed\n";
    if (!orphans.empty()) {
        std::cerr << "warning: JoinMismatch: " << orphans.size()
                  << " predictions without a task:";
        for (const std::string& id : orphans) std::cerr << ' ' << id;
        std::cerr << '\n';
    }
    return kExitOk;
}

// ─── report / compare ────────────────────────────────────────

struct ReportCmdOptions {
    std::vector<std::string> scored_files;
    std::string baseline;  // compare mode only
    std::string format = "table";
    std::string out_path;
    std::size_t resamples = 1000;
    double level = 0.95;
    std::uint64_t seed = 0;
    bool penalize_invalid = false;
};

// Aggregation only needs ids, verdicts and metric vectors; the (possibly
// large) output strings are dropped while streaming the file.
std::vector<Prediction> read_predictions_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
    std::vector<Prediction> out;
    for_each_jsonl_line(in, [&](std::size_t, const std::string& line) {
        Prediction pred = prediction_from_json_line(line);
        pred.final_output.clear();
        pred.final_output.shrink_to_fit();
        pred.extractor_output.reset();
        out.push_back(std::move(pred));
    });
    return out;
}

int cmd_report(CommonOptions& common, const ReportCmdOptions& opts, bool compare) {
    common.load();
    AggregateOptions agg_options;
    agg_options.penalize_invalid = opts.penalize_invalid;
    agg_options.resamples = opts.resamples;
    agg_options.level = opts.level;
    agg_options.seed = opts.seed;

    std::vector<Prediction> baseline;
    if (compare) baseline = read_predictions_file(opts.baseline);

    std::vector<std::string> files = opts.scored_files;
    std::sort(files.begin(), files.end());

    std::vector<ReportRow> rows;
    if (compare) {
        ReportRow row;
        row.label = fs::path(opts.baseline).filename().string() + " (baseline)";
        row.aggregates = aggregate(baseline, agg_options);
        rows.push_back(std::move(row));
    }
    for (const std::string& path : files) {
        ReportRow row;
        row.label = fs::path(path).filename().string();
        std::vector<Prediction> preds = read_predictions_file(path);
        row.aggregates = aggregate(preds, agg_options);
        if (compare) {
            JoinReport join;
            row.improvements = improvement_vs_baseline(preds, baseline, &join);
            if (join.mismatched()) {
                std::cerr << "warning: JoinMismatch for " << path << ": "
                          << join.method_only.size() << " only in method, "
                          << join.baseline_only.size() << " only in baseline\n";
                for (const std::string& id : join.method_only) {
                    std::cerr << "  method-only: " << id << '\n';
                }
                for (const std::string& id : join.baseline_only) {
                    std::cerr << "  baseline-only: " << id << '\n';
                }
            }
        }
        rows.push_back(std::move(row));
    }

    const std::string rendered = render_report(rows, parse_format(opts.format));
    if (opts.out_path.empty()) {
        std::cout << rendered;
    } else {
        open_output(opts.out_path) << rendered;
    }
    return kExitOk;
}

// ─── perturb ─────────────────────────────────────────────────

struct PerturbCmdOptions {
    std::string tasks_path;
    std::string out_path;
    std::string kind = "csv";
    std::size_t n = 100;
    std::uint64_t seed = 0;
    double flip_probability = 0.3;
    double junk_probability = 0.5;
};

int cmd_perturb(CommonOptions& common, const PerturbCmdOptions& opts) {
    common.load();
    if (opts.kind != "csv" && opts.kind != "json") {
        throw Error(ErrorCode::ConfigError, "--kind must be csv or json");
    }
    const bool want_json = opts.kind == "json";
    std::vector<Task> tasks = read_tasks_file(opts.tasks_path);

    // filter to eligible tasks first so n is honored after exclusions
    struct Eligible {
        const Task* task;
        TableGrid grid;
    };
    std::vector<Eligible> pool;
    for (const Task& task : tasks) {
        TableGrid grid;
        try {
            grid = to_grid(parse_table(task.ground_truth_html));
        } catch (const Error&) {
            continue;
        }
        if (grid.has_spans() || grid.empty()) continue;
        if (want_json) {
            bool header_row = true;
            for (int c = 0; c < grid.n_cols; ++c) header_row &= grid.at(0, c).header;
            if (!header_row) continue;
        }
        pool.push_back({&task, std::move(grid)});
    }

    if (pool.size() < opts.n) {
        std::cerr << "warning: only " << pool.size() << " of " << tasks.size()
                  << " tasks are eligible for " << opts.kind << " (requested " << opts.n
                  << ")\n";
    }

    Rng rng(opts.seed);
    std::vector<std::size_t> picked = rng.sample_indices(pool.size(), opts.n);
    std::sort(picked.begin(), picked.end());  // keep corpus order in the output

    std::ofstream out = open_output(opts.out_path);
    for (std::size_t idx : picked) {
        const Eligible& e = pool[idx];
        Task task = *e.task;
        task.id += want_json ? "#json" : "#csv";
        if (want_json) {
            task.raw_text = make_json(e.grid);
        } else {
            PerturbConfig cfg;
            cfg.seed = mix_seed(opts.seed, e.task->id);
            cfg.separator_flip_probability = opts.flip_probability;
            cfg.junk_line_probability = opts.junk_probability;
            task.raw_text = make_noisy_csv(e.grid, cfg);
        }
        out << task_to_json_line(task) << '\n';
    }
    if (picked.empty()) {
        std::cerr << "warning: no eligible tasks; wrote an empty file\n";
    }
    std::cout << "wrote " << picked.size() << " " << opts.kind << " tasks to " << opts.out_path
              << '\n';
    return kExitOk;
}

// ─── make-repair-data ────────────────────────────────────────

struct RepairDataCmdOptions {
    std::string tasks_path;
    std::string out_path;
    std::string extractor;
    double threshold = -1.0;
};

int cmd_make_repair_data(CommonOptions& common, const RepairDataCmdOptions& opts) {
    common.load();
    if (opts.extractor.empty()) {
        throw Error(ErrorCode::ConfigError, "--extractor is required");
    }
    Backend extractor(common.config.require_backend(opts.extractor));
    const double threshold = opts.threshold >= 0 ? opts.threshold : common.config.threshold;

    std::vector<Task> tasks = read_tasks_file(opts.tasks_path);
    std::ofstream out = open_output(opts.out_path);
    RepairCorpusSummary summary = build_repair_corpus(
        tasks, extractor, threshold,
        [&](const std::string& line) { out << line << '\n'; });
    std::cout << "kept: " << summary.kept << "\ndropped: " << summary.dropped << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"table explicitation workbench: datasets, pipelines, metrics, reports"};
    app.require_subcommand(1);

    CommonOptions common;
    app.add_option("--config", common.config_path, "config file (backends, defaults)");

    PrepareOptions prepare_opts;
    CLI::App* prepare = app.add_subcommand("prepare", "build split task files from raw inputs");
    prepare->add_option("inputs", prepare_opts.inputs, "html/jsonl/scitsr-json inputs");
    prepare->add_option("--out", prepare_opts.out_dir, "output directory")->required();
    prepare->add_option("--sizes", prepare_opts.sizes, "train,val,test sizes");
    prepare->add_option("--ratios", prepare_opts.ratios, "train,val,test ratios");
    prepare->add_option("--seed", prepare_opts.seed, "shuffle seed");
    prepare->add_option("--dataset", prepare_opts.dataset, "dataset label for plain inputs");

    RunCmdOptions run_opts;
    CLI::App* run = app.add_subcommand("run", "run a pipeline over a task file");
    run->add_option("--tasks", run_opts.tasks_path, "task file (jsonl)")->required();
    run->add_option("-o,--out", run_opts.out_path, "prediction file (appended)")->required();
    run->add_option("--mode", run_opts.mode, "extract-only|sd|lift|eeft");
    run->add_option("--extractor", run_opts.extractor, "backend name for the first call");
    run->add_option("--repairer", run_opts.repairer, "backend name for the repair call");
    run->add_option("--threshold", run_opts.threshold, "quality threshold");
    run->add_option("--concurrency", run_opts.concurrency, "parallel tasks");
    run->add_option("--max-repair-rounds", run_opts.max_repair_rounds,
                    "re-repair while the check fails");

    ScoreCmdOptions score_opts;
    CLI::App* score_cmd = app.add_subcommand("score", "attach metrics to predictions");
    score_cmd->add_option("--predictions", score_opts.predictions_path)->required();
    score_cmd->add_option("--tasks", score_opts.tasks_path)->required();
    score_cmd->add_option("-o,--out", score_opts.out_path)->required();
    score_cmd->add_option("--teds-norm", score_opts.teds_norm,
                          "sum (default) or max normalization");

    ReportCmdOptions report_opts;
    CLI::App* report = app.add_subcommand("report", "aggregate scored prediction files");
    report->add_option("files", report_opts.scored_files, "scored prediction files")
        ->required();
    report->add_option("--format", report_opts.format, "table|csv|json");
    report->add_option("-o,--out", report_opts.out_path, "write report here (default stdout)");
    report->add_option("--resamples", report_opts.resamples, "bootstrap resamples");
    report->add_option("--level", report_opts.level, "confidence level");
    report->add_option("--seed", report_opts.seed, "bootstrap seed");
    report->add_flag("--penalize-invalid", report_opts.penalize_invalid,
                     "score invalid predictions as 0 instead of excluding them");

    ReportCmdOptions compare_opts;
    CLI::App* compare = app.add_subcommand("compare", "report with improvement vs baseline");
    compare->add_option("files", compare_opts.scored_files, "method prediction files")
        ->required();
    compare->add_option("--baseline", compare_opts.baseline, "baseline prediction file")
        ->required();
    compare->add_option("--format", compare_opts.format, "table|csv|json");
    compare->add_option("-o,--out", compare_opts.out_path);
    compare->add_option("--resamples", compare_opts.resamples);
    compare->add_option("--level", compare_opts.level);
    compare->add_option("--seed", compare_opts.seed);
    compare->add_flag("--penalize-invalid", compare_opts.penalize_invalid);

    PerturbCmdOptions perturb_opts;
    CLI::App* perturb = app.add_subcommand("perturb", "emit perturbed-format task files");
    perturb->add_option("--tasks", perturb_opts.tasks_path)->required();
    perturb->add_option("-o,--out", perturb_opts.out_path)->required();
    perturb->add_option("--kind", perturb_opts.kind, "csv|json");
    perturb->add_option("--n", perturb_opts.n, "sample size");
    perturb->add_option("--seed", perturb_opts.seed);
    perturb->add_option("--flip-probability", perturb_opts.flip_probability);
    perturb->add_option("--junk-probability", perturb_opts.junk_probability);

    RepairDataCmdOptions repair_opts;
    CLI::App* repair_data =
        app.add_subcommand("make-repair-data", "build the repair fine-tuning corpus");
    repair_data->add_option("--tasks", repair_opts.tasks_path)->required();
    repair_data->add_option("-o,--out", repair_opts.out_path)->required();
    repair_data->add_option("--extractor", repair_opts.extractor, "backend name");
    repair_data->add_option("--threshold", repair_opts.threshold, "keep threshold");

    // let --config appear after the subcommand too
    for (CLI::App* sub : app.get_subcommands(nullptr)) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (prepare->parsed()) return cmd_prepare(common, prepare_opts);
        if (run->parsed()) return cmd_run(common, run_opts);
        if (score_cmd->parsed()) return cmd_score(common, score_opts);
        if (report->parsed()) return cmd_report(common, report_opts, /*compare=*/false);
        if (compare->parsed()) return cmd_report(common, compare_opts, /*compare=*/true);
        if (perturb->parsed()) return cmd_perturb(common, perturb_opts);
        if (repair_data->parsed()) return cmd_make_repair_data(common, repair_opts);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return (e.code() == ErrorCode::ConfigError || e.code() == ErrorCode::MissingField)
                   ? kExitUsage
                   : kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitOk;
}
