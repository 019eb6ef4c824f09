// lscd: train time-indexed word representations over binned corpora, measure
// lexical semantic change, and build synthetic-change benchmarks.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "lscd/change.hpp"
#include "lscd/config.hpp"
#include "lscd/corpus.hpp"
#include "lscd/error.hpp"
#include "lscd/evaluate.hpp"
#include "lscd/io.hpp"
#include "lscd/pairgen.hpp"
#include "lscd/pipeline.hpp"
#include "lscd/ppmi.hpp"
#include "lscd/procrustes.hpp"
#include "lscd/rng.hpp"
#include "lscd/sgns.hpp"
#include "lscd/simulate.hpp"
#include "lscd/svg.hpp"
#include "lscd/wsc.hpp"

namespace fs = std::filesystem;
using namespace lscd;

namespace {

struct ExtractionMeta {
    std::string mode;
    int window = 5;
    std::string separator;
    std::vector<std::string> bins;
    bool filter_after_windowing = false;
};

void save_extraction_meta(const ExtractionMeta& meta, const fs::path& path) {
    std::string body;
    body += "mode\t" + meta.mode + "\n";
    body += "window\t" + std::to_string(meta.window) + "\n";
    body += "separator\t" + meta.separator + "\n";
    std::string bins;
    for (std::size_t i = 0; i < meta.bins.size(); ++i) {
        if (i) bins += ',';
        bins += meta.bins[i];
    }
    body += "bins\t" + bins + "\n";
    body += "filter_after_windowing\t" + std::string(meta.filter_after_windowing ? "1" : "0") +
            "\n";
    atomic_write(path, body);
}

ExtractionMeta load_extraction_meta(const fs::path& path) {
    ExtractionMeta meta;
    for_each_line(path, [&](std::size_t line_no, std::string_view line) {
        if (line.empty()) return;
        auto fields = split_char(line, '\t');
        if (fields.size() != 2) {
            throw DataError(path.string() + ":" + std::to_string(line_no) +
                            ": expected key<TAB>value");
        }
        if (fields[0] == "mode") {
            meta.mode = fields[1];
        } else if (fields[0] == "window") {
            meta.window = std::stoi(fields[1]);
        } else if (fields[0] == "separator") {
            meta.separator = fields[1];
        } else if (fields[0] == "bins") {
            meta.bins = split_char(fields[1], ',');
        } else if (fields[0] == "filter_after_windowing") {
            meta.filter_after_windowing = fields[1] == "1";
        } else {
            throw DataError(path.string() + ": unknown meta key: " + fields[0]);
        }
    });
    if (meta.mode.empty() || meta.bins.empty()) {
        throw DataError(path.string() + ": incomplete extraction meta");
    }
    return meta;
}

std::vector<std::string> read_word_list(const fs::path& path) {
    std::vector<std::string> words;
    for_each_line(path, [&](std::size_t, std::string_view line) {
        auto fields = split_ws(line);
        if (!fields.empty() && fields[0][0] != '#') words.push_back(fields[0]);
    });
    return words;
}

bool looks_like_sparse_matrix(const fs::path& path) {
    std::ifstream in(path);
    std::string first;
    std::getline(in, first);
    return first.rfind("#rows", 0) == 0;
}

// Minimal CSV reader for the plot subcommand.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == name) return static_cast<int>(i);
        }
        throw UsageError("column not found in CSV: " + name);
    }
};

CsvTable read_csv(const fs::path& path) {
    CsvTable table;
    for_each_line(path, [&](std::size_t, std::string_view line) {
        if (line.empty()) return;
        auto fields = split_char(line, ',');
        if (table.header.empty()) {
            table.header = fields;
        } else {
            table.rows.push_back(fields);
        }
    });
    if (table.header.empty()) throw DataError(path.string() + ": empty CSV");
    return table;
}

ExperimentConfig experiment_config(const std::string& config_path, const std::string& out_override,
                                   const std::string& seed_override, int threads_override) {
    if (config_path.empty()) throw UsageError("--config is required");
    ExperimentConfig cfg = ExperimentConfig::parse(Config::load(config_path));
    if (!out_override.empty()) cfg.out_dir = out_override;
    if (!seed_override.empty()) {
        cfg.seeds.clear();
        for (const auto& s : split_char(seed_override, ',')) cfg.seeds.push_back(std::stoull(s));
    }
    if (threads_override > 0) cfg.threads = threads_override;
    return cfg;
}

int run(int argc, char** argv) {
    CLI::App app{"lscd: lexical semantic change detection toolkit"};
    app.require_subcommand(1);

    // --- ingest ---------------------------------------------------------
    struct {
        std::string dir, bins, out;
        int min_count = 100;
        bool keep_case = false, no_hyphens = false;
    } ingest_args;
    auto* cmd_ingest = app.add_subcommand("ingest", "read a raw corpus directory into bins");
    cmd_ingest->add_option("--dir", ingest_args.dir, "corpus root: <dir>/<bin>/*.txt")->required();
    cmd_ingest->add_option("--bins", ingest_args.bins, "comma-separated bin labels in order")
        ->required();
    cmd_ingest->add_option("--out", ingest_args.out, "output corpus directory")->required();
    cmd_ingest->add_option("--min-count", ingest_args.min_count, "vocabulary frequency threshold");
    cmd_ingest->add_flag("--keep-case", ingest_args.keep_case, "skip lowercasing");
    cmd_ingest->add_flag("--no-hyphens", ingest_args.no_hyphens,
                         "reject hyphenated tokens in the vocabulary filter");

    // --- shuffle ---------------------------------------------------------
    struct {
        std::string in, out;
        std::uint64_t seed = 1;
    } shuffle_args;
    auto* cmd_shuffle = app.add_subcommand("shuffle", "shuffled control copy of a corpus");
    cmd_shuffle->add_option("--in", shuffle_args.in)->required();
    cmd_shuffle->add_option("--seed", shuffle_args.seed)->required();
    cmd_shuffle->add_option("--out", shuffle_args.out)->required();

    // --- bins ------------------------------------------------------------
    struct {
        std::string in, out;
        int n = 7;
        std::uint64_t seed = 1;
    } bins_args;
    auto* cmd_bins = app.add_subcommand("bins", "randomly partition a corpus into n bins");
    cmd_bins->add_option("--in", bins_args.in)->required();
    cmd_bins->add_option("--n", bins_args.n)->required();
    cmd_bins->add_option("--seed", bins_args.seed)->required();
    cmd_bins->add_option("--out", bins_args.out)->required();

    // --- inject ----------------------------------------------------------
    struct {
        std::string in, pairs, out, schedule, controls = "file";
        int min_count = 100;
        std::uint64_t seed = 1;
    } inject_args;
    auto* cmd_inject = app.add_subcommand("inject", "inject synthetic change into a binned corpus");
    cmd_inject->add_option("--in", inject_args.in)->required();
    cmd_inject->add_option("--pairs", inject_args.pairs, "TSV recipient<TAB>donor<TAB>relation")
        ->required();
    cmd_inject->add_option("--seed", inject_args.seed)->required();
    cmd_inject->add_option("--out", inject_args.out)->required();
    cmd_inject->add_option("--schedule", inject_args.schedule, "per-bin ratios, comma-separated");
    cmd_inject->add_option("--controls", inject_args.controls, "file | frequency_matched");
    cmd_inject->add_option("--min-count", inject_args.min_count);

    // --- pairs -----------------------------------------------------------
    struct {
        std::string in, mode = "AL", out, targets;
        bool all_valid = false, filter_after = false;
        int window = 5, min_count = 100;
    } pairs_args;
    auto* cmd_pairs = app.add_subcommand("pairs", "extract word-context pair streams");
    cmd_pairs->add_option("--in", pairs_args.in)->required();
    cmd_pairs->add_option("--mode", pairs_args.mode, "AL or TR");
    cmd_pairs->add_option("--out", pairs_args.out)->required();
    cmd_pairs->add_option("--targets", pairs_args.targets, "file with one target word per line");
    cmd_pairs->add_flag("--all-valid", pairs_args.all_valid, "target every valid token");
    cmd_pairs->add_option("--window", pairs_args.window);
    cmd_pairs->add_option("--min-count", pairs_args.min_count);
    cmd_pairs->add_flag("--filter-after-windowing", pairs_args.filter_after,
                        "invalid tokens consume window slots");

    // --- train-sgns ------------------------------------------------------
    struct {
        std::string pairs, out;
        int dim = 300, negatives = 5, epochs = 1, threads = 1;
        double alpha = 0.75, lr = 0.025, lr_floor = 1e-4;
        std::uint64_t seed = 1;
    } sgns_args;
    auto* cmd_sgns = app.add_subcommand("train-sgns", "train embeddings from a pair stream");
    cmd_sgns->add_option("--pairs", sgns_args.pairs)->required();
    cmd_sgns->add_option("--out", sgns_args.out)->required();
    cmd_sgns->add_option("--seed", sgns_args.seed)->required();
    cmd_sgns->add_option("--dim", sgns_args.dim);
    cmd_sgns->add_option("--negatives", sgns_args.negatives);
    cmd_sgns->add_option("--cds-alpha", sgns_args.alpha);
    cmd_sgns->add_option("--epochs", sgns_args.epochs);
    cmd_sgns->add_option("--lr", sgns_args.lr);
    cmd_sgns->add_option("--lr-floor", sgns_args.lr_floor);
    cmd_sgns->add_option("--threads", sgns_args.threads, "1 = deterministic mode");

    // --- train-ppmi ------------------------------------------------------
    struct {
        std::string pairs, out;
        double alpha = 0.75, k = 5.0;
    } ppmi_args;
    auto* cmd_ppmi = app.add_subcommand("train-ppmi", "weighted co-occurrence matrix from pairs");
    cmd_ppmi->add_option("--pairs", ppmi_args.pairs)->required();
    cmd_ppmi->add_option("--out", ppmi_args.out)->required();
    cmd_ppmi->add_option("--cds-alpha", ppmi_args.alpha);
    cmd_ppmi->add_option("--shift-k", ppmi_args.k);

    // --- align -----------------------------------------------------------
    struct {
        std::string a, b, out;
        bool uncentered = false;
    } align_args;
    auto* cmd_align = app.add_subcommand("align", "orthogonal mapping of space B onto space A");
    cmd_align->add_option("--a", align_args.a)->required();
    cmd_align->add_option("--b", align_args.b)->required();
    cmd_align->add_option("--out", align_args.out)->required();
    cmd_align->add_flag("--uncentered-distances", align_args.uncentered);

    // --- measure ---------------------------------------------------------
    struct {
        std::string model, method, space, meta, targets, manifest, out;
        std::vector<std::string> spaces;
        std::string mode = "consecutive";
        bool uncentered = false;
    } measure_args;
    auto* cmd_measure = app.add_subcommand("measure", "per-word change series");
    cmd_measure->add_option("--model", measure_args.model, "sgns or ppmi")->required();
    cmd_measure->add_option("--method", measure_args.method, "tr or al")->required();
    cmd_measure->add_option("--space", measure_args.space, "TR space file");
    cmd_measure->add_option("--spaces", measure_args.spaces,
                            "AL per-bin space files in bin order");
    cmd_measure->add_option("--meta", measure_args.meta, "extraction.meta from `pairs` (TR)");
    cmd_measure->add_option("--targets", measure_args.targets, "file with target words")
        ->required();
    cmd_measure->add_option("--manifest", measure_args.manifest, "benchmark manifest for classes");
    cmd_measure->add_option("--mode", measure_args.mode, "consecutive | relative_to_first");
    cmd_measure->add_option("--out", measure_args.out)->required();
    cmd_measure->add_flag("--uncentered-distances", measure_args.uncentered);

    // --- neighbors -------------------------------------------------------
    struct {
        std::string space, query, out;
        int n = 10;
    } nn_args;
    auto* cmd_nn = app.add_subcommand("neighbors", "nearest neighbors of a token");
    cmd_nn->add_option("--space", nn_args.space)->required();
    cmd_nn->add_option("--query", nn_args.query)->required();
    cmd_nn->add_option("--n", nn_args.n);
    cmd_nn->add_option("--out", nn_args.out)->required();

    // --- evaluate --------------------------------------------------------
    struct {
        std::string report, manifest, out;
    } eval_args;
    auto* cmd_eval = app.add_subcommand("evaluate", "peak classification report from a series CSV");
    cmd_eval->add_option("--report", eval_args.report, "change report CSV")->required();
    cmd_eval->add_option("--manifest", eval_args.manifest, "benchmark manifest CSV")->required();
    cmd_eval->add_option("--out", eval_args.out)->required();

    // --- plot ------------------------------------------------------------
    struct {
        std::string csv, kind = "line", x, y, group, out, title, xlabel, ylabel;
    } plot_args;
    auto* cmd_plot = app.add_subcommand("plot", "render an emitted CSV as an SVG chart");
    cmd_plot->add_option("--csv", plot_args.csv)->required();
    cmd_plot->add_option("--kind", plot_args.kind, "line | hist");
    cmd_plot->add_option("--x", plot_args.x, "x column")->required();
    cmd_plot->add_option("--y", plot_args.y, "y column")->required();
    cmd_plot->add_option("--group", plot_args.group, "series column");
    cmd_plot->add_option("--out", plot_args.out)->required();
    cmd_plot->add_option("--title", plot_args.title);
    cmd_plot->add_option("--x-label", plot_args.xlabel);
    cmd_plot->add_option("--y-label", plot_args.ylabel);

    // --- experiments -----------------------------------------------------
    struct {
        std::string config, out, seeds;
        int threads = 0;
    } exp_args;
    auto* cmd_exp1 = app.add_subcommand("exp1", "genuine-vs-shuffled noise comparison");
    auto* cmd_exp2 = app.add_subcommand("exp2", "synthetic-change detection benchmark");
    auto* cmd_exp3 = app.add_subcommand("exp3", "manually labeled testset evaluation");
    for (auto* cmd : {cmd_exp1, cmd_exp2, cmd_exp3}) {
        cmd->add_option("--config", exp_args.config, "experiment config file")->required();
        cmd->add_option("--out", exp_args.out, "override [run] out");
        cmd->add_option("--seed", exp_args.seeds, "override [run] seeds (comma-separated)");
        cmd->add_option("--threads", exp_args.threads, "override [run] threads");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;  // usage error
    }

    if (cmd_ingest->parsed()) {
        PreprocessConfig pp;
        pp.min_count = ingest_args.min_count;
        pp.lowercase = !ingest_args.keep_case;
        pp.allow_hyphens = !ingest_args.no_hyphens;
        Corpus corpus = ingest(ingest_args.dir, split_char(ingest_args.bins, ','), pp);
        save_corpus(corpus, ingest_args.out);
        save_vocab(build_vocab(corpus, pp), fs::path(ingest_args.out) / "vocab.tsv");
        std::cout << "ingested " << corpus.sentences.size() << " sentences in "
                  << corpus.bins.size() << " bins\n";
        return 0;
    }
    if (cmd_shuffle->parsed()) {
        Corpus corpus = load_corpus(shuffle_args.in);
        save_corpus(shuffle_control(corpus, shuffle_args.seed), shuffle_args.out);
        return 0;
    }
    if (cmd_bins->parsed()) {
        Corpus corpus = load_corpus(bins_args.in);
        save_corpus(assign_random_bins(corpus, bins_args.n, bins_args.seed), bins_args.out);
        return 0;
    }
    if (cmd_inject->parsed()) {
        Corpus corpus = load_corpus(inject_args.in);
        auto pairs = load_injection_pairs(inject_args.pairs);
        InjectionSchedule schedule;
        if (!inject_args.schedule.empty()) schedule = schedule_from_string(inject_args.schedule);
        PreprocessConfig pp;
        pp.min_count = inject_args.min_count;
        SyntheticBuild build =
            inject_pairs_into(corpus, pairs, schedule,
                              inject_args.controls == "frequency_matched", pp, inject_args.seed);
        save_corpus(build.corpus, inject_args.out);
        write_benchmark_manifest(build.pairs, schedule,
                                 fs::path(inject_args.out) / "benchmark_manifest.csv");
        std::string warn;
        for (const auto& w : build.warnings) warn += w + "\n";
        atomic_write(fs::path(inject_args.out) / "warnings.txt", warn);
        if (!build.warnings.empty()) {
            std::cout << build.warnings.size() << " warnings (see warnings.txt)\n";
        }
        return 0;
    }
    if (cmd_pairs->parsed()) {
        Corpus corpus = load_corpus(pairs_args.in);
        PreprocessConfig pp;
        pp.min_count = pairs_args.min_count;
        Vocabulary vocab = build_vocab(corpus, pp);
        TargetSet targets;
        if (pairs_args.all_valid) {
            for (const auto& e : vocab.entries()) {
                if (e.valid) targets.insert(e.token);
            }
        } else if (!pairs_args.targets.empty()) {
            auto listed = read_word_list(pairs_args.targets);
            targets.insert(listed.begin(), listed.end());
        } else if (pair_mode_from_string(pairs_args.mode) == PairMode::TR) {
            throw UsageError("TR extraction needs --targets or --all-valid");
        }
        ExtractionConfig ec;
        ec.window = pairs_args.window;
        ec.mode = pair_mode_from_string(pairs_args.mode);
        ec.filter_after_windowing = pairs_args.filter_after;
        auto streams = extract_pairs(corpus, vocab, targets, ec);
        fs::create_directories(pairs_args.out);
        for (const auto& s : streams) {
            save_pair_stream(s, fs::path(pairs_args.out) / ("pairs_" + s.scope + ".tsv"));
        }
        ExtractionMeta meta;
        meta.mode = to_string(ec.mode);
        meta.window = ec.window;
        std::vector<std::string> bin_labels;
        for (const auto& b : corpus.bins) bin_labels.push_back(b.label);
        meta.bins = bin_labels;
        meta.separator = compute_tag_separator(vocab, targets, bin_labels);
        meta.filter_after_windowing = ec.filter_after_windowing;
        save_extraction_meta(meta, fs::path(pairs_args.out) / "extraction.meta");
        save_vocab(vocab, fs::path(pairs_args.out) / "vocab.tsv");
        return 0;
    }
    if (cmd_sgns->parsed()) {
        PairStream stream = load_pair_stream(sgns_args.pairs, "all");
        SgnsConfig cfg;
        cfg.dim = sgns_args.dim;
        cfg.negatives_k = sgns_args.negatives;
        cfg.cds_alpha = sgns_args.alpha;
        cfg.epochs = sgns_args.epochs;
        cfg.lr_initial = sgns_args.lr;
        cfg.lr_floor = sgns_args.lr_floor;
        cfg.seed = sgns_args.seed;
        cfg.threads = sgns_args.threads;
        save_embeddings(train_sgns(stream, cfg).words, sgns_args.out);
        return 0;
    }
    if (cmd_ppmi->parsed()) {
        PairStream stream = load_pair_stream(ppmi_args.pairs, "all");
        PpmiConfig cfg;
        cfg.cds_alpha = ppmi_args.alpha;
        cfg.shift_k = ppmi_args.k;
        save_sparse_matrix(ppmi_weight(count_matrix(stream), cfg), ppmi_args.out);
        return 0;
    }
    if (cmd_align->parsed()) {
        DenseSpace a = load_embeddings(align_args.a);
        DenseSpace b = load_embeddings(align_args.b);
        ProcrustesConfig cfg;
        cfg.center_distances = !align_args.uncentered;
        AlignmentResult result = align_spaces(a, b, cfg);
        fs::create_directories(align_args.out);
        save_mapping(result, fs::path(align_args.out) / "mapping.txt");
        save_shared_vocab(result, fs::path(align_args.out) / "shared_vocab.txt");
        save_embeddings(result.a_prepared, fs::path(align_args.out) / "a_prepared.txt");
        save_embeddings(result.b_mapped, fs::path(align_args.out) / "b_mapped.txt");
        return 0;
    }
    if (cmd_measure->parsed()) {
        auto mode = comparison_mode_from_string(measure_args.mode);
        auto words = read_word_list(measure_args.targets);
        std::sort(words.begin(), words.end());
        std::map<std::string, std::string> gold;
        if (!measure_args.manifest.empty()) {
            for (const auto& e : load_benchmark_manifest(measure_args.manifest)) {
                gold[e.word] = e.gold_class;
            }
        }
        std::vector<ChangeSeries> series;
        const bool is_sgns = measure_args.model == "sgns";
        if (measure_args.model != "sgns" && measure_args.model != "ppmi") {
            throw UsageError("--model must be sgns or ppmi");
        }
        if (measure_args.method == "tr") {
            if (measure_args.space.empty() || measure_args.meta.empty()) {
                throw UsageError("TR measurement needs --space and --meta");
            }
            ExtractionMeta meta = load_extraction_meta(measure_args.meta);
            if (is_sgns) {
                DenseSpace space = load_embeddings(measure_args.space);
                for (const auto& w : words) {
                    series.push_back(
                        tr_dense_series(space, w, meta.bins, meta.separator, mode));
                }
            } else {
                SparseMatrix matrix = load_sparse_matrix(measure_args.space);
                for (const auto& w : words) {
                    series.push_back(
                        tr_sparse_series(matrix, w, meta.bins, meta.separator, mode));
                }
            }
        } else if (measure_args.method == "al") {
            if (measure_args.spaces.size() < 2) {
                throw UsageError("AL measurement needs --spaces with two or more files");
            }
            if (is_sgns) {
                std::vector<DenseSpace> spaces;
                for (const auto& f : measure_args.spaces) spaces.push_back(load_embeddings(f));
                ProcrustesConfig pc;
                pc.center_distances = !measure_args.uncentered;
                series = al_dense_series(spaces, words, mode, pc);
            } else {
                std::vector<SparseMatrix> matrices;
                for (const auto& f : measure_args.spaces) {
                    matrices.push_back(load_sparse_matrix(f));
                }
                series = al_sparse_series(matrices, words, mode);
            }
        } else {
            throw UsageError("--method must be tr or al");
        }
        save_change_report(series, gold, measure_args.out);
        std::size_t incomplete = 0;
        for (const auto& s : series) {
            if (!s.complete()) ++incomplete;
        }
        if (incomplete > 0) {
            std::cout << "warning: " << incomplete << " of " << series.size()
                      << " words have incomplete series\n";
        }
        return 0;
    }
    if (cmd_nn->parsed()) {
        std::vector<NeighborList> lists;
        if (looks_like_sparse_matrix(nn_args.space)) {
            lists.push_back(nearest_neighbors(load_sparse_matrix(nn_args.space), nn_args.query,
                                              static_cast<std::size_t>(nn_args.n)));
        } else {
            lists.push_back(nearest_neighbors(load_embeddings(nn_args.space), nn_args.query,
                                              static_cast<std::size_t>(nn_args.n)));
        }
        save_neighbor_report(lists, nn_args.out);
        return 0;
    }
    if (cmd_eval->parsed()) {
        auto rows = load_change_report(eval_args.report);
        std::map<std::string, std::string> gold;
        for (const auto& e : load_benchmark_manifest(eval_args.manifest)) {
            gold[e.word] = e.gold_class;
        }
        std::vector<LabeledPrediction> predictions;
        std::size_t skipped = 0;
        for (const auto& row : rows) {
            auto git = gold.find(row.series.word);
            if (git == gold.end()) continue;
            if (!row.series.complete()) {
                ++skipped;
                continue;
            }
            int peak = peak_position(row.series);
            predictions.push_back(LabeledPrediction{
                row.series.word, git->second,
                classify_peak(peak, static_cast<int>(row.series.values.size()))});
        }
        ClassificationReport report = score(predictions);
        std::string csv = "measure,value\n";
        csv += "stable," + format_sig(report.stable_accuracy, 12) + "\n";
        csv += "unrelated," + format_sig(report.unrelated_accuracy, 12) + "\n";
        csv += "related," + format_sig(report.related_accuracy, 12) + "\n";
        csv += "mean_accuracy_word_weighted," +
               format_sig(report.mean_accuracy_word_weighted, 12) + "\n";
        csv += "mean_accuracy_class_unweighted," +
               format_sig(report.mean_accuracy_class_unweighted, 12) + "\n";
        csv += "f1_change," + format_sig(report.f1_change, 12) + "\n";
        csv += "skipped_incomplete," + std::to_string(skipped) + "\n";
        atomic_write(eval_args.out, csv);
        return 0;
    }
    if (cmd_plot->parsed()) {
        CsvTable table = read_csv(plot_args.csv);
        int xc = table.column(plot_args.x);
        int yc = table.column(plot_args.y);
        int gc = plot_args.group.empty() ? -1 : table.column(plot_args.group);
        std::map<std::string, PlotSeries> grouped;
        for (const auto& row : table.rows) {
            std::string label = gc < 0 ? plot_args.y : row[gc];
            auto& series = grouped[label];
            series.label = label;
            series.points.emplace_back(std::stod(row[xc]), std::stod(row[yc]));
        }
        std::vector<PlotSeries> series;
        for (auto& [label, s] : grouped) series.push_back(std::move(s));
        PlotOptions opts;
        opts.title = plot_args.title;
        opts.x_label = plot_args.xlabel.empty() ? plot_args.x : plot_args.xlabel;
        opts.y_label = plot_args.ylabel.empty() ? plot_args.y : plot_args.ylabel;
        std::string svg;
        if (plot_args.kind == "line") {
            svg = render_line_svg(series, opts);
        } else if (plot_args.kind == "hist") {
            svg = render_bar_svg(series, opts);
        } else {
            throw UsageError("--kind must be line or hist");
        }
        atomic_write(plot_args.out, svg);
        return 0;
    }
    if (cmd_exp1->parsed() || cmd_exp2->parsed() || cmd_exp3->parsed()) {
        ExperimentConfig cfg = experiment_config(exp_args.config, exp_args.out, exp_args.seeds,
                                                 exp_args.threads);
        if (cmd_exp1->parsed()) {
            run_exp1(cfg);
        } else if (cmd_exp2->parsed()) {
            run_exp2(cfg);
        } else {
            run_exp3(cfg);
        }
        std::cout << "wrote " << cfg.out_dir.string() << "\n";
        return 0;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
