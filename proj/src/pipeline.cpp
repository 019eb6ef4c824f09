#include "lscd/pipeline.hpp"

#include <algorithm>
#include <set>

#include "lscd/error.hpp"
#include "lscd/io.hpp"
#include "lscd/rng.hpp"
#include "lscd/wsc.hpp"

namespace lscd {

namespace fs = std::filesystem;

Corpus load_corpus_flexible(const fs::path& dir, const std::vector<std::string>& bin_labels,
                            const PreprocessConfig& preprocess) {
    if (fs::exists(dir / "manifest.tsv")) return load_corpus(dir);
    if (bin_labels.empty()) {
        throw UsageError("corpus directory " + dir.string() +
                         " has no manifest.tsv; [corpus] bins must list the bin labels");
    }
    return ingest(dir, bin_labels, preprocess);
}

ModelRunner::ModelRunner(const Corpus& corpus, const Vocabulary& vocab, TargetSet targets,
                         const ExtractionConfig& extraction, const SgnsConfig& sgns,
                         const PpmiConfig& ppmi, std::uint64_t seed, int threads)
    : corpus_(corpus),
      vocab_(vocab),
      targets_(std::move(targets)),
      extraction_(extraction),
      sgns_(sgns),
      ppmi_(ppmi),
      seed_(seed),
      threads_(threads) {
    for (const auto& b : corpus.bins) bin_labels_.push_back(b.label);
    separator_ = compute_tag_separator(vocab_, targets_, bin_labels_);
}

const std::vector<PairStream>& ModelRunner::streams(PairMode mode) {
    auto& slot = mode == PairMode::TR ? tr_streams_ : al_streams_;
    if (!slot) {
        ExtractionConfig cfg = extraction_;
        cfg.mode = mode;
        slot = extract_pairs(corpus_, vocab_, targets_, cfg);
    }
    return *slot;
}

ModelSpaces ModelRunner::run(ModelKind kind) {
    ModelSpaces spaces;
    spaces.kind = kind;
    spaces.bin_labels = bin_labels_;
    spaces.separator = separator_;
    const auto& pair_streams = streams(model_is_tr(kind) ? PairMode::TR : PairMode::AL);
    for (const auto& stream : pair_streams) {
        if (model_is_sgns(kind)) {
            SgnsConfig cfg = sgns_;
            cfg.threads = threads_;
            cfg.seed = derive_seed(seed_, "train:" + to_string(kind) + ":" + stream.scope);
            spaces.dense.push_back(train_sgns(stream, cfg).words);
        } else {
            spaces.sparse.push_back(ppmi_weight(count_matrix(stream), ppmi_));
        }
    }
    return spaces;
}

std::vector<ChangeSeries> model_change_series(const ModelSpaces& spaces,
                                              const std::vector<std::string>& words,
                                              ComparisonMode mode) {
    switch (spaces.kind) {
        case ModelKind::sgns_tr: {
            std::vector<ChangeSeries> out;
            out.reserve(words.size());
            for (const auto& w : words) {
                out.push_back(
                    tr_dense_series(spaces.dense[0], w, spaces.bin_labels, spaces.separator, mode));
            }
            return out;
        }
        case ModelKind::ppmi_tr: {
            std::vector<ChangeSeries> out;
            out.reserve(words.size());
            for (const auto& w : words) {
                out.push_back(tr_sparse_series(spaces.sparse[0], w, spaces.bin_labels,
                                               spaces.separator, mode));
            }
            return out;
        }
        case ModelKind::sgns_al: return al_dense_series(spaces.dense, words, mode);
        case ModelKind::ppmi_al: return al_sparse_series(spaces.sparse, words, mode);
    }
    throw DataError("model_change_series: unknown model kind");
}

void save_change_report(const std::vector<ChangeSeries>& series,
                        const std::map<std::string, std::string>& gold_classes,
                        const fs::path& path) {
    std::size_t len = 0;
    for (const auto& s : series) len = std::max(len, s.values.size());
    std::string body = "word,class";
    for (std::size_t i = 1; i <= len; ++i) body += ",v" + std::to_string(i);
    body += ",peak,complete\n";
    for (const auto& s : series) {
        auto git = gold_classes.find(s.word);
        body += s.word;
        body += ',';
        body += git == gold_classes.end() ? "unknown" : git->second;
        for (std::size_t i = 0; i < len; ++i) {
            body += ',';
            if (i < s.values.size() && s.defined[i]) body += format_sig(s.values[i], 12);
        }
        body += ',';
        if (s.complete()) body += std::to_string(peak_position(s));
        body += ',';
        body += s.complete() ? '1' : '0';
        body += '\n';
    }
    atomic_write(path, body);
}

std::vector<ChangeReportRow> load_change_report(const fs::path& path) {
    std::vector<ChangeReportRow> rows;
    std::size_t n_value_cols = 0;
    bool header_seen = false;
    for_each_line(path, [&](std::size_t line_no, std::string_view line) {
        if (line.empty()) return;
        auto fields = split_char(line, ',');
        if (!header_seen) {
            header_seen = true;
            if (fields.size() < 4 || fields[0] != "word") {
                throw DataError(path.string() + ": malformed change report header");
            }
            n_value_cols = fields.size() - 4;
            return;
        }
        if (fields.size() != n_value_cols + 4) {
            throw DataError(path.string() + ":" + std::to_string(line_no) +
                            ": wrong column count");
        }
        ChangeReportRow row;
        row.series.word = fields[0];
        row.gold_class = fields[1];
        for (std::size_t i = 0; i < n_value_cols; ++i) {
            const std::string& v = fields[2 + i];
            if (v.empty()) {
                row.series.values.push_back(0.0);
                row.series.defined.push_back(false);
            } else {
                row.series.values.push_back(std::stod(v));
                row.series.defined.push_back(true);
            }
        }
        rows.push_back(std::move(row));
    });
    if (!header_seen) throw DataError(path.string() + ": empty change report");
    return rows;
}

void save_neighbor_report(const std::vector<NeighborList>& lists, const fs::path& path) {
    std::string body = "query,rank,neighbor,similarity\n";
    for (const auto& list : lists) {
        for (std::size_t r = 0; r < list.neighbors.size(); ++r) {
            body += list.query + "," + std::to_string(r + 1) + "," + list.neighbors[r].first +
                    "," + format_sig(list.neighbors[r].second, 12) + "\n";
        }
    }
    atomic_write(path, body);
}

namespace {

std::vector<std::string> all_valid_tokens(const Vocabulary& vocab) {
    std::vector<std::string> words;
    for (const auto& e : vocab.entries()) {
        if (e.valid) words.push_back(e.token);
    }
    std::sort(words.begin(), words.end());
    return words;
}

// Words whose series are complete in every listed series set.
std::set<std::string> complete_words(const std::vector<const std::vector<ChangeSeries>*>& sets) {
    std::set<std::string> out;
    bool first = true;
    for (const auto* set : sets) {
        std::set<std::string> here;
        for (const auto& s : *set) {
            if (s.complete()) here.insert(s.word);
        }
        if (first) {
            out = std::move(here);
            first = false;
        } else {
            std::set<std::string> merged;
            std::set_intersection(out.begin(), out.end(), here.begin(), here.end(),
                                  std::inserter(merged, merged.begin()));
            out = std::move(merged);
        }
    }
    return out;
}

std::vector<ChangeSeries> filter_series(const std::vector<ChangeSeries>& series,
                                        const std::set<std::string>& keep) {
    std::vector<ChangeSeries> out;
    for (const auto& s : series) {
        if (keep.count(s.word)) out.push_back(s);
    }
    return out;
}

std::string flag_significance(double p) { return p < 0.01 ? "yes" : "no"; }

}  // namespace

void run_exp1(const ExperimentConfig& cfg) {
    cfg.validate_exp1();
    const std::uint64_t seed = cfg.seeds.front();
    Corpus genuine = load_corpus_flexible(cfg.corpus_dir, cfg.bin_labels, cfg.preprocess);
    Vocabulary vocab = build_vocab(genuine, cfg.preprocess);
    Corpus shuffled = shuffle_control(genuine, derive_seed(seed, "exp1:shuffle"));

    std::vector<std::string> words = all_valid_tokens(vocab);
    TargetSet targets(words.begin(), words.end());

    ModelRunner genuine_runner(genuine, vocab, targets, cfg.extraction, cfg.sgns, cfg.ppmi,
                               derive_seed(seed, "exp1:genuine"), cfg.threads);
    ModelRunner shuffled_runner(shuffled, vocab, targets, cfg.extraction, cfg.sgns, cfg.ppmi,
                                derive_seed(seed, "exp1:shuffled"), cfg.threads);

    std::string true_change_csv = "model,step,acd_genuine,acd_shuffled,true_change\n";
    std::string welch_csv = "model,scope,t,df,p,significant_p01\n";
    std::string fig3_hist_csv = "model,interval,bin_low,bin_high,count\n";
    std::string fig3_means_csv = "model,interval,mean_distance,n_words\n";
    std::string summary = "experiment = exp1\n";
    std::map<ModelKind, double> collapsed;

    for (ModelKind kind : cfg.models) {
        ModelSpaces g_spaces = genuine_runner.run(kind);
        ModelSpaces s_spaces = shuffled_runner.run(kind);
        auto g_series = model_change_series(g_spaces, words, ComparisonMode::consecutive);
        auto s_series = model_change_series(s_spaces, words, ComparisonMode::consecutive);

        std::set<std::string> shared = complete_words({&g_series, &s_series});
        if (shared.empty()) {
            throw DataError("exp1: no word has a complete series in both conditions for " +
                            to_string(kind));
        }
        auto g_kept = filter_series(g_series, shared);
        auto s_kept = filter_series(s_series, shared);
        AcdReport g_acd = acd(g_kept);
        AcdReport s_acd = acd(s_kept);
        std::vector<double> diff = true_change(g_acd, s_acd);

        double mean_diff = 0.0;
        for (std::size_t step = 0; step < diff.size(); ++step) {
            true_change_csv += to_string(kind) + "," + std::to_string(step + 1) + "," +
                               format_sig(g_acd.step_means[step], 12) + "," +
                               format_sig(s_acd.step_means[step], 12) + "," +
                               format_sig(diff[step], 12) + "\n";
            mean_diff += diff[step];
        }
        mean_diff /= static_cast<double>(diff.size());
        collapsed[kind] = mean_diff;

        // Welch tests on per-word distances: one per step plus the per-word
        // mean across steps.
        const std::size_t n_steps = diff.size();
        for (std::size_t step = 0; step <= n_steps; ++step) {
            std::vector<double> ga, sa;
            for (std::size_t w = 0; w < g_kept.size(); ++w) {
                if (step < n_steps) {
                    ga.push_back(g_kept[w].values[step]);
                    sa.push_back(s_kept[w].values[step]);
                } else {
                    ga.push_back(g_kept[w].mean());
                    sa.push_back(s_kept[w].mean());
                }
            }
            WelchResult wr = welch_t_test(ga, sa);
            std::string scope = step < n_steps ? "step" + std::to_string(step + 1) : "collapsed";
            welch_csv += to_string(kind) + "," + scope + "," + format_sig(wr.t, 12) + "," +
                         format_sig(wr.df, 12) + "," + format_sig(wr.p, 12) + "," +
                         flag_significance(wr.p) + "\n";
        }

        // Cumulative distance distributions relative to the first bin.
        auto g_rel = model_change_series(g_spaces, words, ComparisonMode::relative_to_first);
        std::set<std::string> rel_shared = complete_words({&g_rel});
        auto hists = distance_histograms(filter_series(g_rel, rel_shared));
        for (const auto& h : hists) {
            for (std::size_t b = 0; b < h.counts.size(); ++b) {
                if (h.counts[b] == 0) continue;
                fig3_hist_csv += to_string(kind) + "," + std::to_string(h.step) + "," +
                                 format_sig(b * kDistanceHistogramWidth, 12) + "," +
                                 format_sig((b + 1) * kDistanceHistogramWidth, 12) + "," +
                                 std::to_string(h.counts[b]) + "\n";
            }
            fig3_means_csv += to_string(kind) + "," + std::to_string(h.step) + "," +
                              format_sig(h.mean, 12) + "," + std::to_string(h.n) + "\n";
        }

        summary += "n_words." + to_string(kind) + " = " + std::to_string(shared.size()) + "\n";
        summary += "true_change_collapsed." + to_string(kind) + " = " + format_sig(mean_diff, 12) +
                   "\n";
    }

    // Table-1 layout: one row per family, Align / TR / delta.
    std::string table1 = "family,align,tr,delta\n";
    auto has = [&](ModelKind k) { return collapsed.count(k) > 0; };
    if (has(ModelKind::sgns_al) && has(ModelKind::sgns_tr)) {
        double al = collapsed[ModelKind::sgns_al], tr = collapsed[ModelKind::sgns_tr];
        table1 += "SGNS," + format_sig(al, 12) + "," + format_sig(tr, 12) + "," +
                  format_sig(tr - al, 12) + "\n";
    }
    if (has(ModelKind::ppmi_al) && has(ModelKind::ppmi_tr)) {
        double al = collapsed[ModelKind::ppmi_al], tr = collapsed[ModelKind::ppmi_tr];
        table1 += "PPMI," + format_sig(al, 12) + "," + format_sig(tr, 12) + "," +
                  format_sig(tr - al, 12) + "\n";
    }

    atomic_write(cfg.out_dir / "table1.csv", table1);
    atomic_write(cfg.out_dir / "true_change.csv", true_change_csv);
    atomic_write(cfg.out_dir / "welch.csv", welch_csv);
    atomic_write(cfg.out_dir / "fig3_hist.csv", fig3_hist_csv);
    atomic_write(cfg.out_dir / "fig3_means.csv", fig3_means_csv);
    atomic_write(cfg.out_dir / "summary.txt", summary);
}

SyntheticBuild inject_pairs_into(const Corpus& binned, const std::vector<InjectionPair>& pairs,
                                 const InjectionSchedule& schedule, bool auto_controls,
                                 const PreprocessConfig& preprocess, std::uint64_t seed) {
    SyntheticBuild build;
    Vocabulary vocab = build_vocab(binned, preprocess);

    build.pairs = pairs;
    bool have_controls = std::any_of(pairs.begin(), pairs.end(), [](const InjectionPair& p) {
        return p.relation == Relation::control;
    });
    if (auto_controls && !have_controls) {
        auto controls = generate_controls(pairs, vocab);
        build.pairs.insert(build.pairs.end(), controls.begin(), controls.end());
    }

    std::string invalid;
    std::set<std::string> words;
    for (const auto& p : build.pairs) {
        words.insert(p.recipient);
        words.insert(p.donor);
        for (const auto& w : {p.recipient, p.donor}) {
            if (!vocab.valid(w)) invalid += invalid.empty() ? w : (", " + w);
        }
    }
    if (!invalid.empty()) {
        throw DataError("inject: pair words absent from the valid vocabulary: " + invalid);
    }

    HoldOut held = hold_out(binned, words);
    for (const auto& w : held.empty_pool_words) {
        build.warnings.push_back("empty hold-out pool for '" + w + "'");
    }

    build.corpus = std::move(held.reduced);
    for (std::size_t i = 0; i < build.pairs.size(); ++i) {
        InjectionReport report;
        build.corpus = inject(build.corpus, build.pairs[i], schedule, held.pools,
                              derive_seed(seed, "inject:" + std::to_string(i)), &report);
        if (report.quotas_scaled) {
            build.warnings.push_back("donor pool for (" + build.pairs[i].recipient + ", " +
                                     build.pairs[i].donor +
                                     ") smaller than the quota total; quotas scaled down");
        }
        if (report.discarded_both > 0) {
            build.warnings.push_back(std::to_string(report.discarded_both) +
                                     " sentences containing both words of (" +
                                     build.pairs[i].recipient + ", " + build.pairs[i].donor +
                                     ") discarded");
        }
    }
    return build;
}

SyntheticBuild build_synthetic_corpus(const Corpus& synchronic,
                                      const std::vector<InjectionPair>& pairs,
                                      const ExperimentConfig& cfg, std::uint64_t seed) {
    Corpus binned = assign_random_bins(synchronic, cfg.n_bins, derive_seed(seed, "exp2:bins"));
    return inject_pairs_into(binned, pairs, cfg.schedule, cfg.auto_controls, cfg.preprocess,
                             derive_seed(seed, "exp2:injection"));
}

Exp2SeedResult run_exp2_seed(const Corpus& synchronic, const std::vector<InjectionPair>& pairs,
                             const ExperimentConfig& cfg, std::uint64_t seed) {
    Exp2SeedResult result;
    SyntheticBuild build = build_synthetic_corpus(synchronic, pairs, cfg, seed);
    result.warnings = build.warnings;

    for (const auto& p : build.pairs) {
        std::string cls = p.relation == Relation::control
                              ? "stable"
                              : (p.relation == Relation::related ? "change_related"
                                                                 : "change_unrelated");
        result.gold_classes[p.recipient] = cls;
    }

    Vocabulary vocab = build_vocab(build.corpus, cfg.preprocess);
    TargetSet targets;
    for (const auto& [word, cls] : result.gold_classes) {
        if (vocab.valid(word)) {
            targets.insert(word);
        } else {
            result.warnings.push_back("target '" + word +
                                      "' fell below the frequency threshold after injection");
        }
    }
    if (targets.empty()) throw DataError("exp2: no valid target words after injection");
    std::vector<std::string> target_list(targets.begin(), targets.end());

    ModelRunner runner(build.corpus, vocab, targets, cfg.extraction, cfg.sgns, cfg.ppmi,
                       derive_seed(seed, "exp2:models"), cfg.threads);
    for (ModelKind kind : cfg.models) {
        ModelSpaces spaces = runner.run(kind);
        auto series = model_change_series(spaces, target_list, ComparisonMode::consecutive);
        result.series[kind] = series;

        std::vector<LabeledPrediction> predictions;
        std::vector<std::pair<std::string, int>> class_and_peak;
        std::vector<ChangeSeries> change_series_set, stable_series_set;
        for (const auto& s : series) {
            const std::string& cls = result.gold_classes.at(s.word);
            if (!s.complete()) continue;
            int peak = peak_position(s);
            predictions.push_back(LabeledPrediction{
                s.word, cls, classify_peak(peak, static_cast<int>(s.values.size()))});
            class_and_peak.emplace_back(cls == "stable" ? "stable" : "change", peak);
            (cls == "stable" ? stable_series_set : change_series_set).push_back(s);
        }
        result.reports[kind] = score(predictions);
        result.change_curve[kind] = acd(change_series_set).step_means;
        result.stable_curve[kind] = acd(stable_series_set).step_means;
        result.peak_hists[kind] =
            peak_histograms(class_and_peak, static_cast<int>(cfg.n_bins - 1));
    }
    return result;
}

void run_exp2(const ExperimentConfig& cfg) {
    cfg.validate_exp2();
    Corpus synchronic = load_corpus_flexible(cfg.corpus_dir, cfg.bin_labels, cfg.preprocess);
    std::vector<InjectionPair> pairs = load_injection_pairs(cfg.pairs_file);

    std::vector<Exp2SeedResult> seed_results;
    for (std::uint64_t seed : cfg.seeds) {
        Exp2SeedResult result = run_exp2_seed(synchronic, pairs, cfg, seed);

        fs::path seed_dir = cfg.out_dir / ("seed_" + std::to_string(seed));
        for (ModelKind kind : cfg.models) {
            save_change_report(result.series.at(kind), result.gold_classes,
                               seed_dir / ("series_" + to_string(kind) + ".csv"));
        }
        std::string warn;
        for (const auto& w : result.warnings) warn += w + "\n";
        atomic_write(seed_dir / "warnings.txt", warn);

        seed_results.push_back(std::move(result));
    }

    // Manifest for the LAST seed build equals every other seed's class map.
    {
        std::string manifest = "word,class,gold_peak_range\n";
        auto steps = cfg.schedule.changed_steps();
        std::string range;
        if (!steps.empty()) {
            range = std::to_string(steps.front()) + "-" + std::to_string(steps.back());
        }
        for (const auto& [word, cls] : seed_results.front().gold_classes) {
            manifest += word + "," + cls + "," + (cls == "stable" ? "" : range) + "\n";
        }
        atomic_write(cfg.out_dir / "benchmark_manifest.csv", manifest);
    }

    const double n_seeds = static_cast<double>(seed_results.size());
    std::string table2 = "measure";
    for (ModelKind kind : cfg.models) table2 += "," + to_string(kind);
    table2 += "\n";
    auto add_row = [&](const std::string& name, auto getter) {
        table2 += name;
        for (ModelKind kind : cfg.models) {
            double total = 0.0;
            for (const auto& r : seed_results) total += getter(r.reports.at(kind));
            table2 += "," + format_sig(total / n_seeds, 12);
        }
        table2 += "\n";
    };
    add_row("stable", [](const ClassificationReport& r) { return r.stable_accuracy; });
    add_row("unrelated", [](const ClassificationReport& r) { return r.unrelated_accuracy; });
    add_row("related", [](const ClassificationReport& r) { return r.related_accuracy; });
    add_row("mean_accuracy_word_weighted",
            [](const ClassificationReport& r) { return r.mean_accuracy_word_weighted; });
    add_row("mean_accuracy_class_unweighted",
            [](const ClassificationReport& r) { return r.mean_accuracy_class_unweighted; });
    add_row("f1_change", [](const ClassificationReport& r) { return r.f1_change; });
    atomic_write(cfg.out_dir / "table2.csv", table2);

    std::string curves = "model,word_class,step,mean_acd\n";
    for (ModelKind kind : cfg.models) {
        for (int which = 0; which < 2; ++which) {
            const char* cls = which == 0 ? "change" : "stable";
            std::size_t n_steps = seed_results.front().change_curve.at(kind).size();
            for (std::size_t step = 0; step < n_steps; ++step) {
                double total = 0.0;
                for (const auto& r : seed_results) {
                    total += (which == 0 ? r.change_curve : r.stable_curve).at(kind)[step];
                }
                curves += to_string(kind) + "," + cls + "," + std::to_string(step + 1) + "," +
                          format_sig(total / n_seeds, 12) + "\n";
            }
        }
    }
    atomic_write(cfg.out_dir / "fig4_5_curves.csv", curves);

    std::string peaks = "model,word_class,position,count\n";
    for (ModelKind kind : cfg.models) {
        std::map<std::string, std::vector<std::size_t>> merged;
        for (const auto& r : seed_results) {
            for (const auto& h : r.peak_hists.at(kind)) {
                auto& slot = merged[h.gold_class];
                if (slot.empty()) slot.assign(h.counts.size(), 0);
                for (std::size_t i = 0; i < h.counts.size(); ++i) slot[i] += h.counts[i];
            }
        }
        for (const auto& [cls, counts] : merged) {
            for (std::size_t i = 0; i < counts.size(); ++i) {
                peaks += to_string(kind) + "," + cls + "," + std::to_string(i + 1) + "," +
                         std::to_string(counts[i]) + "\n";
            }
        }
    }
    atomic_write(cfg.out_dir / "peak_histograms.csv", peaks);

    std::string summary = "experiment = exp2\nseeds = " + std::to_string(seed_results.size()) +
                          "\n";
    for (ModelKind kind : cfg.models) {
        double f1 = 0.0;
        for (const auto& r : seed_results) f1 += r.reports.at(kind).f1_change;
        summary += "f1." + to_string(kind) + " = " + format_sig(f1 / n_seeds, 12) + "\n";
    }
    atomic_write(cfg.out_dir / "summary.txt", summary);
}

void run_exp3(const ExperimentConfig& cfg) {
    cfg.validate_exp3();
    const std::uint64_t seed = cfg.seeds.front();
    Corpus corpus = load_corpus_flexible(cfg.corpus_dir, cfg.bin_labels, cfg.preprocess);
    Vocabulary vocab = build_vocab(corpus, cfg.preprocess);

    auto entries =
        filter_by_window(load_wsc(cfg.wsc_file), cfg.wsc_window_start, cfg.wsc_window_end);
    std::map<std::string, std::string> gold;
    TargetSet targets;
    std::vector<std::string> skipped;
    for (const auto& e : entries) {
        if (!vocab.valid(e.word)) {
            skipped.push_back(e.word);
            continue;
        }
        gold[e.word] = e.changed ? "changed" : "stable";
        targets.insert(e.word);
    }
    if (targets.empty()) throw DataError("exp3: no testset word passes the frequency threshold");
    std::vector<std::string> words(targets.begin(), targets.end());

    ModelRunner runner(corpus, vocab, targets, cfg.extraction, cfg.sgns, cfg.ppmi,
                       derive_seed(seed, "exp3:models"), cfg.threads);

    std::string table3 =
        "model,changed_acd,stable_acd,diff_percent,t,df,p,significant_p01,"
        "var_changed,var_stable,n_changed,n_stable\n";
    std::string summary = "experiment = exp3\n";
    for (const auto& w : skipped) {
        summary += "skipped_below_frequency = " + w + "\n";
    }

    for (ModelKind kind : cfg.models) {
        ModelSpaces spaces = runner.run(kind);
        auto series = model_change_series(spaces, words, ComparisonMode::consecutive);
        save_change_report(series, gold, cfg.out_dir / ("series_" + to_string(kind) + ".csv"));

        std::vector<double> changed_means, stable_means;
        for (const auto& s : series) {
            if (!s.complete()) continue;
            (gold.at(s.word) == "changed" ? changed_means : stable_means).push_back(s.mean());
        }
        if (changed_means.size() < 2 || stable_means.size() < 2) {
            throw DataError("exp3: need at least two complete changed and stable words for " +
                            to_string(kind));
        }
        auto mean_of = [](const std::vector<double>& xs) {
            double m = 0.0;
            for (double x : xs) m += x;
            return m / static_cast<double>(xs.size());
        };
        auto var_of = [&](const std::vector<double>& xs) {
            double m = mean_of(xs), v = 0.0;
            for (double x : xs) v += (x - m) * (x - m);
            return v / static_cast<double>(xs.size() - 1);
        };
        double ch = mean_of(changed_means), st = mean_of(stable_means);
        WelchResult wr = welch_t_test(changed_means, stable_means);
        table3 += to_string(kind) + "," + format_sig(ch, 12) + "," + format_sig(st, 12) + "," +
                  std::to_string(diff_percent(ch, st)) + "," + format_sig(wr.t, 12) + "," +
                  format_sig(wr.df, 12) + "," + format_sig(wr.p, 12) + "," +
                  flag_significance(wr.p) + "," + format_sig(var_of(changed_means), 12) + "," +
                  format_sig(var_of(stable_means), 12) + "," +
                  std::to_string(changed_means.size()) + "," +
                  std::to_string(stable_means.size()) + "\n";

        // Nearest-neighbor tables: one file per bin for AL spaces, a single
        // file for TR (queries carry their bin tag).
        if (model_is_tr(kind)) {
            std::vector<NeighborList> lists;
            for (const auto& w : words) {
                for (const auto& bin : spaces.bin_labels) {
                    std::string query = render_temporal_token(w, spaces.separator, bin);
                    bool present = model_is_sgns(kind) ? spaces.dense[0].row(query) >= 0
                                                       : spaces.sparse[0].row_id(query) >= 0;
                    if (!present) continue;
                    lists.push_back(
                        model_is_sgns(kind)
                            ? nearest_neighbors(spaces.dense[0], query,
                                                static_cast<std::size_t>(cfg.neighbors_n))
                            : nearest_neighbors(spaces.sparse[0], query,
                                                static_cast<std::size_t>(cfg.neighbors_n)));
                }
            }
            save_neighbor_report(lists,
                                 cfg.out_dir / ("neighbors_" + to_string(kind) + ".csv"));
        } else {
            for (std::size_t b = 0; b < spaces.bin_labels.size(); ++b) {
                std::vector<NeighborList> lists;
                for (const auto& w : words) {
                    bool present = model_is_sgns(kind) ? spaces.dense[b].row(w) >= 0
                                                       : spaces.sparse[b].row_id(w) >= 0;
                    if (!present) continue;
                    lists.push_back(
                        model_is_sgns(kind)
                            ? nearest_neighbors(spaces.dense[b], w,
                                                static_cast<std::size_t>(cfg.neighbors_n))
                            : nearest_neighbors(spaces.sparse[b], w,
                                                static_cast<std::size_t>(cfg.neighbors_n)));
                }
                save_neighbor_report(lists, cfg.out_dir / ("neighbors_" + to_string(kind) + "_" +
                                                           spaces.bin_labels[b] + ".csv"));
            }
        }
        summary += "diff_percent." + to_string(kind) + " = " +
                   std::to_string(diff_percent(ch, st)) + "\n";
    }

    atomic_write(cfg.out_dir / "table3.csv", table3);
    atomic_write(cfg.out_dir / "summary.txt", summary);
}

}  // namespace lscd
