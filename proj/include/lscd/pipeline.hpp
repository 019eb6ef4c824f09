#ifndef LSCD_PIPELINE_HPP
#define LSCD_PIPELINE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lscd/change.hpp"
#include "lscd/config.hpp"
#include "lscd/corpus.hpp"
#include "lscd/evaluate.hpp"
#include "lscd/simulate.hpp"

namespace lscd {

// Loads a corpus directory: manifest-style layout when manifest.tsv exists,
// otherwise the raw <dir>/<bin>/*.txt layout with the given bin order.
Corpus load_corpus_flexible(const std::filesystem::path& dir,
                            const std::vector<std::string>& bin_labels,
                            const PreprocessConfig& preprocess);

// A trained model over one binned corpus: a single tagged space for TR, one
// space per bin for AL.
struct ModelSpaces {
    ModelKind kind = ModelKind::sgns_tr;
    std::vector<std::string> bin_labels;
    std::string separator;             // TR tag separator
    std::vector<DenseSpace> dense;     // SGNS models
    std::vector<SparseMatrix> sparse;  // PPMI models
};

// Trains the four model variants over a binned corpus, caching the extracted
// pair streams per mode so SGNS and PPMI share them.
class ModelRunner {
  public:
    ModelRunner(const Corpus& corpus, const Vocabulary& vocab, TargetSet targets,
                const ExtractionConfig& extraction, const SgnsConfig& sgns, const PpmiConfig& ppmi,
                std::uint64_t seed, int threads);

    ModelSpaces run(ModelKind kind);
    const std::vector<PairStream>& streams(PairMode mode);
    const std::string& separator() const { return separator_; }
    const std::vector<std::string>& bin_labels() const { return bin_labels_; }

  private:
    const Corpus& corpus_;
    const Vocabulary& vocab_;
    TargetSet targets_;
    ExtractionConfig extraction_;
    SgnsConfig sgns_;
    PpmiConfig ppmi_;
    std::uint64_t seed_;
    int threads_;
    std::string separator_;
    std::vector<std::string> bin_labels_;
    std::optional<std::vector<PairStream>> al_streams_;
    std::optional<std::vector<PairStream>> tr_streams_;
};

std::vector<ChangeSeries> model_change_series(const ModelSpaces& spaces,
                                              const std::vector<std::string>& words,
                                              ComparisonMode mode);

// Change report CSV: word,class,v1,...,v{n-1},peak,complete.
void save_change_report(const std::vector<ChangeSeries>& series,
                        const std::map<std::string, std::string>& gold_classes,
                        const std::filesystem::path& path);

struct ChangeReportRow {
    ChangeSeries series;
    std::string gold_class;
};

std::vector<ChangeReportRow> load_change_report(const std::filesystem::path& path);

// Neighbor report CSV: query,rank,neighbor,similarity.
void save_neighbor_report(const std::vector<NeighborList>& lists,
                          const std::filesystem::path& path);

void run_exp1(const ExperimentConfig& cfg);
void run_exp2(const ExperimentConfig& cfg);
void run_exp3(const ExperimentConfig& cfg);

// Single-seed half of experiment 2, reused by the acceptance suite.
struct Exp2SeedResult {
    std::map<ModelKind, ClassificationReport> reports;
    std::map<ModelKind, std::vector<double>> change_curve;  // mean acd per step
    std::map<ModelKind, std::vector<double>> stable_curve;
    std::map<ModelKind, std::vector<PeakHistogram>> peak_hists;
    std::map<ModelKind, std::vector<ChangeSeries>> series;
    std::map<std::string, std::string> gold_classes;
    std::vector<std::string> warnings;
};

Exp2SeedResult run_exp2_seed(const Corpus& synchronic, const std::vector<InjectionPair>& pairs,
                             const ExperimentConfig& cfg, std::uint64_t seed);

// Builds the synthetic-change corpus for one seed: random binning, hold-out,
// and per-pair injection. Returns the corpus plus the full pair list
// (controls generated when configured) and human-readable warnings.
struct SyntheticBuild {
    Corpus corpus;
    std::vector<InjectionPair> pairs;
    std::vector<std::string> warnings;
};

// Hold-out plus per-pair injection into an already binned corpus.
SyntheticBuild inject_pairs_into(const Corpus& binned, const std::vector<InjectionPair>& pairs,
                                 const InjectionSchedule& schedule, bool auto_controls,
                                 const PreprocessConfig& preprocess, std::uint64_t seed);

SyntheticBuild build_synthetic_corpus(const Corpus& synchronic,
                                      const std::vector<InjectionPair>& pairs,
                                      const ExperimentConfig& cfg, std::uint64_t seed);

}  // namespace lscd

#endif
