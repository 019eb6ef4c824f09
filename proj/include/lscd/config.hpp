#ifndef LSCD_CONFIG_HPP
#define LSCD_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "lscd/corpus.hpp"
#include "lscd/pairgen.hpp"
#include "lscd/ppmi.hpp"
#include "lscd/sgns.hpp"
#include "lscd/simulate.hpp"

namespace lscd {

// "[section]" headers with "key = value" entries; '#' or ';' start comments.
class Config {
  public:
    static Config load(const std::filesystem::path& path);
    static Config from_string(const std::string& text, const std::string& origin = "<string>");

    bool has(const std::string& section, const std::string& key) const;
    std::string require(const std::string& section, const std::string& key) const;
    std::string get(const std::string& section, const std::string& key,
                    const std::string& fallback) const;
    std::int64_t get_int(const std::string& section, const std::string& key,
                         std::int64_t fallback) const;
    double get_double(const std::string& section, const std::string& key, double fallback) const;
    bool get_bool(const std::string& section, const std::string& key, bool fallback) const;
    std::vector<std::string> get_list(const std::string& section, const std::string& key) const;

  private:
    std::map<std::string, std::string> values_;  // "section.key"
    std::string origin_;
};

enum class ModelKind { sgns_al, sgns_tr, ppmi_al, ppmi_tr };

std::string to_string(ModelKind m);
ModelKind model_kind_from_string(const std::string& s);
bool model_is_tr(ModelKind m);
bool model_is_sgns(ModelKind m);

struct ExperimentConfig {
    std::filesystem::path corpus_dir;
    std::vector<std::string> bin_labels;  // for pre-binned corpora
    int n_bins = 7;                       // for random binning of synchronic corpora

    std::vector<ModelKind> models = {ModelKind::sgns_al, ModelKind::sgns_tr, ModelKind::ppmi_al,
                                     ModelKind::ppmi_tr};
    PreprocessConfig preprocess;
    ExtractionConfig extraction;
    SgnsConfig sgns;
    PpmiConfig ppmi;

    std::filesystem::path pairs_file;  // injection pairs (exp2)
    InjectionSchedule schedule;
    bool auto_controls = false;  // frequency-matched controls when the file has none

    std::filesystem::path wsc_file;  // exp3
    int wsc_window_start = 1920;
    int wsc_window_end = 1970;
    int neighbors_n = 10;

    std::vector<std::uint64_t> seeds = {1};
    int threads = 1;
    std::filesystem::path out_dir;

    // Per-experiment validation; checks referenced paths exist.
    static ExperimentConfig parse(const Config& cfg);
    void validate_exp1() const;
    void validate_exp2() const;
    void validate_exp3() const;
};

}  // namespace lscd

#endif
