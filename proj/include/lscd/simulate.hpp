#ifndef LSCD_SIMULATE_HPP
#define LSCD_SIMULATE_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "lscd/corpus.hpp"

namespace lscd {

enum class Relation { related, unrelated, control };

std::string to_string(Relation r);
Relation relation_from_string(const std::string& s);

struct InjectionPair {
    std::string recipient;
    std::string donor;
    Relation relation = Relation::related;  // control pairs have recipient == donor
};

// Per-bin injection ratios; non-decreasing, first entry 0.
struct InjectionSchedule {
    std::vector<double> ratios = {0.0, 0.0, 0.25, 0.5, 0.75, 1.0, 1.0};

    void validate(std::size_t n_bins) const;
    // 1-based step positions whose ratio changed (step s compares bins s, s+1).
    std::vector<int> changed_steps() const;
};

InjectionSchedule schedule_from_string(const std::string& comma_separated);

struct HoldOut {
    Corpus reduced;  // zero residual occurrences of any listed word
    std::map<std::string, std::vector<Sentence>> pools;
    std::vector<std::string> empty_pool_words;  // warning report
    std::size_t extra_filings = 0;  // sentences filed under more than one word
};

// Removes every sentence containing a listed word, filing it under each
// listed word it contains.
HoldOut hold_out(const Corpus& corpus, const std::set<std::string>& words);

struct InjectionReport {
    std::vector<std::size_t> quotas;  // donor sentences added per bin
    std::size_t discarded_both = 0;   // sentences containing both pair words
    std::size_t donor_pool_size = 0;
    std::size_t donor_unused = 0;  // donor sentences discarded (donor vanishes)
    bool quotas_scaled = false;    // donor pool could not cover the quotas
};

// Redistributes the recipient pool uniformly across bins and adds per-bin
// donor quotas q(bin) = round(ratio(bin) * n_r) with n_r the recipient pool
// mean per-bin size; donor tokens are rewritten to the recipient. Control
// pairs duplicate the recipient's own sentences (with replacement) without
// rewriting. Unsampled donor sentences are dropped so the donor vanishes.
Corpus inject(const Corpus& corpus, const InjectionPair& pair, const InjectionSchedule& schedule,
              const std::map<std::string, std::vector<Sentence>>& pools, std::uint64_t seed,
              InjectionReport* report = nullptr);

// TSV recipient<TAB>donor<TAB>relation; lines starting with '#' are skipped.
std::vector<InjectionPair> load_injection_pairs(const std::filesystem::path& path);
void save_injection_pairs(const std::vector<InjectionPair>& pairs,
                          const std::filesystem::path& path);

// One control pair per change pair: the unused valid token with count closest
// to the recipient's (ties to the lexicographically smaller token).
std::vector<InjectionPair> generate_controls(const std::vector<InjectionPair>& change_pairs,
                                             const Vocabulary& vocab);

// CSV word,class(change_related|change_unrelated|stable),gold_peak_range.
void write_benchmark_manifest(const std::vector<InjectionPair>& pairs,
                              const InjectionSchedule& schedule,
                              const std::filesystem::path& path);

struct ManifestEntry {
    std::string word;
    std::string gold_class;  // change_related | change_unrelated | stable
    std::string gold_peak_range;
};

std::vector<ManifestEntry> load_benchmark_manifest(const std::filesystem::path& path);

}  // namespace lscd

#endif
