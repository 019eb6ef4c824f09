#ifndef LSCD_PAIRGEN_HPP
#define LSCD_PAIRGEN_HPP

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "lscd/corpus.hpp"

namespace lscd {

enum class PairMode { AL, TR };

std::string to_string(PairMode m);
PairMode pair_mode_from_string(const std::string& s);

// Target words eligible for time tagging; must all be valid vocabulary tokens.
using TargetSet = std::set<std::string>;

struct ExtractionConfig {
    int window = 5;  // symmetric, fixed (no sampling)
    PairMode mode = PairMode::AL;
    // When true, invalid tokens still consume window slots (windowing happens
    // before deletion); default reaches across deleted tokens.
    bool filter_after_windowing = false;
};

// Smallest separator of the form "_"+ such that no rendered target-bin token
// collides with a natural corpus token.
std::string compute_tag_separator(const Vocabulary& vocab, const TargetSet& targets,
                                  const std::vector<std::string>& bin_labels);

std::string render_temporal_token(const std::string& base, const std::string& separator,
                                  const std::string& bin_label);

// Counted multiset of (word, context) pairs; words may be rendered temporal
// tokens, contexts are always plain tokens.
struct PairStream {
    struct Record {
        std::uint32_t word = 0;     // index into word_tokens
        std::uint32_t context = 0;  // index into context_tokens
        std::uint64_t count = 0;
    };

    std::string scope;                        // bin label (AL) or "all" (TR)
    std::vector<std::string> word_tokens;     // lexicographically sorted
    std::vector<std::string> context_tokens;  // lexicographically sorted
    std::vector<Record> records;              // sorted by (word, context)

    std::uint64_t total_pairs() const;
    int word_id(const std::string& token) const;     // -1 if absent
    int context_id(const std::string& token) const;  // -1 if absent
    std::vector<std::uint64_t> word_marginals() const;
    std::vector<std::uint64_t> context_marginals() const;
};

// Extracts word-context pairs. AL: one stream per bin, plain tokens only.
// TR: a single whole-corpus stream where the word slot of a target occurrence
// is its rendered temporal token; contexts always stay plain. Invalid tokens
// are removed from each sentence before windowing (unless configured
// otherwise), and sentence boundaries bound the window.
std::vector<PairStream> extract_pairs(const Corpus& corpus, const Vocabulary& vocab,
                                      const TargetSet& targets, const ExtractionConfig& cfg);

// TSV word<TAB>context<TAB>count, counts aggregated, sorted lexicographically.
void save_pair_stream(const PairStream& stream, const std::filesystem::path& path);
PairStream load_pair_stream(const std::filesystem::path& path, const std::string& scope);

}  // namespace lscd

#endif
