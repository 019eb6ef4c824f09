#ifndef LSCD_CORPUS_HPP
#define LSCD_CORPUS_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

namespace lscd {

enum class Provenance { genuine, shuffled, synthetic };

std::string to_string(Provenance p);
Provenance provenance_from_string(const std::string& s);

struct TimeBin {
    std::string label;
    int ordinal = 0;  // consecutive from 0 in chronological order
};

struct Sentence {
    std::vector<std::string> tokens;  // already lowercased when configured
    int bin = 0;                      // index into Corpus::bins
};

struct Corpus {
    std::vector<TimeBin> bins;
    std::vector<Sentence> sentences;  // grouped by bin, stable order within a bin
    Provenance provenance = Provenance::genuine;

    std::size_t bin_sentence_count(int bin) const;
    std::size_t token_count() const;
};

struct PreprocessConfig {
    int min_count = 100;
    bool allow_hyphens = true;
    bool lowercase = true;
};

// Letters with optional internal hyphens; leading/trailing hyphens invalid.
bool passes_token_filter(const std::string& token, bool allow_hyphens);

class Vocabulary {
  public:
    struct Entry {
        std::string token;
        std::int64_t count = 0;
        bool valid = false;
    };

    // ids are dense in [0, size()), ordered by count desc then token asc
    const std::vector<Entry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

    bool contains(const std::string& token) const;
    int id(const std::string& token) const;  // -1 if absent
    std::int64_t count(const std::string& token) const;
    bool valid(const std::string& token) const;

    static Vocabulary from_counts(std::unordered_map<std::string, std::int64_t> counts,
                                  const PreprocessConfig& cfg);

  private:
    std::vector<Entry> entries_;
    std::unordered_map<std::string, int> index_;
};

// Reads <root>/<bin-label>/*.txt, UTF-8, one sentence per line, whitespace
// tokenized. Files within a bin are read in lexicographic filename order.
Corpus ingest(const std::filesystem::path& root, const std::vector<std::string>& bin_order,
              const PreprocessConfig& cfg = {});

// Token counts pooled over the full corpus (all bins), valid flags per cfg.
Vocabulary build_vocab(const Corpus& corpus, const PreprocessConfig& cfg = {});

// Pools all sentences and reassigns them to bins uniformly at random without
// replacement, preserving each bin's sentence count.
Corpus shuffle_control(const Corpus& corpus, std::uint64_t seed);

// Partitions sentences into n_bins near-equal bins labeled "t1".."tn"
// (earlier bins take the remainder, sizes differ by at most 1).
Corpus assign_random_bins(const Corpus& corpus, int n_bins, std::uint64_t seed);

// Corpus directory round trip: <dir>/<bin-label>/corpus.txt plus manifest.tsv
// recording bin order and provenance.
void save_corpus(const Corpus& corpus, const std::filesystem::path& dir);
Corpus load_corpus(const std::filesystem::path& dir);

// Vocabulary TSV: token<TAB>id<TAB>count<TAB>valid(0|1), sorted by id.
void save_vocab(const Vocabulary& vocab, const std::filesystem::path& path);
Vocabulary load_vocab(const std::filesystem::path& path);

}  // namespace lscd

#endif
