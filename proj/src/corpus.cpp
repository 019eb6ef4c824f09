#include "lscd/corpus.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "lscd/error.hpp"
#include "lscd/io.hpp"
#include "lscd/rng.hpp"

namespace lscd {

namespace fs = std::filesystem;

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::genuine: return "genuine";
        case Provenance::shuffled: return "shuffled";
        case Provenance::synthetic: return "synthetic";
    }
    return "genuine";
}

Provenance provenance_from_string(const std::string& s) {
    if (s == "genuine") return Provenance::genuine;
    if (s == "shuffled") return Provenance::shuffled;
    if (s == "synthetic") return Provenance::synthetic;
    throw DataError("unknown provenance: " + s);
}

std::size_t Corpus::bin_sentence_count(int bin) const {
    std::size_t n = 0;
    for (const auto& s : sentences) {
        if (s.bin == bin) ++n;
    }
    return n;
}

std::size_t Corpus::token_count() const {
    std::size_t n = 0;
    for (const auto& s : sentences) n += s.tokens.size();
    return n;
}

bool passes_token_filter(const std::string& token, bool allow_hyphens) {
    if (token.empty()) return false;
    if (token.front() == '-' || token.back() == '-') return false;
    for (unsigned char c : token) {
        bool alpha = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
        if (alpha) continue;
        if (c == '-' && allow_hyphens) continue;
        return false;
    }
    return true;
}

bool Vocabulary::contains(const std::string& token) const {
    return index_.find(token) != index_.end();
}

int Vocabulary::id(const std::string& token) const {
    auto it = index_.find(token);
    return it == index_.end() ? -1 : it->second;
}

std::int64_t Vocabulary::count(const std::string& token) const {
    auto it = index_.find(token);
    return it == index_.end() ? 0 : entries_[it->second].count;
}

bool Vocabulary::valid(const std::string& token) const {
    auto it = index_.find(token);
    return it != index_.end() && entries_[it->second].valid;
}

Vocabulary Vocabulary::from_counts(std::unordered_map<std::string, std::int64_t> counts,
                                   const PreprocessConfig& cfg) {
    Vocabulary v;
    v.entries_.reserve(counts.size());
    for (auto& [token, count] : counts) {
        bool valid = count >= cfg.min_count && passes_token_filter(token, cfg.allow_hyphens);
        v.entries_.push_back(Entry{token, count, valid});
    }
    std::sort(v.entries_.begin(), v.entries_.end(), [](const Entry& a, const Entry& b) {
        if (a.count != b.count) return a.count > b.count;
        return a.token < b.token;
    });
    v.index_.reserve(v.entries_.size());
    for (std::size_t i = 0; i < v.entries_.size(); ++i) {
        v.index_.emplace(v.entries_[i].token, static_cast<int>(i));
    }
    return v;
}

namespace {

void append_sentences_from_file(const fs::path& file, int bin, bool lowercase,
                                std::vector<Sentence>& out) {
    for_each_line(file, [&](std::size_t line_no, std::string_view line) {
        std::size_t bad = utf8_invalid_at(line);
        if (bad != std::string_view::npos) {
            throw DataError(file.string() + ":" + std::to_string(line_no) +
                            ": invalid UTF-8 at byte offset " + std::to_string(bad));
        }
        std::vector<std::string> tokens = split_ws(line);
        if (tokens.empty()) return;  // blank line, not a sentence
        if (lowercase) {
            for (auto& t : tokens) ascii_lowercase(t);
        }
        out.push_back(Sentence{std::move(tokens), bin});
    });
}

// Rebuilds the sentence list grouped by bin, preserving relative order.
std::vector<Sentence> group_by_bin(std::vector<Sentence> sentences, std::size_t n_bins) {
    std::vector<Sentence> out;
    out.reserve(sentences.size());
    for (std::size_t b = 0; b < n_bins; ++b) {
        for (auto& s : sentences) {
            if (s.bin == static_cast<int>(b)) out.push_back(std::move(s));
        }
    }
    return out;
}

}  // namespace

Corpus ingest(const fs::path& root, const std::vector<std::string>& bin_order,
              const PreprocessConfig& cfg) {
    if (bin_order.empty()) throw DataError("ingest: empty bin order");
    Corpus corpus;
    corpus.provenance = Provenance::genuine;
    for (std::size_t b = 0; b < bin_order.size(); ++b) {
        const std::string& label = bin_order[b];
        for (std::size_t k = 0; k < b; ++k) {
            if (bin_order[k] == label) throw DataError("ingest: duplicate bin label: " + label);
        }
        corpus.bins.push_back(TimeBin{label, static_cast<int>(b)});
        fs::path bin_dir = root / label;
        if (!fs::is_directory(bin_dir)) {
            throw DataError("ingest: missing directory for bin '" + label +
                            "': " + bin_dir.string());
        }
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(bin_dir)) {
            if (entry.is_regular_file() && entry.path().extension() == ".txt") {
                files.push_back(entry.path());
            }
        }
        std::sort(files.begin(), files.end());
        std::size_t before = corpus.sentences.size();
        for (const auto& f : files) {
            append_sentences_from_file(f, static_cast<int>(b), cfg.lowercase, corpus.sentences);
        }
        if (corpus.sentences.size() == before) {
            throw DataError("ingest: bin '" + label + "' contains no sentences");
        }
    }
    return corpus;
}

Vocabulary build_vocab(const Corpus& corpus, const PreprocessConfig& cfg) {
    if (corpus.sentences.empty()) throw DataError("build_vocab: empty corpus");
    std::unordered_map<std::string, std::int64_t> counts;
    for (const auto& s : corpus.sentences) {
        for (const auto& t : s.tokens) ++counts[t];
    }
    return Vocabulary::from_counts(std::move(counts), cfg);
}

Corpus shuffle_control(const Corpus& corpus, std::uint64_t seed) {
    if (corpus.bins.size() < 2) throw DataError("shuffle_control: need at least 2 bins");
    std::vector<int> labels;
    labels.reserve(corpus.sentences.size());
    for (const auto& s : corpus.sentences) labels.push_back(s.bin);
    auto rng = make_engine(derive_seed(seed, "shuffle_control"));
    std::shuffle(labels.begin(), labels.end(), rng);

    Corpus out;
    out.bins = corpus.bins;
    out.provenance = Provenance::shuffled;
    std::vector<Sentence> sentences = corpus.sentences;
    for (std::size_t i = 0; i < sentences.size(); ++i) sentences[i].bin = labels[i];
    out.sentences = group_by_bin(std::move(sentences), corpus.bins.size());
    return out;
}

Corpus assign_random_bins(const Corpus& corpus, int n_bins, std::uint64_t seed) {
    if (n_bins < 2) throw DataError("assign_random_bins: n_bins must be >= 2");
    const std::size_t n = corpus.sentences.size();
    if (n < static_cast<std::size_t>(n_bins)) {
        throw DataError("assign_random_bins: fewer sentences (" + std::to_string(n) +
                        ") than bins (" + std::to_string(n_bins) + ")");
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    auto rng = make_engine(derive_seed(seed, "assign_random_bins"));
    std::shuffle(order.begin(), order.end(), rng);

    Corpus out;
    out.provenance = corpus.provenance;
    for (int b = 0; b < n_bins; ++b) {
        out.bins.push_back(TimeBin{"t" + std::to_string(b + 1), b});
    }
    std::vector<Sentence> sentences = corpus.sentences;
    const std::size_t base = n / n_bins;
    const std::size_t extra = n % n_bins;  // earlier bins take the remainder
    std::size_t pos = 0;
    for (int b = 0; b < n_bins; ++b) {
        std::size_t size = base + (static_cast<std::size_t>(b) < extra ? 1 : 0);
        for (std::size_t k = 0; k < size; ++k) {
            sentences[order[pos + k]].bin = b;
        }
        pos += size;
    }
    out.sentences = group_by_bin(std::move(sentences), n_bins);
    return out;
}

void save_corpus(const Corpus& corpus, const fs::path& dir) {
    fs::create_directories(dir);
    std::string manifest = "provenance\t" + to_string(corpus.provenance) + "\n";
    for (const auto& bin : corpus.bins) manifest += "bin\t" + bin.label + "\n";
    for (std::size_t b = 0; b < corpus.bins.size(); ++b) {
        std::string body;
        for (const auto& s : corpus.sentences) {
            if (s.bin != static_cast<int>(b)) continue;
            for (std::size_t i = 0; i < s.tokens.size(); ++i) {
                if (i) body += ' ';
                body += s.tokens[i];
            }
            body += '\n';
        }
        atomic_write(dir / corpus.bins[b].label / "corpus.txt", body);
    }
    atomic_write(dir / "manifest.tsv", manifest);
}

Corpus load_corpus(const fs::path& dir) {
    fs::path manifest = dir / "manifest.tsv";
    Corpus corpus;
    bool have_provenance = false;
    for_each_line(manifest, [&](std::size_t line_no, std::string_view line) {
        if (line.empty()) return;
        auto fields = split_char(line, '\t');
        if (fields.size() != 2) {
            throw DataError(manifest.string() + ":" + std::to_string(line_no) +
                            ": expected 2 tab-separated fields");
        }
        if (fields[0] == "provenance") {
            corpus.provenance = provenance_from_string(fields[1]);
            have_provenance = true;
        } else if (fields[0] == "bin") {
            corpus.bins.push_back(TimeBin{fields[1], static_cast<int>(corpus.bins.size())});
        } else {
            throw DataError(manifest.string() + ":" + std::to_string(line_no) +
                            ": unknown manifest key: " + fields[0]);
        }
    });
    if (!have_provenance || corpus.bins.empty()) {
        throw DataError("load_corpus: incomplete manifest: " + manifest.string());
    }
    for (std::size_t b = 0; b < corpus.bins.size(); ++b) {
        fs::path file = dir / corpus.bins[b].label / "corpus.txt";
        // Tokens were normalized when the corpus was first built.
        append_sentences_from_file(file, static_cast<int>(b), /*lowercase=*/false,
                                   corpus.sentences);
    }
    return corpus;
}

void save_vocab(const Vocabulary& vocab, const fs::path& path) {
    std::string body;
    const auto& entries = vocab.entries();
    for (std::size_t i = 0; i < entries.size(); ++i) {
        body += entries[i].token;
        body += '\t';
        body += std::to_string(i);
        body += '\t';
        body += std::to_string(entries[i].count);
        body += '\t';
        body += entries[i].valid ? '1' : '0';
        body += '\n';
    }
    atomic_write(path, body);
}

Vocabulary load_vocab(const fs::path& path) {
    struct Row {
        std::string token;
        std::int64_t count;
        bool valid;
    };
    std::vector<Row> rows;
    for_each_line(path, [&](std::size_t line_no, std::string_view line) {
        if (line.empty()) return;
        auto fields = split_char(line, '\t');
        if (fields.size() != 4) {
            throw DataError(path.string() + ":" + std::to_string(line_no) +
                            ": expected 4 tab-separated fields");
        }
        if (std::stoul(fields[1]) != rows.size()) {
            throw DataError(path.string() + ":" + std::to_string(line_no) +
                            ": ids must be dense and sorted");
        }
        rows.push_back(Row{fields[0], std::stoll(fields[2]), fields[3] == "1"});
    });
    // Rebuild through from_counts with a config that reproduces the stored
    // valid flags exactly: flags are re-derived, so mismatches are detected.
    std::unordered_map<std::string, std::int64_t> counts;
    std::int64_t min_valid_count = -1;
    for (const auto& r : rows) {
        counts[r.token] = r.count;
        if (r.valid && (min_valid_count < 0 || r.count < min_valid_count)) {
            min_valid_count = r.count;
        }
    }
    PreprocessConfig cfg;
    cfg.min_count = min_valid_count < 0 ? std::numeric_limits<int>::max()
                                        : static_cast<int>(min_valid_count);
    Vocabulary v = Vocabulary::from_counts(std::move(counts), cfg);
    for (const auto& r : rows) {
        if (v.valid(r.token) != r.valid) {
            throw DataError("load_vocab: stored valid flag for '" + r.token +
                            "' is inconsistent with its count and the token filter");
        }
    }
    return v;
}

}  // namespace lscd
