#include "lscd/pairgen.hpp"

#include <algorithm>
#include <unordered_map>

#include "lscd/error.hpp"
#include "lscd/io.hpp"

namespace lscd {

std::string to_string(PairMode m) { return m == PairMode::AL ? "AL" : "TR"; }

PairMode pair_mode_from_string(const std::string& s) {
    if (s == "AL" || s == "al") return PairMode::AL;
    if (s == "TR" || s == "tr") return PairMode::TR;
    throw DataError("unknown pair mode: " + s);
}

std::string render_temporal_token(const std::string& base, const std::string& separator,
                                  const std::string& bin_label) {
    return base + separator + bin_label;
}

std::string compute_tag_separator(const Vocabulary& vocab, const TargetSet& targets,
                                  const std::vector<std::string>& bin_labels) {
    std::string sep = "_";
    for (;;) {
        bool collision = false;
        for (const auto& w : targets) {
            for (const auto& b : bin_labels) {
                if (vocab.contains(render_temporal_token(w, sep, b))) {
                    collision = true;
                    break;
                }
            }
            if (collision) break;
        }
        if (!collision) return sep;
        sep += '_';
    }
}

std::uint64_t PairStream::total_pairs() const {
    std::uint64_t n = 0;
    for (const auto& r : records) n += r.count;
    return n;
}

namespace {

int find_token(const std::vector<std::string>& sorted, const std::string& token) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), token);
    if (it == sorted.end() || *it != token) return -1;
    return static_cast<int>(it - sorted.begin());
}

}  // namespace

int PairStream::word_id(const std::string& token) const { return find_token(word_tokens, token); }

int PairStream::context_id(const std::string& token) const {
    return find_token(context_tokens, token);
}

std::vector<std::uint64_t> PairStream::word_marginals() const {
    std::vector<std::uint64_t> m(word_tokens.size(), 0);
    for (const auto& r : records) m[r.word] += r.count;
    return m;
}

std::vector<std::uint64_t> PairStream::context_marginals() const {
    std::vector<std::uint64_t> m(context_tokens.size(), 0);
    for (const auto& r : records) m[r.context] += r.count;
    return m;
}

namespace {

// Word-slot key: plain tokens use their vocab id; tagged occurrences of
// target k in bin b use n_vocab + k * n_bins + b.
struct KeyCoder {
    std::uint32_t n_vocab;
    std::uint32_t n_bins;

    std::uint32_t plain(int vocab_id) const { return static_cast<std::uint32_t>(vocab_id); }
    std::uint32_t tagged(std::uint32_t target_index, int bin) const {
        return n_vocab + target_index * n_bins + static_cast<std::uint32_t>(bin);
    }
    bool is_tagged(std::uint32_t key) const { return key >= n_vocab; }
};

PairStream build_stream(std::string scope, std::vector<std::uint64_t>& keys,
                        const KeyCoder& coder, const Vocabulary& vocab,
                        const std::vector<std::string>& target_list, const std::string& separator,
                        const std::vector<std::string>& bin_labels) {
    std::sort(keys.begin(), keys.end());

    // Run-length encode the sorted instance keys first; unique pairs are far
    // fewer than instances.
    std::vector<PairStream::Record> raw;  // word/context fields hold raw keys here
    for (std::size_t i = 0; i < keys.size();) {
        std::size_t j = i;
        while (j < keys.size() && keys[j] == keys[i]) ++j;
        raw.push_back(PairStream::Record{static_cast<std::uint32_t>(keys[i] >> 32),
                                         static_cast<std::uint32_t>(keys[i]),
                                         static_cast<std::uint64_t>(j - i)});
        i = j;
    }
    keys.clear();
    keys.shrink_to_fit();

    auto word_token_of = [&](std::uint32_t key) -> std::string {
        if (!coder.is_tagged(key)) return vocab.entries()[key].token;
        std::uint32_t off = key - coder.n_vocab;
        return render_temporal_token(target_list[off / coder.n_bins], separator,
                                     bin_labels[off % coder.n_bins]);
    };

    std::vector<std::uint32_t> word_keys, ctx_keys;
    word_keys.reserve(raw.size());
    ctx_keys.reserve(raw.size());
    for (const auto& r : raw) {
        word_keys.push_back(r.word);
        ctx_keys.push_back(r.context);
    }
    std::sort(word_keys.begin(), word_keys.end());
    word_keys.erase(std::unique(word_keys.begin(), word_keys.end()), word_keys.end());
    std::sort(ctx_keys.begin(), ctx_keys.end());
    ctx_keys.erase(std::unique(ctx_keys.begin(), ctx_keys.end()), ctx_keys.end());

    PairStream stream;
    stream.scope = std::move(scope);
    stream.word_tokens.reserve(word_keys.size());
    for (auto k : word_keys) stream.word_tokens.push_back(word_token_of(k));
    std::sort(stream.word_tokens.begin(), stream.word_tokens.end());
    stream.context_tokens.reserve(ctx_keys.size());
    for (auto k : ctx_keys) stream.context_tokens.push_back(vocab.entries()[k].token);
    std::sort(stream.context_tokens.begin(), stream.context_tokens.end());

    // raw key -> lexicographic id
    std::unordered_map<std::uint32_t, std::uint32_t> word_map, ctx_map;
    word_map.reserve(word_keys.size());
    for (auto k : word_keys) {
        word_map[k] = static_cast<std::uint32_t>(find_token(stream.word_tokens, word_token_of(k)));
    }
    ctx_map.reserve(ctx_keys.size());
    for (auto k : ctx_keys) {
        ctx_map[k] =
            static_cast<std::uint32_t>(find_token(stream.context_tokens, vocab.entries()[k].token));
    }

    stream.records.reserve(raw.size());
    for (const auto& r : raw) {
        stream.records.push_back(PairStream::Record{word_map[r.word], ctx_map[r.context], r.count});
    }
    std::sort(stream.records.begin(), stream.records.end(),
              [](const PairStream::Record& a, const PairStream::Record& b) {
                  if (a.word != b.word) return a.word < b.word;
                  return a.context < b.context;
              });
    return stream;
}

}  // namespace

std::vector<PairStream> extract_pairs(const Corpus& corpus, const Vocabulary& vocab,
                                      const TargetSet& targets, const ExtractionConfig& cfg) {
    if (cfg.window < 1) throw DataError("extract_pairs: window must be >= 1");

    std::string offenders;
    for (const auto& w : targets) {
        if (!vocab.valid(w)) offenders += offenders.empty() ? w : (", " + w);
    }
    if (!offenders.empty()) {
        throw DataError("extract_pairs: target words absent from the valid vocabulary: " +
                        offenders);
    }

    std::vector<std::string> bin_labels;
    for (const auto& b : corpus.bins) bin_labels.push_back(b.label);
    std::vector<std::string> target_list(targets.begin(), targets.end());
    std::string separator = cfg.mode == PairMode::TR
                                ? compute_tag_separator(vocab, targets, bin_labels)
                                : std::string("_");

    // target vocab-id -> index in target_list
    std::unordered_map<int, std::uint32_t> target_index;
    if (cfg.mode == PairMode::TR) {
        for (std::size_t i = 0; i < target_list.size(); ++i) {
            target_index.emplace(vocab.id(target_list[i]), static_cast<std::uint32_t>(i));
        }
    }

    KeyCoder coder{static_cast<std::uint32_t>(vocab.size()),
                   static_cast<std::uint32_t>(corpus.bins.size())};
    const std::size_t n_scopes = cfg.mode == PairMode::TR ? 1 : corpus.bins.size();
    std::vector<std::vector<std::uint64_t>> keys(n_scopes);

    std::vector<int> ids;      // surviving valid-token vocab ids
    std::vector<int> spacing;  // position in the original sentence (filter-after mode)
    for (const auto& sentence : corpus.sentences) {
        ids.clear();
        spacing.clear();
        for (std::size_t p = 0; p < sentence.tokens.size(); ++p) {
            int id = vocab.id(sentence.tokens[p]);
            if (id < 0 || !vocab.entries()[id].valid) continue;
            ids.push_back(id);
            spacing.push_back(static_cast<int>(p));
        }
        const int n = static_cast<int>(ids.size());
        std::vector<std::uint64_t>& out = keys[cfg.mode == PairMode::TR ? 0 : sentence.bin];
        for (int i = 0; i < n; ++i) {
            std::uint32_t word_key;
            auto it = cfg.mode == PairMode::TR ? target_index.find(ids[i]) : target_index.end();
            if (it != target_index.end()) {
                word_key = coder.tagged(it->second, sentence.bin);
            } else {
                word_key = coder.plain(ids[i]);
            }
            for (int j = i - 1; j >= 0; --j) {
                int dist = cfg.filter_after_windowing ? spacing[i] - spacing[j] : i - j;
                if (dist > cfg.window) break;
                out.push_back((static_cast<std::uint64_t>(word_key) << 32) |
                              coder.plain(ids[j]));
            }
            for (int j = i + 1; j < n; ++j) {
                int dist = cfg.filter_after_windowing ? spacing[j] - spacing[i] : j - i;
                if (dist > cfg.window) break;
                out.push_back((static_cast<std::uint64_t>(word_key) << 32) |
                              coder.plain(ids[j]));
            }
        }
    }

    std::vector<PairStream> streams;
    streams.reserve(n_scopes);
    if (cfg.mode == PairMode::TR) {
        streams.push_back(
            build_stream("all", keys[0], coder, vocab, target_list, separator, bin_labels));
    } else {
        for (std::size_t b = 0; b < n_scopes; ++b) {
            streams.push_back(build_stream(bin_labels[b], keys[b], coder, vocab, target_list,
                                           separator, bin_labels));
        }
    }
    return streams;
}

void save_pair_stream(const PairStream& stream, const std::filesystem::path& path) {
    std::string body;
    body.reserve(stream.records.size() * 24);
    for (const auto& r : stream.records) {
        body += stream.word_tokens[r.word];
        body += '\t';
        body += stream.context_tokens[r.context];
        body += '\t';
        body += std::to_string(r.count);
        body += '\n';
    }
    atomic_write(path, body);
}

PairStream load_pair_stream(const std::filesystem::path& path, const std::string& scope) {
    struct Row {
        std::string word, context;
        std::uint64_t count;
    };
    std::vector<Row> rows;
    for_each_line(path, [&](std::size_t line_no, std::string_view line) {
        if (line.empty()) return;
        auto fields = split_char(line, '\t');
        if (fields.size() != 3) {
            throw DataError(path.string() + ":" + std::to_string(line_no) +
                            ": expected word<TAB>context<TAB>count");
        }
        std::uint64_t count = std::stoull(fields[2]);
        if (count == 0) {
            throw DataError(path.string() + ":" + std::to_string(line_no) + ": zero pair count");
        }
        rows.push_back(Row{fields[0], fields[1], count});
    });

    PairStream stream;
    stream.scope = scope;
    for (const auto& r : rows) {
        stream.word_tokens.push_back(r.word);
        stream.context_tokens.push_back(r.context);
    }
    std::sort(stream.word_tokens.begin(), stream.word_tokens.end());
    stream.word_tokens.erase(std::unique(stream.word_tokens.begin(), stream.word_tokens.end()),
                             stream.word_tokens.end());
    std::sort(stream.context_tokens.begin(), stream.context_tokens.end());
    stream.context_tokens.erase(
        std::unique(stream.context_tokens.begin(), stream.context_tokens.end()),
        stream.context_tokens.end());
    for (const auto& r : rows) {
        stream.records.push_back(
            PairStream::Record{static_cast<std::uint32_t>(find_token(stream.word_tokens, r.word)),
                               static_cast<std::uint32_t>(
                                   find_token(stream.context_tokens, r.context)),
                               r.count});
    }
    std::sort(stream.records.begin(), stream.records.end(),
              [](const PairStream::Record& a, const PairStream::Record& b) {
                  if (a.word != b.word) return a.word < b.word;
                  return a.context < b.context;
              });
    for (std::size_t i = 1; i < stream.records.size(); ++i) {
        if (stream.records[i].word == stream.records[i - 1].word &&
            stream.records[i].context == stream.records[i - 1].context) {
            throw DataError(path.string() + ": duplicate pair entry for (" +
                            stream.word_tokens[stream.records[i].word] + ", " +
                            stream.context_tokens[stream.records[i].context] + ")");
        }
    }
    return stream;
}

}  // namespace lscd
