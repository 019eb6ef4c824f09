#include "lscd/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lscd/error.hpp"
#include "lscd/io.hpp"
#include "lscd/rng.hpp"

namespace lscd {

std::string to_string(Relation r) {
    switch (r) {
        case Relation::related: return "related";
        case Relation::unrelated: return "unrelated";
        case Relation::control: return "control";
    }
    return "related";
}

Relation relation_from_string(const std::string& s) {
    if (s == "related") return Relation::related;
    if (s == "unrelated") return Relation::unrelated;
    if (s == "control") return Relation::control;
    throw DataError("unknown relation label: " + s);
}

void InjectionSchedule::validate(std::size_t n_bins) const {
    if (ratios.size() != n_bins) {
        throw DataError("injection schedule has " + std::to_string(ratios.size()) +
                        " entries for " + std::to_string(n_bins) + " bins");
    }
    if (ratios.empty() || ratios.front() != 0.0) {
        throw DataError("injection schedule must start at 0");
    }
    for (std::size_t i = 0; i < ratios.size(); ++i) {
        if (!(ratios[i] >= 0.0 && ratios[i] <= 1.0)) {
            throw DataError("injection ratios must lie in [0, 1]");
        }
        if (i > 0 && ratios[i] < ratios[i - 1]) {
            throw DataError("injection ratios must be non-decreasing");
        }
    }
}

std::vector<int> InjectionSchedule::changed_steps() const {
    std::vector<int> steps;
    for (std::size_t i = 1; i < ratios.size(); ++i) {
        if (ratios[i] != ratios[i - 1]) steps.push_back(static_cast<int>(i));
    }
    return steps;
}

InjectionSchedule schedule_from_string(const std::string& comma_separated) {
    InjectionSchedule s;
    s.ratios.clear();
    for (const auto& part : split_char(comma_separated, ',')) {
        s.ratios.push_back(std::stod(part));
    }
    return s;
}

HoldOut hold_out(const Corpus& corpus, const std::set<std::string>& words) {
    HoldOut result;
    result.reduced.bins = corpus.bins;
    result.reduced.provenance = corpus.provenance;
    for (const auto& w : words) result.pools[w];  // empty pools are reported

    std::set<std::string> seen;
    for (const auto& sentence : corpus.sentences) {
        seen.clear();
        for (const auto& t : sentence.tokens) {
            if (words.count(t)) seen.insert(t);
        }
        if (seen.empty()) {
            result.reduced.sentences.push_back(sentence);
        } else {
            for (const auto& w : seen) result.pools[w].push_back(sentence);
            result.extra_filings += seen.size() - 1;
        }
    }
    for (const auto& [w, pool] : result.pools) {
        if (pool.empty()) result.empty_pool_words.push_back(w);
    }
    return result;
}

namespace {

std::vector<Sentence> regroup(std::vector<Sentence> sentences, std::size_t n_bins) {
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

Corpus inject(const Corpus& corpus, const InjectionPair& pair, const InjectionSchedule& schedule,
              const std::map<std::string, std::vector<Sentence>>& pools, std::uint64_t seed,
              InjectionReport* report) {
    const std::size_t n_bins = corpus.bins.size();
    schedule.validate(n_bins);
    auto rit = pools.find(pair.recipient);
    auto dit = pools.find(pair.donor);
    if (rit == pools.end() || dit == pools.end()) {
        throw DataError("inject: pools missing for pair (" + pair.recipient + ", " + pair.donor +
                        ")");
    }
    const bool is_control = pair.relation == Relation::control;
    if (is_control && pair.recipient != pair.donor) {
        throw DataError("inject: control pair must have recipient == donor");
    }
    if (!is_control && pair.recipient == pair.donor) {
        throw DataError("inject: change pair must have recipient != donor");
    }

    InjectionReport local_report;
    InjectionReport& rep = report ? *report : local_report;

    // Sentences containing both pair words cannot be attributed to one pool.
    auto contains = [](const Sentence& s, const std::string& w) {
        return std::find(s.tokens.begin(), s.tokens.end(), w) != s.tokens.end();
    };
    std::vector<Sentence> recipient_pool;
    for (const auto& s : rit->second) {
        if (!is_control && contains(s, pair.donor)) {
            ++rep.discarded_both;
        } else {
            recipient_pool.push_back(s);
        }
    }
    std::vector<Sentence> donor_pool;
    if (is_control) {
        donor_pool = recipient_pool;
    } else {
        for (const auto& s : dit->second) {
            if (contains(s, pair.recipient)) continue;  // counted on the recipient side
            donor_pool.push_back(s);
        }
    }
    rep.donor_pool_size = donor_pool.size();
    if (recipient_pool.empty()) {
        throw DataError("inject: empty recipient pool for '" + pair.recipient + "'");
    }

    auto engine = make_engine(derive_seed(seed, "inject:" + pair.recipient + ":" + pair.donor));

    // Quota base: the recipient's mean per-bin sentence count, so ratio 1
    // doubles the recipient's material.
    const double mean_per_bin =
        static_cast<double>(recipient_pool.size()) / static_cast<double>(n_bins);
    std::vector<std::size_t> quotas(n_bins);
    std::size_t quota_total = 0;
    for (std::size_t b = 0; b < n_bins; ++b) {
        quotas[b] = static_cast<std::size_t>(std::floor(schedule.ratios[b] * mean_per_bin + 0.5));
        quota_total += quotas[b];
    }
    if (!is_control && quota_total > donor_pool.size()) {
        // Never sample change-pair donors with replacement; shrink instead.
        rep.quotas_scaled = true;
        const double scale =
            static_cast<double>(donor_pool.size()) / static_cast<double>(quota_total);
        quota_total = 0;
        for (auto& q : quotas) {
            q = static_cast<std::size_t>(std::floor(static_cast<double>(q) * scale + 0.5));
            quota_total += q;
        }
        for (std::size_t b = n_bins; quota_total > donor_pool.size() && b-- > 0;) {
            if (quotas[b] > 0) {
                --quotas[b];
                --quota_total;
            }
        }
    }
    rep.quotas = quotas;

    Corpus out;
    out.bins = corpus.bins;
    out.provenance = Provenance::synthetic;
    std::vector<Sentence> assembled = corpus.sentences;

    // (1) Recipient sentences spread uniformly at random over all bins.
    std::uniform_int_distribution<int> uniform_bin(0, static_cast<int>(n_bins) - 1);
    for (const auto& s : recipient_pool) {
        Sentence copy = s;
        copy.bin = uniform_bin(engine);
        assembled.push_back(std::move(copy));
    }

    // (2) Donor quota per bin; change pairs sample without replacement and
    // rewrite the donor token, control pairs resample their own sentences.
    if (is_control) {
        std::uniform_int_distribution<std::size_t> pick(0, donor_pool.size() - 1);
        for (std::size_t b = 0; b < n_bins; ++b) {
            for (std::size_t k = 0; k < quotas[b]; ++k) {
                Sentence copy = donor_pool[pick(engine)];
                copy.bin = static_cast<int>(b);
                assembled.push_back(std::move(copy));
            }
        }
        rep.donor_unused = 0;
    } else {
        std::vector<std::size_t> order(donor_pool.size());
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), engine);
        std::size_t next = 0;
        for (std::size_t b = 0; b < n_bins; ++b) {
            for (std::size_t k = 0; k < quotas[b]; ++k) {
                Sentence copy = donor_pool[order[next++]];
                copy.bin = static_cast<int>(b);
                for (auto& t : copy.tokens) {
                    if (t == pair.donor) t = pair.recipient;
                }
                assembled.push_back(std::move(copy));
            }
        }
        rep.donor_unused = donor_pool.size() - next;  // (3) the rest is dropped
    }

    out.sentences = regroup(std::move(assembled), n_bins);
    return out;
}

std::vector<InjectionPair> load_injection_pairs(const std::filesystem::path& path) {
    std::vector<InjectionPair> pairs;
    for_each_line(path, [&](std::size_t line_no, std::string_view line) {
        if (line.empty() || line[0] == '#') return;
        auto fields = split_char(line, '\t');
        if (fields.size() != 3) {
            throw DataError(path.string() + ":" + std::to_string(line_no) +
                            ": expected recipient<TAB>donor<TAB>relation");
        }
        InjectionPair p{fields[0], fields[1], relation_from_string(fields[2])};
        if (p.recipient.empty() || p.donor.empty()) {
            throw DataError(path.string() + ":" + std::to_string(line_no) + ": empty word");
        }
        if (p.relation == Relation::control && p.recipient != p.donor) {
            throw DataError(path.string() + ":" + std::to_string(line_no) +
                            ": control pair must have recipient == donor");
        }
        if (p.relation != Relation::control && p.recipient == p.donor) {
            throw DataError(path.string() + ":" + std::to_string(line_no) +
                            ": change pair must have recipient != donor");
        }
        pairs.push_back(std::move(p));
    });
    return pairs;
}

void save_injection_pairs(const std::vector<InjectionPair>& pairs,
                          const std::filesystem::path& path) {
    std::string body;
    for (const auto& p : pairs) {
        body += p.recipient + "\t" + p.donor + "\t" + to_string(p.relation) + "\n";
    }
    atomic_write(path, body);
}

std::vector<InjectionPair> generate_controls(const std::vector<InjectionPair>& change_pairs,
                                             const Vocabulary& vocab) {
    std::set<std::string> used;
    for (const auto& p : change_pairs) {
        used.insert(p.recipient);
        used.insert(p.donor);
    }
    std::vector<InjectionPair> controls;
    for (const auto& p : change_pairs) {
        if (p.relation == Relation::control) continue;
        const std::int64_t want = vocab.count(p.recipient);
        std::string best;
        std::int64_t best_gap = -1;
        for (const auto& e : vocab.entries()) {
            if (!e.valid || used.count(e.token)) continue;
            std::int64_t gap = std::llabs(e.count - want);
            if (best_gap < 0 || gap < best_gap || (gap == best_gap && e.token < best)) {
                best = e.token;
                best_gap = gap;
            }
        }
        if (best.empty()) {
            throw DataError("generate_controls: vocabulary exhausted while matching '" +
                            p.recipient + "'");
        }
        used.insert(best);
        controls.push_back(InjectionPair{best, best, Relation::control});
    }
    return controls;
}

namespace {

std::string gold_class(const InjectionPair& p) {
    switch (p.relation) {
        case Relation::related: return "change_related";
        case Relation::unrelated: return "change_unrelated";
        case Relation::control: return "stable";
    }
    return "stable";
}

}  // namespace

void write_benchmark_manifest(const std::vector<InjectionPair>& pairs,
                              const InjectionSchedule& schedule,
                              const std::filesystem::path& path) {
    auto steps = schedule.changed_steps();
    std::string range;
    if (!steps.empty()) {
        range = std::to_string(steps.front()) + "-" + std::to_string(steps.back());
    }
    std::string body = "word,class,gold_peak_range\n";
    for (const auto& p : pairs) {
        bool change = p.relation != Relation::control;
        body += p.recipient + "," + gold_class(p) + "," + (change ? range : "") + "\n";
    }
    atomic_write(path, body);
}

std::vector<ManifestEntry> load_benchmark_manifest(const std::filesystem::path& path) {
    std::vector<ManifestEntry> entries;
    bool header_seen = false;
    for_each_line(path, [&](std::size_t line_no, std::string_view line) {
        if (line.empty()) return;
        if (!header_seen) {
            header_seen = true;
            return;
        }
        auto fields = split_char(line, ',');
        if (fields.size() != 3) {
            throw DataError(path.string() + ":" + std::to_string(line_no) +
                            ": expected word,class,gold_peak_range");
        }
        if (fields[1] != "change_related" && fields[1] != "change_unrelated" &&
            fields[1] != "stable") {
            throw DataError(path.string() + ":" + std::to_string(line_no) +
                            ": unknown class: " + fields[1]);
        }
        entries.push_back(ManifestEntry{fields[0], fields[1], fields[2]});
    });
    return entries;
}

}  // namespace lscd
