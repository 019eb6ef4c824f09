#include "support/synthcorpus.hpp"

#include <algorithm>
#include <cmath>

#include "lscd/rng.hpp"

namespace lscd::synth {

namespace {

// Base-26 letter index, fixed width, so every generated token is alphabetic.
std::string letters(int value, int width) {
    std::string s(width, 'a');
    for (int i = width - 1; i >= 0; --i) {
        s[i] = static_cast<char>('a' + value % 26);
        value /= 26;
    }
    return s;
}

// Cumulative sampler over Zipf-like weights 1/(rank+1).
class ZipfSampler {
  public:
    explicit ZipfSampler(int n) : cumulative_(n) {
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
            total += 1.0 / static_cast<double>(i + 1);
            cumulative_[i] = total;
        }
        for (auto& c : cumulative_) c /= total;
    }

    int draw(std::mt19937_64& engine) const {
        double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
        auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), u);
        return static_cast<int>(it - cumulative_.begin());
    }

  private:
    std::vector<double> cumulative_;
};

struct Target {
    std::string token;
    int topic;
    int index;  // global target index, for satellite naming
};

}  // namespace

SynthSpec SynthSpec::small() {
    SynthSpec spec;
    spec.n_related = 4;
    spec.n_unrelated = 4;
    spec.sentences_per_target = 140;
    spec.background_sentences = 2500;
    spec.words_per_topic = 12;
    spec.satellites_per_target = 6;
    spec.common_words = 60;
    return spec;
}

SynthBenchmark make_benchmark(const SynthSpec& spec) {
    SynthBenchmark bench;
    const int n_controls = spec.n_related + spec.n_unrelated;
    const int n_topics = spec.n_related + 2 * spec.n_unrelated + n_controls;

    std::vector<Target> targets;
    int next_topic = 0;
    for (int i = 0; i < spec.n_related; ++i) {
        int topic = next_topic++;
        targets.push_back(Target{"relrec" + letters(i, 2), topic, 0});
        targets.push_back(Target{"reldon" + letters(i, 2), topic, 0});
        bench.pairs.push_back(InjectionPair{"relrec" + letters(i, 2), "reldon" + letters(i, 2),
                                            Relation::related});
    }
    for (int i = 0; i < spec.n_unrelated; ++i) {
        targets.push_back(Target{"unrrec" + letters(i, 2), next_topic++, 0});
        targets.push_back(Target{"unrdon" + letters(i, 2), next_topic++, 0});
        bench.pairs.push_back(InjectionPair{"unrrec" + letters(i, 2), "unrdon" + letters(i, 2),
                                            Relation::unrelated});
    }
    for (int i = 0; i < n_controls; ++i) {
        targets.push_back(Target{"ctl" + letters(i, 2), next_topic++, 0});
        bench.pairs.push_back(
            InjectionPair{"ctl" + letters(i, 2), "ctl" + letters(i, 2), Relation::control});
    }
    for (std::size_t i = 0; i < targets.size(); ++i) targets[i].index = static_cast<int>(i);

    auto topic_word = [&](int topic, int k) { return "t" + letters(topic, 2) + letters(k, 2); };
    auto satellite_word = [&](int target_index, int k) {
        return "s" + letters(target_index, 2) + letters(k, 2);
    };
    auto common_word = [&](int k) { return "c" + letters(k, 2); };

    auto engine = make_engine(derive_seed(spec.seed, "synthcorpus"));
    ZipfSampler common_sampler(spec.common_words);
    ZipfSampler core_sampler(spec.words_per_topic);
    std::uniform_int_distribution<int> length(spec.min_sentence_len, spec.max_sentence_len);
    std::uniform_int_distribution<int> satellite_pick(0, spec.satellites_per_target - 1);
    std::uniform_int_distribution<int> topic_pick(0, n_topics - 1);
    auto coin = [&](double p) {
        return (static_cast<double>(engine() >> 11) * 0x1.0p-53) < p;
    };

    Corpus& corpus = bench.corpus;
    corpus.bins.push_back(TimeBin{"all", 0});
    corpus.provenance = Provenance::genuine;

    // Target sentences: exactly one occurrence of the target, everything else
    // drawn from common / topic-core / target-satellite pools. None of those
    // pools can produce another target token.
    for (const auto& target : targets) {
        for (int s = 0; s < spec.sentences_per_target; ++s) {
            int len = length(engine);
            Sentence sentence;
            sentence.bin = 0;
            sentence.tokens.reserve(len);
            std::uniform_int_distribution<int> slot_pick(0, len - 1);
            int target_slot = slot_pick(engine);
            for (int t = 0; t < len; ++t) {
                if (t == target_slot) {
                    sentence.tokens.push_back(target.token);
                } else if (coin(spec.p_common)) {
                    sentence.tokens.push_back(common_word(common_sampler.draw(engine)));
                } else if (coin(spec.satellite_share)) {
                    sentence.tokens.push_back(
                        satellite_word(target.index, satellite_pick(engine)));
                } else {
                    sentence.tokens.push_back(topic_word(target.topic, core_sampler.draw(engine)));
                }
            }
            corpus.sentences.push_back(std::move(sentence));
        }
    }

    for (int s = 0; s < spec.background_sentences; ++s) {
        int topic = topic_pick(engine);
        int len = length(engine);
        Sentence sentence;
        sentence.bin = 0;
        sentence.tokens.reserve(len);
        for (int t = 0; t < len; ++t) {
            if (coin(spec.p_common)) {
                sentence.tokens.push_back(common_word(common_sampler.draw(engine)));
            } else {
                sentence.tokens.push_back(topic_word(topic, core_sampler.draw(engine)));
            }
        }
        corpus.sentences.push_back(std::move(sentence));
    }

    std::shuffle(corpus.sentences.begin(), corpus.sentences.end(), engine);
    return bench;
}

}  // namespace lscd::synth
