#include "lscd/sgns.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

#include "lscd/error.hpp"
#include "lscd/io.hpp"
#include "lscd/rng.hpp"

namespace lscd {

int DenseSpace::row(const std::string& token) const {
    auto it = index_.find(token);
    return it == index_.end() ? -1 : it->second;
}

std::span<const double> DenseSpace::vector(int row) const {
    return {values.data() + static_cast<std::size_t>(row) * dim, static_cast<std::size_t>(dim)};
}

std::span<double> DenseSpace::vector_mut(int row) {
    return {values.data() + static_cast<std::size_t>(row) * dim, static_cast<std::size_t>(dim)};
}

void DenseSpace::rebuild_index() {
    index_.clear();
    index_.reserve(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        index_.emplace(tokens[i], static_cast<int>(i));
    }
    if (index_.size() != tokens.size()) throw DataError("DenseSpace: duplicate tokens");
}

NegativeSampler::NegativeSampler(const std::vector<std::uint64_t>& context_counts, double alpha,
                                 std::uint64_t seed)
    : engine_(make_engine(derive_seed(seed, "negative_sampler"))) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw DataError("negative_sampler: alpha must be in (0, 1]");
    }
    if (context_counts.empty()) throw DataError("negative_sampler: empty context counts");
    const std::size_t n = context_counts.size();
    pmf_.resize(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        pmf_[i] = std::pow(static_cast<double>(context_counts[i]), alpha);
        total += pmf_[i];
    }
    for (auto& p : pmf_) p /= total;

    // Vose alias construction.
    prob_.assign(n, 0.0);
    alias_.assign(n, 0);
    std::vector<double> scaled(n);
    std::vector<std::uint32_t> small, large;
    for (std::size_t i = 0; i < n; ++i) {
        scaled[i] = pmf_[i] * static_cast<double>(n);
        if (scaled[i] < 1.0) {
            small.push_back(static_cast<std::uint32_t>(i));
        } else {
            large.push_back(static_cast<std::uint32_t>(i));
        }
    }
    while (!small.empty() && !large.empty()) {
        std::uint32_t s = small.back();
        std::uint32_t l = large.back();
        small.pop_back();
        large.pop_back();
        prob_[s] = scaled[s];
        alias_[s] = l;
        scaled[l] = (scaled[l] + scaled[s]) - 1.0;
        if (scaled[l] < 1.0) {
            small.push_back(l);
        } else {
            large.push_back(l);
        }
    }
    for (auto l : large) prob_[l] = 1.0;
    for (auto s : small) prob_[s] = 1.0;
}

std::uint32_t NegativeSampler::draw() { return draw(engine_); }

std::uint32_t NegativeSampler::draw(std::mt19937_64& engine) const {
    const std::size_t n = prob_.size();
    double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;  // [0, 1)
    double scaled = u * static_cast<double>(n);
    auto slot = static_cast<std::size_t>(scaled);
    if (slot >= n) slot = n - 1;
    double frac = scaled - static_cast<double>(slot);
    return frac < prob_[slot] ? static_cast<std::uint32_t>(slot) : alias_[slot];
}

double NegativeSampler::probability(std::uint32_t id) const { return pmf_[id]; }

namespace {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

inline double dot(std::span<const double> a, std::span<const double> b) {
    double f = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) f += a[i] * b[i];
    return f;
}

}  // namespace

double sgns_pair_objective(std::span<const double> word, std::span<const double> context,
                           const std::vector<std::span<const double>>& negatives) {
    double obj = std::log(sigmoid(dot(word, context)));
    for (const auto& neg : negatives) obj += std::log(sigmoid(-dot(word, neg)));
    return obj;
}

void sgns_pair_gradients(std::span<const double> word, std::span<const double> context,
                         const std::vector<std::span<const double>>& negatives,
                         std::span<double> grad_word, std::span<double> grad_context,
                         std::vector<std::span<double>>& grad_negatives) {
    const std::size_t d = word.size();
    double gpos = 1.0 - sigmoid(dot(word, context));
    for (std::size_t i = 0; i < d; ++i) {
        grad_word[i] = gpos * context[i];
        grad_context[i] = gpos * word[i];
    }
    for (std::size_t k = 0; k < negatives.size(); ++k) {
        double gneg = sigmoid(dot(word, negatives[k]));
        for (std::size_t i = 0; i < d; ++i) {
            grad_word[i] -= gneg * negatives[k][i];
            grad_negatives[k][i] = -gneg * word[i];
        }
    }
}

namespace {

struct Instance {
    std::uint32_t word;
    std::uint32_t context;
};

void sgd_worker(std::span<const Instance> chunk, std::vector<double>& word_vecs,
                std::vector<double>& ctx_vecs, int dim, const NegativeSampler& sampler,
                const SgnsConfig& cfg, std::uint64_t engine_seed,
                std::atomic<std::uint64_t>& progress, std::uint64_t total_updates) {
    auto engine = make_engine(engine_seed);
    std::vector<double> accum(dim);
    std::uint64_t local = 0;
    double lr = cfg.lr_initial;
    const double lr_span = cfg.lr_initial - cfg.lr_floor;

    for (const auto& inst : chunk) {
        if ((local & 0x3FF) == 0) {
            std::uint64_t done = progress.fetch_add(local, std::memory_order_relaxed) + local;
            local = 0;
            double frac = static_cast<double>(done) / static_cast<double>(total_updates);
            lr = cfg.lr_initial - lr_span * frac;
            if (lr < cfg.lr_floor) lr = cfg.lr_floor;
        }
        ++local;

        double* v = word_vecs.data() + static_cast<std::size_t>(inst.word) * dim;
        std::fill(accum.begin(), accum.end(), 0.0);
        for (int k = 0; k <= cfg.negatives_k; ++k) {
            std::uint32_t target = k == 0 ? inst.context : sampler.draw(engine);
            double label = k == 0 ? 1.0 : 0.0;
            double* u = ctx_vecs.data() + static_cast<std::size_t>(target) * dim;
            double f = 0.0;
            for (int i = 0; i < dim; ++i) f += v[i] * u[i];
            if (!std::isfinite(f)) {
                throw NumericError("sgns: non-finite activation (diverged) at update " +
                                   std::to_string(progress.load() + local) + ", word id " +
                                   std::to_string(inst.word));
            }
            double g = (label - sigmoid(f)) * lr;
            for (int i = 0; i < dim; ++i) accum[i] += g * u[i];
            for (int i = 0; i < dim; ++i) u[i] += g * v[i];
        }
        for (int i = 0; i < dim; ++i) v[i] += accum[i];
    }
    progress.fetch_add(local, std::memory_order_relaxed);
}

std::vector<Instance> expand_instances(const PairStream& pairs) {
    std::vector<Instance> instances;
    instances.reserve(pairs.total_pairs());
    for (const auto& r : pairs.records) {
        for (std::uint64_t k = 0; k < r.count; ++k) {
            instances.push_back(Instance{r.word, r.context});
        }
    }
    return instances;
}

}  // namespace

TrainedSgns train_sgns(const PairStream& pairs, const SgnsConfig& cfg) {
    if (pairs.records.empty()) throw DataError("train_sgns: empty pair stream");
    if (cfg.dim < 1) throw DataError("train_sgns: dim must be >= 1");
    if (cfg.negatives_k < 1) throw DataError("train_sgns: negatives_k must be >= 1");
    if (!(cfg.lr_floor < cfg.lr_initial)) {
        throw DataError("train_sgns: lr_floor must be below lr_initial");
    }

    // Every token must occur in at least one pair.
    {
        std::vector<bool> word_seen(pairs.word_tokens.size(), false);
        std::vector<bool> ctx_seen(pairs.context_tokens.size(), false);
        for (const auto& r : pairs.records) {
            word_seen[r.word] = true;
            ctx_seen[r.context] = true;
        }
        for (std::size_t i = 0; i < word_seen.size(); ++i) {
            if (!word_seen[i]) {
                throw DataError("train_sgns: token with zero pairs: " + pairs.word_tokens[i]);
            }
        }
        for (std::size_t i = 0; i < ctx_seen.size(); ++i) {
            if (!ctx_seen[i]) {
                throw DataError("train_sgns: token with zero pairs: " + pairs.context_tokens[i]);
            }
        }
    }

    const int dim = cfg.dim;
    const std::size_t n_words = pairs.word_tokens.size();
    const std::size_t n_ctx = pairs.context_tokens.size();

    TrainedSgns model;
    model.words.tokens = pairs.word_tokens;
    model.words.dim = dim;
    model.words.values.resize(n_words * dim);
    model.contexts.tokens = pairs.context_tokens;
    model.contexts.dim = dim;
    model.contexts.values.assign(n_ctx * dim, 0.0);

    // Word vectors start uniform in (-0.5/d, +0.5/d), context vectors at zero.
    {
        auto engine = make_engine(derive_seed(cfg.seed, "sgns:init"));
        const double half = 0.5 / dim;
        for (auto& x : model.words.values) {
            double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
            x = (2.0 * u - 1.0) * half;
        }
    }

    NegativeSampler sampler(pairs.context_marginals(), cfg.cds_alpha,
                            derive_seed(cfg.seed, "sgns:negatives"));

    std::vector<Instance> instances = expand_instances(pairs);
    const std::uint64_t total_updates =
        static_cast<std::uint64_t>(instances.size()) * std::max(1, cfg.epochs);
    std::atomic<std::uint64_t> progress{0};

    const int n_threads = std::max(1, cfg.threads);
    for (int epoch = 0; epoch < std::max(1, cfg.epochs); ++epoch) {
        auto order_engine =
            make_engine(derive_seed(cfg.seed, "sgns:order:" + std::to_string(epoch)));
        std::shuffle(instances.begin(), instances.end(), order_engine);
        if (n_threads == 1) {
            sgd_worker(instances, model.words.values, model.contexts.values, dim, sampler, cfg,
                       derive_seed(cfg.seed, "sgns:worker:0:" + std::to_string(epoch)), progress,
                       total_updates);
        } else {
            std::vector<std::thread> workers;
            std::exception_ptr failure;
            std::mutex failure_mutex;
            const std::size_t chunk = (instances.size() + n_threads - 1) / n_threads;
            for (int t = 0; t < n_threads; ++t) {
                std::size_t lo = std::min(instances.size(), t * chunk);
                std::size_t hi = std::min(instances.size(), lo + chunk);
                workers.emplace_back([&, lo, hi, t] {
                    try {
                        sgd_worker(std::span<const Instance>(instances.data() + lo, hi - lo),
                                   model.words.values, model.contexts.values, dim, sampler, cfg,
                                   derive_seed(cfg.seed, "sgns:worker:" + std::to_string(t) + ":" +
                                                             std::to_string(epoch)),
                                   progress, total_updates);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                    }
                });
            }
            for (auto& w : workers) w.join();
            if (failure) std::rethrow_exception(failure);
        }
    }

    for (double x : model.words.values) {
        if (!std::isfinite(x)) {
            throw NumericError("sgns: non-finite word vector after training (diverged)");
        }
    }
    model.words.rebuild_index();
    model.contexts.rebuild_index();
    return model;
}

double sgns_sample_loss(const TrainedSgns& model, const PairStream& pairs, std::size_t sample_size,
                        int negatives_k, double alpha, std::uint64_t seed) {
    NegativeSampler sampler(pairs.context_marginals(), alpha, derive_seed(seed, "loss:negatives"));
    auto engine = make_engine(derive_seed(seed, "loss:sample"));
    std::vector<Instance> instances = expand_instances(pairs);
    double total = 0.0;
    std::uniform_int_distribution<std::size_t> pick(0, instances.size() - 1);
    auto neg_engine = make_engine(derive_seed(seed, "loss:negdraws"));
    for (std::size_t s = 0; s < sample_size; ++s) {
        const auto& inst = instances[pick(engine)];
        std::vector<std::span<const double>> negs;
        negs.reserve(negatives_k);
        for (int k = 0; k < negatives_k; ++k) {
            negs.push_back(model.contexts.vector(static_cast<int>(sampler.draw(neg_engine))));
        }
        total += sgns_pair_objective(model.words.vector(static_cast<int>(inst.word)),
                                     model.contexts.vector(static_cast<int>(inst.context)), negs);
    }
    return -total / static_cast<double>(sample_size);
}

void save_embeddings(const DenseSpace& space, const std::filesystem::path& path) {
    std::string body =
        std::to_string(space.tokens.size()) + " " + std::to_string(space.dim) + "\n";
    for (std::size_t i = 0; i < space.tokens.size(); ++i) {
        body += space.tokens[i];
        const double* row = space.values.data() + i * space.dim;
        for (int k = 0; k < space.dim; ++k) {
            body += ' ';
            body += format_sig(row[k], 8);
        }
        body += '\n';
    }
    atomic_write(path, body);
}

DenseSpace load_embeddings(const std::filesystem::path& path) {
    DenseSpace space;
    std::size_t expected_rows = 0;
    bool have_header = false;
    for_each_line(path, [&](std::size_t line_no, std::string_view line) {
        if (line.empty()) return;
        auto fields = split_ws(line);
        if (!have_header) {
            if (fields.size() != 2) {
                throw DataError(path.string() + ":1: expected '<vocab-size> <dim>'");
            }
            expected_rows = std::stoul(fields[0]);
            space.dim = std::stoi(fields[1]);
            if (space.dim < 1) throw DataError(path.string() + ": dim must be >= 1");
            have_header = true;
            return;
        }
        if (fields.size() != static_cast<std::size_t>(space.dim) + 1) {
            throw DataError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                            std::to_string(space.dim) + " values for token " + fields[0]);
        }
        space.tokens.push_back(fields[0]);
        for (int k = 0; k < space.dim; ++k) {
            double v = std::stod(fields[1 + k]);
            if (!std::isfinite(v)) {
                throw DataError(path.string() + ":" + std::to_string(line_no) +
                                ": non-finite value");
            }
            space.values.push_back(v);
        }
    });
    if (!have_header) throw DataError(path.string() + ": empty embedding file");
    if (space.tokens.size() != expected_rows) {
        throw DataError(path.string() + ": header row count " + std::to_string(expected_rows) +
                        " does not match " + std::to_string(space.tokens.size()) + " rows");
    }
    space.rebuild_index();
    return space;
}

}  // namespace lscd
