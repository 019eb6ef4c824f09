#ifndef LSCD_SGNS_HPP
#define LSCD_SGNS_HPP

#include <cstdint>
#include <filesystem>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "lscd/pairgen.hpp"

namespace lscd {

// token -> dense vector table, row-major.
struct DenseSpace {
    std::vector<std::string> tokens;
    std::vector<double> values;  // tokens.size() * dim
    int dim = 0;

    int row(const std::string& token) const;  // -1 if absent
    std::span<const double> vector(int row) const;
    std::span<double> vector_mut(int row);
    void rebuild_index();

  private:
    std::unordered_map<std::string, int> index_;
};

struct SgnsConfig {
    int dim = 300;
    int negatives_k = 5;
    double cds_alpha = 0.75;  // smoothing of the negative-sampling distribution
    int epochs = 1;
    double lr_initial = 0.025;
    double lr_floor = 1e-4;
    std::uint64_t seed = 1;
    int threads = 1;  // 1 = deterministic mode; >1 applies unsynchronized updates
};

// Draws context ids with probability #(c)^alpha / sum #(c')^alpha (alias method).
class NegativeSampler {
  public:
    NegativeSampler(const std::vector<std::uint64_t>& context_counts, double alpha,
                    std::uint64_t seed);

    std::uint32_t draw();  // uses the internal engine
    std::uint32_t draw(std::mt19937_64& engine) const;
    double probability(std::uint32_t id) const;
    std::size_t size() const { return prob_.size(); }

  private:
    std::vector<double> prob_;          // acceptance probability per slot
    std::vector<std::uint32_t> alias_;  // fallback id per slot
    std::vector<double> pmf_;
    std::mt19937_64 engine_;
};

// Per-pair objective log s(v.u_c) + sum_i log s(-v.u_ni) and its gradients;
// the same math the trainer applies, exposed for direct checking.
double sgns_pair_objective(std::span<const double> word, std::span<const double> context,
                           const std::vector<std::span<const double>>& negatives);
void sgns_pair_gradients(std::span<const double> word, std::span<const double> context,
                         const std::vector<std::span<const double>>& negatives,
                         std::span<double> grad_word, std::span<double> grad_context,
                         std::vector<std::span<double>>& grad_negatives);

struct TrainedSgns {
    DenseSpace words;     // the token vectors handed downstream
    DenseSpace contexts;  // companion table, same dimension
};

// Stochastic gradient ascent over the expanded pair multiset; pair visit
// order is a seed-determined shuffle, learning rate decays linearly from
// lr_initial to lr_floor over all updates.
TrainedSgns train_sgns(const PairStream& pairs, const SgnsConfig& cfg);

// Mean negative per-pair objective over a fixed, seed-determined sample of
// pairs with freshly drawn negatives; training should lower it.
double sgns_sample_loss(const TrainedSgns& model, const PairStream& pairs, std::size_t sample_size,
                        int negatives_k, double alpha, std::uint64_t seed);

// First line "<vocab-size> <dim>", then one line per token:
// "token v1 ... vd" with 8 significant digits.
void save_embeddings(const DenseSpace& space, const std::filesystem::path& path);
DenseSpace load_embeddings(const std::filesystem::path& path);

}  // namespace lscd

#endif
