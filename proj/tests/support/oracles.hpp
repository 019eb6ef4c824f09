#ifndef LSCD_TESTS_ORACLES_HPP
#define LSCD_TESTS_ORACLES_HPP

// Independent reference implementations the tests check the library against.
// Everything here recomputes results from first principles and must stay
// decoupled from the code paths under test.

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "lscd/corpus.hpp"
#include "lscd/pairgen.hpp"

namespace lscd::oracle {

using PairCounts = std::map<std::pair<std::string, std::string>, std::uint64_t>;

// Window enumeration over the surviving tokens of each sentence, one count
// map per bin (AL view). TR tagging is applied afterwards by the caller.
std::vector<PairCounts> enumerate_pairs_by_bin(const Corpus& corpus, const Vocabulary& vocab,
                                               int window);

// TR view: word slots of target occurrences are tagged base+sep+bin.
PairCounts enumerate_pairs_tr(const Corpus& corpus, const Vocabulary& vocab, int window,
                              const std::set<std::string>& targets, const std::string& separator);

// PairStream -> count map, for comparing against enumeration.
PairCounts stream_counts(const PairStream& stream);

// Direct evaluation of smoothed shifted positive PMI from a raw count map.
std::map<std::pair<std::string, std::string>, double> ppmi_reference(const PairCounts& counts,
                                                                     double alpha, double k);

// Dense cosine distance over explicit coordinates (absent coordinates are 0).
double dense_cosine_distance(const std::map<std::string, double>& u,
                             const std::map<std::string, double>& v);

// Two-sided Student-t p value by numerical quadrature of the density.
double t_pvalue_by_quadrature(double t, double df);

// Row-major random orthogonal d x d matrix (QR of a Gaussian sample).
std::vector<double> random_orthogonal(int dim, std::mt19937_64& engine);

// Multiplies row-major square matrices.
std::vector<double> matmul(const std::vector<double>& a, const std::vector<double>& b, int dim);
std::vector<double> transpose(const std::vector<double>& a, int dim);
double frobenius_distance(const std::vector<double>& a, const std::vector<double>& b);

// Small random corpus for property tests: tokens drawn from a tiny alphabet,
// optionally salted with filter-failing tokens.
Corpus random_corpus(std::mt19937_64& engine, int n_bins, int max_sentences_per_bin,
                     bool with_invalid_tokens);

}  // namespace lscd::oracle

#endif
