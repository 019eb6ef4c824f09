#ifndef LSCD_CHANGE_HPP
#define LSCD_CHANGE_HPP

#include <span>
#include <string>
#include <vector>

#include "lscd/ppmi.hpp"
#include "lscd/procrustes.hpp"
#include "lscd/sgns.hpp"

namespace lscd {

enum class ComparisonMode { consecutive, relative_to_first };

std::string to_string(ComparisonMode m);
ComparisonMode comparison_mode_from_string(const std::string& s);

// 1 - cos(u, v); throws NumericError on zero vectors.
double cosine_distance(std::span<const double> u, std::span<const double> v);
double cosine_similarity(std::span<const double> u, std::span<const double> v);

double sparse_cosine_distance(const std::vector<SparseMatrix::Cell>& u,
                              const std::vector<SparseMatrix::Cell>& v);
double sparse_cosine_similarity(const std::vector<SparseMatrix::Cell>& u,
                                const std::vector<SparseMatrix::Cell>& v);

// One word's change trajectory across bin comparisons. Steps where the word
// lacks a representation are flagged undefined instead of failing the run.
struct ChangeSeries {
    std::string word;
    ComparisonMode mode = ComparisonMode::consecutive;
    std::vector<double> values;  // length n_bins - 1
    std::vector<bool> defined;   // per step

    bool complete() const;
    double mean() const;  // over defined steps
};

// Temporal-referencing series: all vectors live in one space under rendered
// target-bin tokens.
ChangeSeries tr_dense_series(const DenseSpace& space, const std::string& base,
                             const std::vector<std::string>& bin_labels,
                             const std::string& separator, ComparisonMode mode);
ChangeSeries tr_sparse_series(const SparseMatrix& matrix, const std::string& base,
                              const std::vector<std::string>& bin_labels,
                              const std::string& separator, ComparisonMode mode);

// Alignment series over per-bin spaces. Pairwise mappings are computed once
// and reused across words: consecutive mode aligns bin i+1 onto bin i,
// relative_to_first aligns every later bin onto the first.
std::vector<ChangeSeries> al_dense_series(const std::vector<DenseSpace>& bin_spaces,
                                          const std::vector<std::string>& words,
                                          ComparisonMode mode, const ProcrustesConfig& cfg = {});
std::vector<ChangeSeries> al_sparse_series(const std::vector<SparseMatrix>& bin_matrices,
                                           const std::vector<std::string>& words,
                                           ComparisonMode mode);

struct NeighborList {
    std::string query;
    std::vector<std::pair<std::string, double>> neighbors;  // similarity non-increasing
};

// Top-n rows by cosine similarity; the query row itself is excluded, ties are
// broken by lexicographic token order. n larger than the vocabulary returns
// the full ranking.
NeighborList nearest_neighbors(const DenseSpace& space, const std::string& query, std::size_t n);
NeighborList nearest_neighbors(const SparseMatrix& matrix, const std::string& query,
                               std::size_t n);

}  // namespace lscd

#endif
