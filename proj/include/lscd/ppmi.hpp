#ifndef LSCD_PPMI_HPP
#define LSCD_PPMI_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "lscd/pairgen.hpp"

namespace lscd {

// Sparse row-major co-occurrence matrix; no explicit zeros are stored.
struct SparseMatrix {
    struct Cell {
        std::uint32_t col = 0;
        double value = 0.0;
    };

    std::vector<std::string> row_tokens;  // lexicographically sorted
    std::vector<std::string> col_tokens;  // lexicographically sorted
    std::vector<std::vector<Cell>> rows;  // cells sorted by col within a row

    int row_id(const std::string& token) const;  // -1 if absent
    int col_id(const std::string& token) const;
    std::size_t nonzeros() const;
    std::vector<double> row_marginals() const;
    std::vector<double> col_marginals() const;
};

struct PpmiConfig {
    double cds_alpha = 0.75;  // context distribution smoothing, in (0, 1]
    double shift_k = 5.0;     // shifting parameter, >= 1
};

// Raw co-occurrence counts from a pair stream.
SparseMatrix count_matrix(const PairStream& pairs);

// Smoothed, shifted positive PMI:
//   max(0, log(#(w,c) * sum_c' #(c')^a / (#(w) * #(c)^a)) - log k)
// computed on natural logs; cells that land at 0 are dropped.
SparseMatrix ppmi_weight(const SparseMatrix& counts, const PpmiConfig& cfg);

// Restricts both matrices to the intersection of their column vocabularies,
// reordered to a shared index. Rows are untouched.
std::pair<SparseMatrix, SparseMatrix> align_intersect(const SparseMatrix& a,
                                                      const SparseMatrix& b);

// Header lines "#rows N" and "#cols M", then TSV triplets
// row_token<TAB>col_token<TAB>value with 12 significant digits.
void save_sparse_matrix(const SparseMatrix& m, const std::filesystem::path& path);
SparseMatrix load_sparse_matrix(const std::filesystem::path& path);

}  // namespace lscd

#endif
