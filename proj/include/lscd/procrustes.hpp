#ifndef LSCD_PROCRUSTES_HPP
#define LSCD_PROCRUSTES_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "lscd/sgns.hpp"

namespace lscd {

struct ProcrustesConfig {
    // When false, the mapping is still found on length-normalized,
    // mean-centered rows, but the reported A_prepared/B_mapped used for
    // distances skip the centering step.
    bool center_distances = true;
};

struct AlignmentResult {
    std::vector<std::string> shared_vocab;  // lexicographically sorted
    std::vector<double> mapping;            // d x d, row-major; the orthogonal W
    DenseSpace a_prepared;                  // rows correspond token-by-token
    DenseSpace b_mapped;
    int dim = 0;
};

// Orthogonal least-squares fit of B onto A: restrict both spaces to their
// shared rows, length-normalize rows, mean-center columns, then
// W = U V^T from the SVD of B_prep^T A_prep; B_mapped = B_prep W.
AlignmentResult align_spaces(const DenseSpace& a, const DenseSpace& b,
                             const ProcrustesConfig& cfg = {});

// W as a d x d text matrix, one row per line, 12 significant digits.
void save_mapping(const AlignmentResult& result, const std::filesystem::path& path);
void save_shared_vocab(const AlignmentResult& result, const std::filesystem::path& path);

}  // namespace lscd

#endif
