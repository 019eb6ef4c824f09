#include "lscd/procrustes.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "lscd/error.hpp"
#include "lscd/io.hpp"

namespace lscd {

namespace {

Eigen::MatrixXd rows_for(const DenseSpace& space, const std::vector<std::string>& vocab) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(vocab.size()), space.dim);
    for (std::size_t i = 0; i < vocab.size(); ++i) {
        int r = space.row(vocab[i]);
        auto v = space.vector(r);
        for (int k = 0; k < space.dim; ++k) m(static_cast<Eigen::Index>(i), k) = v[k];
    }
    return m;
}

void length_normalize(Eigen::MatrixXd& m, const std::vector<std::string>& vocab) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        double norm = m.row(i).norm();
        if (!(norm > 0.0) || !std::isfinite(norm)) {
            throw NumericError("align: zero or non-finite row for token '" +
                               vocab[static_cast<std::size_t>(i)] + "'");
        }
        m.row(i) /= norm;
    }
}

DenseSpace to_space(const Eigen::MatrixXd& m, const std::vector<std::string>& vocab) {
    DenseSpace s;
    s.tokens = vocab;
    s.dim = static_cast<int>(m.cols());
    s.values.resize(static_cast<std::size_t>(m.rows()) * m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index k = 0; k < m.cols(); ++k) {
            s.values[static_cast<std::size_t>(i) * m.cols() + k] = m(i, k);
        }
    }
    s.rebuild_index();
    return s;
}

}  // namespace

AlignmentResult align_spaces(const DenseSpace& a, const DenseSpace& b,
                             const ProcrustesConfig& cfg) {
    if (a.dim != b.dim) {
        throw DataError("align: dimension mismatch: " + std::to_string(a.dim) + " vs " +
                        std::to_string(b.dim));
    }
    std::vector<std::string> shared;
    for (const auto& t : a.tokens) {
        if (b.row(t) >= 0) shared.push_back(t);
    }
    std::sort(shared.begin(), shared.end());
    if (shared.empty()) throw DataError("align: empty shared vocabulary");

    Eigen::MatrixXd a_rows = rows_for(a, shared);
    Eigen::MatrixXd b_rows = rows_for(b, shared);
    length_normalize(a_rows, shared);
    length_normalize(b_rows, shared);

    Eigen::RowVectorXd a_mean = a_rows.colwise().mean();
    Eigen::RowVectorXd b_mean = b_rows.colwise().mean();
    Eigen::MatrixXd a_centered = a_rows.rowwise() - a_mean;
    Eigen::MatrixXd b_centered = b_rows.rowwise() - b_mean;

    Eigen::MatrixXd cross = b_centered.transpose() * a_centered;
    Eigen::BDCSVD<Eigen::MatrixXd> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (svd.info() != Eigen::Success) throw NumericError("align: SVD failed to converge");
    Eigen::MatrixXd w = svd.matrixU() * svd.matrixV().transpose();

    AlignmentResult result;
    result.dim = a.dim;
    result.shared_vocab = shared;
    result.mapping.resize(static_cast<std::size_t>(a.dim) * a.dim);
    for (int i = 0; i < a.dim; ++i) {
        for (int k = 0; k < a.dim; ++k) {
            result.mapping[static_cast<std::size_t>(i) * a.dim + k] = w(i, k);
        }
    }
    if (cfg.center_distances) {
        result.a_prepared = to_space(a_centered, shared);
        result.b_mapped = to_space((b_centered * w).eval(), shared);
    } else {
        result.a_prepared = to_space(a_rows, shared);
        result.b_mapped = to_space((b_rows * w).eval(), shared);
    }
    return result;
}

void save_mapping(const AlignmentResult& result, const std::filesystem::path& path) {
    std::string body;
    for (int i = 0; i < result.dim; ++i) {
        for (int k = 0; k < result.dim; ++k) {
            if (k) body += ' ';
            body += format_sig(result.mapping[static_cast<std::size_t>(i) * result.dim + k], 12);
        }
        body += '\n';
    }
    atomic_write(path, body);
}

void save_shared_vocab(const AlignmentResult& result, const std::filesystem::path& path) {
    std::string body;
    for (const auto& t : result.shared_vocab) {
        body += t;
        body += '\n';
    }
    atomic_write(path, body);
}

}  // namespace lscd
