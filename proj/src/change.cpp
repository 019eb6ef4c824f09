#include "lscd/change.hpp"

#include <algorithm>
#include <cmath>

#include "lscd/error.hpp"

namespace lscd {

std::string to_string(ComparisonMode m) {
    return m == ComparisonMode::consecutive ? "consecutive" : "relative_to_first";
}

ComparisonMode comparison_mode_from_string(const std::string& s) {
    if (s == "consecutive") return ComparisonMode::consecutive;
    if (s == "relative_to_first") return ComparisonMode::relative_to_first;
    throw DataError("unknown comparison mode: " + s);
}

double cosine_similarity(std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size()) throw DataError("cosine: dimension mismatch");
    double uu = 0.0, vv = 0.0, uv = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        uu += u[i] * u[i];
        vv += v[i] * v[i];
        uv += u[i] * v[i];
    }
    if (!(uu > 0.0) || !(vv > 0.0)) {
        throw NumericError("cosine: zero vector");
    }
    return uv / (std::sqrt(uu) * std::sqrt(vv));
}

double cosine_distance(std::span<const double> u, std::span<const double> v) {
    return 1.0 - cosine_similarity(u, v);
}

double sparse_cosine_similarity(const std::vector<SparseMatrix::Cell>& u,
                                const std::vector<SparseMatrix::Cell>& v) {
    double uu = 0.0, vv = 0.0, uv = 0.0;
    for (const auto& c : u) uu += c.value * c.value;
    for (const auto& c : v) vv += c.value * c.value;
    std::size_t i = 0, j = 0;
    while (i < u.size() && j < v.size()) {
        if (u[i].col < v[j].col) {
            ++i;
        } else if (u[i].col > v[j].col) {
            ++j;
        } else {
            uv += u[i].value * v[j].value;
            ++i;
            ++j;
        }
    }
    if (!(uu > 0.0) || !(vv > 0.0)) {
        throw NumericError("cosine: zero vector");
    }
    return uv / (std::sqrt(uu) * std::sqrt(vv));
}

double sparse_cosine_distance(const std::vector<SparseMatrix::Cell>& u,
                              const std::vector<SparseMatrix::Cell>& v) {
    return 1.0 - sparse_cosine_similarity(u, v);
}

bool ChangeSeries::complete() const {
    return !defined.empty() && std::all_of(defined.begin(), defined.end(), [](bool d) { return d; });
}

double ChangeSeries::mean() const {
    double total = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (defined[i]) {
            total += values[i];
            ++n;
        }
    }
    if (n == 0) throw NumericError("ChangeSeries::mean: no defined steps for '" + word + "'");
    return total / static_cast<double>(n);
}

namespace {

// The compared bin index pairs for a mode: consecutive (i, i+1) or (0, i).
std::vector<std::pair<int, int>> compared_bins(std::size_t n_bins, ComparisonMode mode) {
    std::vector<std::pair<int, int>> pairs;
    for (std::size_t i = 1; i < n_bins; ++i) {
        if (mode == ComparisonMode::consecutive) {
            pairs.emplace_back(static_cast<int>(i - 1), static_cast<int>(i));
        } else {
            pairs.emplace_back(0, static_cast<int>(i));
        }
    }
    return pairs;
}

}  // namespace

ChangeSeries tr_dense_series(const DenseSpace& space, const std::string& base,
                             const std::vector<std::string>& bin_labels,
                             const std::string& separator, ComparisonMode mode) {
    ChangeSeries series;
    series.word = base;
    series.mode = mode;
    auto pairs = compared_bins(bin_labels.size(), mode);
    for (auto [a, b] : pairs) {
        int ra = space.row(render_temporal_token(base, separator, bin_labels[a]));
        int rb = space.row(render_temporal_token(base, separator, bin_labels[b]));
        if (ra < 0 || rb < 0) {
            series.values.push_back(0.0);
            series.defined.push_back(false);
        } else {
            series.values.push_back(cosine_distance(space.vector(ra), space.vector(rb)));
            series.defined.push_back(true);
        }
    }
    return series;
}

ChangeSeries tr_sparse_series(const SparseMatrix& matrix, const std::string& base,
                              const std::vector<std::string>& bin_labels,
                              const std::string& separator, ComparisonMode mode) {
    ChangeSeries series;
    series.word = base;
    series.mode = mode;
    auto pairs = compared_bins(bin_labels.size(), mode);
    for (auto [a, b] : pairs) {
        int ra = matrix.row_id(render_temporal_token(base, separator, bin_labels[a]));
        int rb = matrix.row_id(render_temporal_token(base, separator, bin_labels[b]));
        if (ra < 0 || rb < 0 || matrix.rows[ra].empty() || matrix.rows[rb].empty()) {
            series.values.push_back(0.0);
            series.defined.push_back(false);
        } else {
            series.values.push_back(sparse_cosine_distance(matrix.rows[ra], matrix.rows[rb]));
            series.defined.push_back(true);
        }
    }
    return series;
}

std::vector<ChangeSeries> al_dense_series(const std::vector<DenseSpace>& bin_spaces,
                                          const std::vector<std::string>& words,
                                          ComparisonMode mode, const ProcrustesConfig& cfg) {
    std::vector<ChangeSeries> out(words.size());
    for (std::size_t w = 0; w < words.size(); ++w) {
        out[w].word = words[w];
        out[w].mode = mode;
    }
    auto pairs = compared_bins(bin_spaces.size(), mode);
    for (auto [a, b] : pairs) {
        AlignmentResult alignment = align_spaces(bin_spaces[a], bin_spaces[b], cfg);
        for (std::size_t w = 0; w < words.size(); ++w) {
            int ra = alignment.a_prepared.row(words[w]);
            int rb = alignment.b_mapped.row(words[w]);
            if (ra < 0 || rb < 0) {
                out[w].values.push_back(0.0);
                out[w].defined.push_back(false);
            } else {
                out[w].values.push_back(cosine_distance(alignment.a_prepared.vector(ra),
                                                        alignment.b_mapped.vector(rb)));
                out[w].defined.push_back(true);
            }
        }
    }
    return out;
}

std::vector<ChangeSeries> al_sparse_series(const std::vector<SparseMatrix>& bin_matrices,
                                           const std::vector<std::string>& words,
                                           ComparisonMode mode) {
    std::vector<ChangeSeries> out(words.size());
    for (std::size_t w = 0; w < words.size(); ++w) {
        out[w].word = words[w];
        out[w].mode = mode;
    }
    auto pairs = compared_bins(bin_matrices.size(), mode);
    for (auto [a, b] : pairs) {
        auto [ma, mb] = align_intersect(bin_matrices[a], bin_matrices[b]);
        for (std::size_t w = 0; w < words.size(); ++w) {
            int ra = ma.row_id(words[w]);
            int rb = mb.row_id(words[w]);
            bool ok = ra >= 0 && rb >= 0 && !ma.rows[ra].empty() && !mb.rows[rb].empty();
            // Column restriction may zero a row out entirely.
            if (ok) {
                double dist = 0.0;
                try {
                    dist = sparse_cosine_distance(ma.rows[ra], mb.rows[rb]);
                } catch (const NumericError&) {
                    ok = false;
                }
                if (ok) {
                    out[w].values.push_back(dist);
                    out[w].defined.push_back(true);
                    continue;
                }
            }
            out[w].values.push_back(0.0);
            out[w].defined.push_back(false);
        }
    }
    return out;
}

namespace {

NeighborList rank_neighbors(const std::string& query,
                            std::vector<std::pair<std::string, double>> scored, std::size_t n) {
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (scored.size() > n) scored.resize(n);
    return NeighborList{query, std::move(scored)};
}

}  // namespace

NeighborList nearest_neighbors(const DenseSpace& space, const std::string& query, std::size_t n) {
    int q = space.row(query);
    if (q < 0) throw DataError("nearest_neighbors: query not in space: " + query);
    auto qv = space.vector(q);
    std::vector<std::pair<std::string, double>> scored;
    scored.reserve(space.tokens.size());
    for (std::size_t i = 0; i < space.tokens.size(); ++i) {
        if (static_cast<int>(i) == q) continue;
        scored.emplace_back(space.tokens[i],
                            cosine_similarity(qv, space.vector(static_cast<int>(i))));
    }
    return rank_neighbors(query, std::move(scored), n);
}

NeighborList nearest_neighbors(const SparseMatrix& matrix, const std::string& query,
                               std::size_t n) {
    int q = matrix.row_id(query);
    if (q < 0) throw DataError("nearest_neighbors: query not in space: " + query);
    const auto& qrow = matrix.rows[q];
    std::vector<std::pair<std::string, double>> scored;
    scored.reserve(matrix.row_tokens.size());
    for (std::size_t i = 0; i < matrix.row_tokens.size(); ++i) {
        if (static_cast<int>(i) == q) continue;
        if (matrix.rows[i].empty()) continue;
        scored.emplace_back(matrix.row_tokens[i], sparse_cosine_similarity(qrow, matrix.rows[i]));
    }
    return rank_neighbors(query, std::move(scored), n);
}

}  // namespace lscd
