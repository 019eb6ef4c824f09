#include "lscd/ppmi.hpp"

#include <algorithm>
#include <cmath>

#include "lscd/error.hpp"
#include "lscd/io.hpp"

namespace lscd {

namespace {

int find_sorted(const std::vector<std::string>& sorted, const std::string& token) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), token);
    if (it == sorted.end() || *it != token) return -1;
    return static_cast<int>(it - sorted.begin());
}

}  // namespace

int SparseMatrix::row_id(const std::string& token) const { return find_sorted(row_tokens, token); }

int SparseMatrix::col_id(const std::string& token) const { return find_sorted(col_tokens, token); }

std::size_t SparseMatrix::nonzeros() const {
    std::size_t n = 0;
    for (const auto& r : rows) n += r.size();
    return n;
}

std::vector<double> SparseMatrix::row_marginals() const {
    std::vector<double> m(row_tokens.size(), 0.0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (const auto& c : rows[i]) m[i] += c.value;
    }
    return m;
}

std::vector<double> SparseMatrix::col_marginals() const {
    std::vector<double> m(col_tokens.size(), 0.0);
    for (const auto& r : rows) {
        for (const auto& c : r) m[c.col] += c.value;
    }
    return m;
}

SparseMatrix count_matrix(const PairStream& pairs) {
    if (pairs.records.empty()) throw DataError("count_matrix: empty pair stream");
    SparseMatrix m;
    m.row_tokens = pairs.word_tokens;
    m.col_tokens = pairs.context_tokens;
    m.rows.resize(m.row_tokens.size());
    for (const auto& r : pairs.records) {
        m.rows[r.word].push_back(SparseMatrix::Cell{r.context, static_cast<double>(r.count)});
    }
    for (auto& row : m.rows) {
        std::sort(row.begin(), row.end(),
                  [](const SparseMatrix::Cell& a, const SparseMatrix::Cell& b) {
                      return a.col < b.col;
                  });
    }
    return m;
}

SparseMatrix ppmi_weight(const SparseMatrix& counts, const PpmiConfig& cfg) {
    if (!(cfg.cds_alpha > 0.0 && cfg.cds_alpha <= 1.0)) {
        throw DataError("ppmi_weight: cds_alpha must be in (0, 1]");
    }
    if (cfg.shift_k < 1.0) throw DataError("ppmi_weight: shift_k must be >= 1");

    std::vector<double> row_sum = counts.row_marginals();
    std::vector<double> col_sum = counts.col_marginals();
    std::vector<double> col_pow(col_sum.size());
    double smoothed_total = 0.0;
    for (std::size_t c = 0; c < col_sum.size(); ++c) {
        col_pow[c] = std::pow(col_sum[c], cfg.cds_alpha);
        smoothed_total += col_pow[c];
    }
    const double log_total = std::log(smoothed_total);
    const double log_k = std::log(cfg.shift_k);

    std::vector<std::vector<SparseMatrix::Cell>> weighted(counts.rows.size());
    std::vector<bool> col_used(counts.col_tokens.size(), false);
    for (std::size_t i = 0; i < counts.rows.size(); ++i) {
        const double log_row = std::log(row_sum[i]);
        for (const auto& cell : counts.rows[i]) {
            double pmi =
                std::log(cell.value) + log_total - log_row - std::log(col_pow[cell.col]) - log_k;
            if (pmi > 0.0) {
                weighted[i].push_back(SparseMatrix::Cell{cell.col, pmi});
                col_used[cell.col] = true;
            }
        }
    }

    // Rows and columns left with no surviving cell are dropped so the matrix
    // stays representable in the triplet file format.
    std::vector<int> col_remap(counts.col_tokens.size(), -1);
    SparseMatrix out;
    for (std::size_t c = 0; c < counts.col_tokens.size(); ++c) {
        if (col_used[c]) {
            col_remap[c] = static_cast<int>(out.col_tokens.size());
            out.col_tokens.push_back(counts.col_tokens[c]);
        }
    }
    for (std::size_t i = 0; i < counts.rows.size(); ++i) {
        if (weighted[i].empty()) continue;
        out.row_tokens.push_back(counts.row_tokens[i]);
        auto& row = out.rows.emplace_back(std::move(weighted[i]));
        for (auto& cell : row) cell.col = static_cast<std::uint32_t>(col_remap[cell.col]);
    }
    return out;
}

std::pair<SparseMatrix, SparseMatrix> align_intersect(const SparseMatrix& a,
                                                      const SparseMatrix& b) {
    std::vector<std::string> shared;
    std::set_intersection(a.col_tokens.begin(), a.col_tokens.end(), b.col_tokens.begin(),
                          b.col_tokens.end(), std::back_inserter(shared));
    if (shared.empty()) throw DataError("align_intersect: empty column intersection");

    auto restrict_cols = [&](const SparseMatrix& m) {
        // old col id -> shared col id, or -1 when dropped
        std::vector<int> remap(m.col_tokens.size(), -1);
        for (std::size_t c = 0; c < m.col_tokens.size(); ++c) {
            remap[c] = find_sorted(shared, m.col_tokens[c]);
        }
        SparseMatrix out;
        out.row_tokens = m.row_tokens;
        out.col_tokens = shared;
        out.rows.resize(m.rows.size());
        for (std::size_t i = 0; i < m.rows.size(); ++i) {
            for (const auto& cell : m.rows[i]) {
                int nc = remap[cell.col];
                if (nc >= 0) {
                    out.rows[i].push_back(
                        SparseMatrix::Cell{static_cast<std::uint32_t>(nc), cell.value});
                }
            }
            // shared is sorted consistently with the original order, so cells
            // stay sorted by col
        }
        return out;
    };
    return {restrict_cols(a), restrict_cols(b)};
}

void save_sparse_matrix(const SparseMatrix& m, const std::filesystem::path& path) {
    std::string body = "#rows " + std::to_string(m.row_tokens.size()) + "\n#cols " +
                       std::to_string(m.col_tokens.size()) + "\n";
    for (std::size_t i = 0; i < m.rows.size(); ++i) {
        for (const auto& cell : m.rows[i]) {
            body += m.row_tokens[i];
            body += '\t';
            body += m.col_tokens[cell.col];
            body += '\t';
            body += format_sig(cell.value, 12);
            body += '\n';
        }
    }
    atomic_write(path, body);
}

SparseMatrix load_sparse_matrix(const std::filesystem::path& path) {
    struct Triplet {
        std::string row, col;
        double value;
    };
    std::vector<Triplet> triplets;
    std::size_t n_rows = 0, n_cols = 0;
    bool have_rows = false, have_cols = false;
    for_each_line(path, [&](std::size_t line_no, std::string_view line) {
        if (line.empty()) return;
        if (line[0] == '#') {
            auto fields = split_ws(line);
            if (fields.size() == 2 && fields[0] == "#rows") {
                n_rows = std::stoul(fields[1]);
                have_rows = true;
            } else if (fields.size() == 2 && fields[0] == "#cols") {
                n_cols = std::stoul(fields[1]);
                have_cols = true;
            } else {
                throw DataError(path.string() + ":" + std::to_string(line_no) +
                                ": bad header line");
            }
            return;
        }
        auto fields = split_char(line, '\t');
        if (fields.size() != 3) {
            throw DataError(path.string() + ":" + std::to_string(line_no) +
                            ": expected row<TAB>col<TAB>value");
        }
        double v = std::stod(fields[2]);
        if (!std::isfinite(v) || v < 0.0) {
            throw DataError(path.string() + ":" + std::to_string(line_no) +
                            ": values must be finite and >= 0");
        }
        triplets.push_back(Triplet{fields[0], fields[1], v});
    });
    if (!have_rows || !have_cols) {
        throw DataError(path.string() + ": missing #rows/#cols header");
    }

    SparseMatrix m;
    for (const auto& t : triplets) {
        m.row_tokens.push_back(t.row);
        m.col_tokens.push_back(t.col);
    }
    std::sort(m.row_tokens.begin(), m.row_tokens.end());
    m.row_tokens.erase(std::unique(m.row_tokens.begin(), m.row_tokens.end()), m.row_tokens.end());
    std::sort(m.col_tokens.begin(), m.col_tokens.end());
    m.col_tokens.erase(std::unique(m.col_tokens.begin(), m.col_tokens.end()), m.col_tokens.end());
    if (m.row_tokens.size() != n_rows || m.col_tokens.size() != n_cols) {
        throw DataError(path.string() + ": header row/col counts do not match the triplets");
    }
    m.rows.resize(m.row_tokens.size());
    for (const auto& t : triplets) {
        m.rows[find_sorted(m.row_tokens, t.row)].push_back(
            SparseMatrix::Cell{static_cast<std::uint32_t>(find_sorted(m.col_tokens, t.col)),
                               t.value});
    }
    for (auto& row : m.rows) {
        std::sort(row.begin(), row.end(),
                  [](const SparseMatrix::Cell& a, const SparseMatrix::Cell& b) {
                      return a.col < b.col;
                  });
    }
    return m;
}

}  // namespace lscd
