#include <doctest.h>

#include <cmath>

#include "lscd/change.hpp"
#include "lscd/error.hpp"
#include "lscd/ppmi.hpp"
#include "support/oracles.hpp"
#include "support/tempdir.hpp"

using namespace lscd;

namespace {

PairStream stream_from_counts(const oracle::PairCounts& counts) {
    PairStream s;
    s.scope = "all";
    for (const auto& [pair, n] : counts) {
        s.word_tokens.push_back(pair.first);
        s.context_tokens.push_back(pair.second);
    }
    std::sort(s.word_tokens.begin(), s.word_tokens.end());
    s.word_tokens.erase(std::unique(s.word_tokens.begin(), s.word_tokens.end()),
                        s.word_tokens.end());
    std::sort(s.context_tokens.begin(), s.context_tokens.end());
    s.context_tokens.erase(std::unique(s.context_tokens.begin(), s.context_tokens.end()),
                           s.context_tokens.end());
    for (const auto& [pair, n] : counts) {
        s.records.push_back(PairStream::Record{
            static_cast<std::uint32_t>(s.word_id(pair.first)),
            static_cast<std::uint32_t>(s.context_id(pair.second)), n});
    }
    return s;
}

std::map<std::pair<std::string, std::string>, double> matrix_cells(const SparseMatrix& m) {
    std::map<std::pair<std::string, std::string>, double> cells;
    for (std::size_t i = 0; i < m.rows.size(); ++i) {
        for (const auto& c : m.rows[i]) {
            cells[{m.row_tokens[i], m.col_tokens[c.col]}] = c.value;
        }
    }
    return cells;
}

}  // namespace

TEST_CASE("count_matrix tallies pair counts per row") {
    PairStream s = stream_from_counts({{{"a", "b"}, 2}, {{"a", "c"}, 1}});
    SparseMatrix m = count_matrix(s);
    auto cells = matrix_cells(m);
    CHECK(cells.at({"a", "b"}) == 2.0);
    CHECK(cells.at({"a", "c"}) == 1.0);
    CHECK(cells.size() == 2);

    PairStream empty;
    CHECK_THROWS_AS(count_matrix(empty), DataError);
}

TEST_CASE("count_matrix equals a brute-force tally on random corpora") {
    auto engine = std::mt19937_64(31);
    for (int rep = 0; rep < 5; ++rep) {
        Corpus corpus = oracle::random_corpus(engine, 2, 10, true);
        PreprocessConfig pp;
        pp.min_count = 1;
        Vocabulary vocab = build_vocab(corpus, pp);
        ExtractionConfig cfg;
        cfg.window = 3;
        auto streams = extract_pairs(corpus, vocab, {}, cfg);
        auto oracle_bins = oracle::enumerate_pairs_by_bin(corpus, vocab, 3);
        for (std::size_t b = 0; b < streams.size(); ++b) {
            if (streams[b].records.empty()) continue;
            SparseMatrix m = count_matrix(streams[b]);
            auto cells = matrix_cells(m);
            REQUIRE(cells.size() == oracle_bins[b].size());
            for (const auto& [pair, n] : oracle_bins[b]) {
                CHECK(cells.at(pair) == static_cast<double>(n));
            }
        }
    }
}

TEST_CASE("statistically independent counts give zero PMI cells") {
    // #(w,c) = #(w)#(c)/total exactly for every cell.
    PairStream s = stream_from_counts(
        {{{"a", "x"}, 2}, {{"a", "y"}, 2}, {{"b", "x"}, 2}, {{"b", "y"}, 2}});
    PpmiConfig cfg;
    cfg.cds_alpha = 1.0;
    cfg.shift_k = 1.0;
    SparseMatrix w = ppmi_weight(count_matrix(s), cfg);
    CHECK(w.nonzeros() == 0);  // log(1) - log(1) = 0 everywhere, all dropped
}

TEST_CASE("degenerate single-cell matrix drops to nothing at alpha=1, k=1") {
    PairStream s = stream_from_counts({{{"a", "b"}, 4}});
    PpmiConfig cfg;
    cfg.cds_alpha = 1.0;
    cfg.shift_k = 1.0;
    SparseMatrix w = ppmi_weight(count_matrix(s), cfg);
    CHECK(w.nonzeros() == 0);
    CHECK(w.row_tokens.empty());
}

TEST_CASE("ppmi matches the direct formula to 1e-12 (smoothed and shifted)") {
    auto engine = std::mt19937_64(37);
    for (int rep = 0; rep < 5; ++rep) {
        Corpus corpus = oracle::random_corpus(engine, 1, 20, false);
        PreprocessConfig pp;
        pp.min_count = 1;
        Vocabulary vocab = build_vocab(corpus, pp);
        ExtractionConfig ecfg;
        ecfg.window = 2;
        auto streams = extract_pairs(corpus, vocab, {}, ecfg);
        if (streams[0].records.empty()) continue;

        for (auto [alpha, k] : std::vector<std::pair<double, double>>{{0.75, 5.0}, {1.0, 1.0}}) {
            PpmiConfig cfg;
            cfg.cds_alpha = alpha;
            cfg.shift_k = k;
            SparseMatrix weighted = ppmi_weight(count_matrix(streams[0]), cfg);
            auto reference =
                oracle::ppmi_reference(oracle::stream_counts(streams[0]), alpha, k);
            auto cells = matrix_cells(weighted);
            REQUIRE(cells.size() == reference.size());
            for (const auto& [pair, value] : reference) {
                CHECK(std::fabs(cells.at(pair) - value) < 1e-12);
            }
        }
    }
}

TEST_CASE("ppmi output is finite, non-negative, and no denser than the input") {
    auto engine = std::mt19937_64(41);
    Corpus corpus = oracle::random_corpus(engine, 1, 30, false);
    PreprocessConfig pp;
    pp.min_count = 1;
    ExtractionConfig ecfg;
    ecfg.window = 4;
    auto streams = extract_pairs(corpus, build_vocab(corpus, pp), {}, ecfg);
    SparseMatrix counts = count_matrix(streams[0]);
    SparseMatrix weighted = ppmi_weight(counts, {});
    CHECK(weighted.nonzeros() <= counts.nonzeros());
    for (const auto& row : weighted.rows) {
        for (const auto& cell : row) {
            CHECK(std::isfinite(cell.value));
            CHECK(cell.value > 0.0);
        }
    }
}

TEST_CASE("align_intersect keeps shared columns in a shared order") {
    PairStream a = stream_from_counts({{{"r", "x"}, 1}, {{"r", "y"}, 2}, {{"r", "z"}, 3}});
    PairStream b = stream_from_counts({{{"r", "y"}, 4}, {{"r", "z"}, 5}, {{"r", "q"}, 6}});
    auto [ma, mb] = align_intersect(count_matrix(a), count_matrix(b));
    CHECK(ma.col_tokens == std::vector<std::string>{"y", "z"});
    CHECK(mb.col_tokens == std::vector<std::string>{"y", "z"});
    CHECK(matrix_cells(ma).at({"r", "y"}) == 2.0);
    CHECK(matrix_cells(mb).at({"r", "y"}) == 4.0);

    // Idempotence when the matrices already share columns.
    auto [mc, md] = align_intersect(ma, ma);
    CHECK(matrix_cells(mc) == matrix_cells(ma));
    CHECK(matrix_cells(md) == matrix_cells(ma));

    PairStream disjoint = stream_from_counts({{{"r", "only"}, 1}});
    CHECK_THROWS_AS(align_intersect(count_matrix(a), count_matrix(disjoint)), DataError);
}

TEST_CASE("cosine over intersected rows equals a dense recomputation") {
    PairStream a = stream_from_counts(
        {{{"r", "x"}, 1}, {{"r", "y"}, 2}, {{"r", "z"}, 3}, {{"s", "y"}, 5}});
    PairStream b = stream_from_counts({{{"r", "y"}, 4}, {{"r", "z"}, 5}, {{"r", "q"}, 6}});
    SparseMatrix ma = count_matrix(a);
    SparseMatrix mb = count_matrix(b);
    auto [ia, ib] = align_intersect(ma, mb);
    double got = sparse_cosine_distance(ia.rows[ia.row_id("r")], ib.rows[ib.row_id("r")]);

    // Dense oracle over the shared coordinates only.
    std::map<std::string, double> u{{"y", 2}, {"z", 3}};
    std::map<std::string, double> v{{"y", 4}, {"z", 5}};
    CHECK(got == doctest::Approx(oracle::dense_cosine_distance(u, v)).epsilon(1e-12));
}

TEST_CASE("sparse matrix file round-trips") {
    lscd::testutil::TempDir dir("ppmi");
    PairStream s = stream_from_counts(
        {{{"a", "b"}, 7}, {{"a", "c"}, 1}, {{"d", "b"}, 2}, {{"d", "c"}, 9}});
    SparseMatrix weighted = ppmi_weight(count_matrix(s), {});
    save_sparse_matrix(weighted, dir.path() / "m.tsv");
    SparseMatrix loaded = load_sparse_matrix(dir.path() / "m.tsv");
    CHECK(loaded.row_tokens == weighted.row_tokens);
    CHECK(loaded.col_tokens == weighted.col_tokens);
    auto lhs = matrix_cells(loaded);
    auto rhs = matrix_cells(weighted);
    REQUIRE(lhs.size() == rhs.size());
    for (const auto& [key, value] : rhs) {
        CHECK(lhs.at(key) == doctest::Approx(value).epsilon(1e-10));
    }
}
