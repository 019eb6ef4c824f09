#ifndef LSCD_EVALUATE_HPP
#define LSCD_EVALUATE_HPP

#include <span>
#include <string>
#include <vector>

#include "lscd/change.hpp"

namespace lscd {

struct AcdReport {
    std::vector<double> step_means;  // arithmetic mean per step position
    std::size_t n_words = 0;         // complete series included
    std::size_t n_skipped = 0;       // incomplete series excluded
};

// Mean cosine distance per step over all complete series.
AcdReport acd(const std::vector<ChangeSeries>& records);

// Elementwise genuine - shuffled; larger = less noisy model.
std::vector<double> true_change(const AcdReport& genuine, const AcdReport& shuffled);

// 1-based argmax, ties broken toward the earliest index.
int peak_position(const ChangeSeries& series);

enum class PeakClass { changed, stable };

std::string to_string(PeakClass c);

// changed iff 2 <= pos <= series_len - 1.
PeakClass classify_peak(int pos, int series_len);

struct LabeledPrediction {
    std::string word;
    std::string gold_class;  // change_related | change_unrelated | stable
    PeakClass predicted = PeakClass::stable;
};

struct ClassificationReport {
    std::size_t n_stable = 0, n_unrelated = 0, n_related = 0;
    std::size_t correct_stable = 0, correct_unrelated = 0, correct_related = 0;
    double stable_accuracy = 0.0;
    double unrelated_accuracy = 0.0;
    double related_accuracy = 0.0;
    double mean_accuracy_word_weighted = 0.0;  // confusion trace / total words
    double mean_accuracy_class_unweighted = 0.0;
    double f1_change = 0.0;  // change is the positive class
};

ClassificationReport score(const std::vector<LabeledPrediction>& predictions);

struct WelchResult {
    double t = 0.0;
    double df = 0.0;
    double p = 1.0;  // two-sided
};

// Welch's unequal-variance t statistic with Welch-Satterthwaite degrees of
// freedom; requires each group size >= 2 and variance in at least one group.
WelchResult welch_t_test(std::span<const double> group_a, std::span<const double> group_b);

// round((changed - stable) / stable * 100), half away from zero.
int diff_percent(double changed_acd, double stable_acd);

// Distance distribution per step position: fixed bin width 0.02 over [0, 2].
struct DistanceHistogram {
    int step = 0;  // 1-based
    std::vector<std::size_t> counts;
    double mean = 0.0;
    std::size_t n = 0;
};

inline constexpr double kDistanceHistogramWidth = 0.02;
inline constexpr std::size_t kDistanceHistogramBins = 100;

std::vector<DistanceHistogram> distance_histograms(const std::vector<ChangeSeries>& records);

// Peak-position counts split by gold class.
struct PeakHistogram {
    std::string gold_class;
    std::vector<std::size_t> counts;  // index 0 = position 1
};

std::vector<PeakHistogram> peak_histograms(
    const std::vector<std::pair<std::string, int>>& class_and_peak, int series_len);

}  // namespace lscd

#endif
