#include "lscd/evaluate.hpp"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>

#include "lscd/error.hpp"

namespace lscd {

AcdReport acd(const std::vector<ChangeSeries>& records) {
    AcdReport report;
    std::size_t len = 0;
    for (const auto& s : records) {
        if (!s.complete()) {
            ++report.n_skipped;
            continue;
        }
        if (report.n_words == 0) {
            len = s.values.size();
            report.step_means.assign(len, 0.0);
        } else if (s.values.size() != len) {
            throw DataError("acd: series of mixed lengths (" + std::to_string(len) + " vs " +
                            std::to_string(s.values.size()) + ")");
        }
        for (std::size_t i = 0; i < len; ++i) report.step_means[i] += s.values[i];
        ++report.n_words;
    }
    if (report.n_words == 0) throw DataError("acd: no complete series");
    for (auto& m : report.step_means) m /= static_cast<double>(report.n_words);
    return report;
}

std::vector<double> true_change(const AcdReport& genuine, const AcdReport& shuffled) {
    if (genuine.step_means.size() != shuffled.step_means.size()) {
        throw DataError("true_change: mismatched step counts");
    }
    std::vector<double> diff(genuine.step_means.size());
    for (std::size_t i = 0; i < diff.size(); ++i) {
        diff[i] = genuine.step_means[i] - shuffled.step_means[i];
    }
    return diff;
}

int peak_position(const ChangeSeries& series) {
    if (!series.complete()) {
        throw DataError("peak_position: incomplete series for '" + series.word + "'");
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < series.values.size(); ++i) {
        if (series.values[i] > series.values[best]) best = i;
    }
    return static_cast<int>(best) + 1;
}

std::string to_string(PeakClass c) { return c == PeakClass::changed ? "changed" : "stable"; }

PeakClass classify_peak(int pos, int series_len) {
    if (pos < 1 || pos > series_len) {
        throw DataError("classify_peak: position " + std::to_string(pos) +
                        " outside series of length " + std::to_string(series_len));
    }
    return (pos >= 2 && pos <= series_len - 1) ? PeakClass::changed : PeakClass::stable;
}

ClassificationReport score(const std::vector<LabeledPrediction>& predictions) {
    ClassificationReport r;
    std::size_t tp = 0, fp = 0, fn = 0;
    for (const auto& p : predictions) {
        bool predicted_change = p.predicted == PeakClass::changed;
        if (p.gold_class == "stable") {
            ++r.n_stable;
            if (!predicted_change) {
                ++r.correct_stable;
            } else {
                ++fp;
            }
        } else if (p.gold_class == "change_unrelated") {
            ++r.n_unrelated;
            predicted_change ? (++r.correct_unrelated, ++tp) : ++fn;
        } else if (p.gold_class == "change_related") {
            ++r.n_related;
            predicted_change ? (++r.correct_related, ++tp) : ++fn;
        } else {
            throw DataError("score: unknown gold class: " + p.gold_class);
        }
    }
    if (r.n_stable == 0 || r.n_unrelated == 0 || r.n_related == 0) {
        throw DataError("score: every class (stable, unrelated, related) needs at least one word");
    }
    r.stable_accuracy = static_cast<double>(r.correct_stable) / static_cast<double>(r.n_stable);
    r.unrelated_accuracy =
        static_cast<double>(r.correct_unrelated) / static_cast<double>(r.n_unrelated);
    r.related_accuracy = static_cast<double>(r.correct_related) / static_cast<double>(r.n_related);
    const std::size_t total = r.n_stable + r.n_unrelated + r.n_related;
    r.mean_accuracy_word_weighted =
        static_cast<double>(r.correct_stable + r.correct_unrelated + r.correct_related) /
        static_cast<double>(total);
    r.mean_accuracy_class_unweighted =
        (r.stable_accuracy + r.unrelated_accuracy + r.related_accuracy) / 3.0;
    double precision = tp + fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
    double recall = tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
    r.f1_change =
        precision + recall > 0.0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
    return r;
}

namespace {

std::pair<double, double> mean_and_variance(std::span<const double> xs) {
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= static_cast<double>(xs.size() - 1);
    return {mean, var};
}

}  // namespace

WelchResult welch_t_test(std::span<const double> group_a, std::span<const double> group_b) {
    if (group_a.size() < 2 || group_b.size() < 2) {
        throw DataError("welch_t_test: each group needs at least 2 observations");
    }
    auto [mean_a, var_a] = mean_and_variance(group_a);
    auto [mean_b, var_b] = mean_and_variance(group_b);
    if (var_a == 0.0 && var_b == 0.0) {
        throw DataError("welch_t_test: both groups have zero variance");
    }
    const double na = static_cast<double>(group_a.size());
    const double nb = static_cast<double>(group_b.size());
    const double sa = var_a / na;
    const double sb = var_b / nb;
    WelchResult result;
    result.t = (mean_a - mean_b) / std::sqrt(sa + sb);
    result.df = (sa + sb) * (sa + sb) / (sa * sa / (na - 1.0) + sb * sb / (nb - 1.0));
    boost::math::students_t dist(result.df);
    result.p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(result.t)));
    return result;
}

int diff_percent(double changed_acd, double stable_acd) {
    if (!(stable_acd > 0.0)) throw NumericError("diff_percent: stable acd must be positive");
    return static_cast<int>(std::lround((changed_acd - stable_acd) / stable_acd * 100.0));
}

std::vector<DistanceHistogram> distance_histograms(const std::vector<ChangeSeries>& records) {
    std::size_t len = 0;
    for (const auto& s : records) {
        if (s.complete()) {
            len = s.values.size();
            break;
        }
    }
    if (len == 0) throw DataError("distance_histograms: no complete series");
    std::vector<DistanceHistogram> out(len);
    for (std::size_t i = 0; i < len; ++i) {
        out[i].step = static_cast<int>(i) + 1;
        out[i].counts.assign(kDistanceHistogramBins, 0);
    }
    for (const auto& s : records) {
        if (!s.complete()) continue;
        if (s.values.size() != len) throw DataError("distance_histograms: mixed series lengths");
        for (std::size_t i = 0; i < len; ++i) {
            double v = s.values[i];
            auto bin = static_cast<std::size_t>(v / kDistanceHistogramWidth);
            if (bin >= kDistanceHistogramBins) bin = kDistanceHistogramBins - 1;
            ++out[i].counts[bin];
            out[i].mean += v;
            ++out[i].n;
        }
    }
    for (auto& h : out) {
        if (h.n > 0) h.mean /= static_cast<double>(h.n);
    }
    return out;
}

std::vector<PeakHistogram> peak_histograms(
    const std::vector<std::pair<std::string, int>>& class_and_peak, int series_len) {
    if (series_len < 1) throw DataError("peak_histograms: series_len must be >= 1");
    std::vector<PeakHistogram> out;
    auto find = [&](const std::string& cls) -> PeakHistogram& {
        for (auto& h : out) {
            if (h.gold_class == cls) return h;
        }
        out.push_back(PeakHistogram{cls, std::vector<std::size_t>(series_len, 0)});
        return out.back();
    };
    for (const auto& [cls, peak] : class_and_peak) {
        if (peak < 1 || peak > series_len) {
            throw DataError("peak_histograms: peak position out of range");
        }
        ++find(cls).counts[peak - 1];
    }
    std::sort(out.begin(), out.end(),
              [](const PeakHistogram& a, const PeakHistogram& b) {
                  return a.gold_class < b.gold_class;
              });
    return out;
}

}  // namespace lscd
