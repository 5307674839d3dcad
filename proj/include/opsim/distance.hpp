#pragma once

#include <string>

#include "opsim/histogram.hpp"

namespace opsim {

// Minkowski-form metric of order r. With apply_root unset the sum of
// |x_i - y_i|^r is returned as-is, so r=2 yields the squared form.
struct MetricConfig {
    int order = 1;
    bool apply_root = false;

    static MetricConfig manhattan() { return {1, false}; }
    static MetricConfig euclidean(bool root = false) { return {2, root}; }
    static MetricConfig minkowski(int r, bool root = false) { return {r, root}; }

    // "manhattan", "euclidean" or "minkowski:<r>".
    std::string name() const;

    bool operator==(const MetricConfig&) const = default;
};

// Parses a metric name as accepted by the CLI. Throws Error on junk.
MetricConfig metric_from_name(const std::string& name, bool apply_root = false);

// Sum over the union of bins of |x_i - y_i|^r, with the r-th root applied
// when the config says so. Missing bins read as zero; iteration runs over
// the sorted key union with compensated accumulation, so the result does
// not depend on how the histograms were built up.
// Throws NonNormalizedInput when either histogram is still raw.
double minkowski_distance(const OpcodeHistogram& x, const OpcodeHistogram& y,
                          const MetricConfig& cfg);

// Minkowski with r=1. For normalized inputs the result lies in [0, 2].
double manhattan(const OpcodeHistogram& x, const OpcodeHistogram& y);

// Minkowski with r=2, squared form by default.
double euclidean(const OpcodeHistogram& x, const OpcodeHistogram& y, bool apply_root = false);

namespace detail {

// Kahan compensated accumulator.
class KahanSum {
public:
    void add(double v) {
        double y = v - compensation_;
        double t = sum_ + y;
        compensation_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

}  // namespace detail

}  // namespace opsim
