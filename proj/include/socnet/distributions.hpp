#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "socnet/node_metrics.hpp"
#include "socnet/parallel.hpp"
#include "socnet/sampling.hpp"

namespace socnet {

inline constexpr std::size_t kBinCount = 101;

/// Bin k holds the values that round half-up to k / 100.
struct BinnedDistribution {
    Metric metric = Metric::Degree;
    std::array<std::uint64_t, kBinCount> bins{};
    std::uint64_t total = 0;
};

using AverageDistribution = std::array<double, kBinCount>;

/// round(100 v) with halves rounded up, for v in [0, 1]. A 1e-9 slack absorbs
/// binary representation error so that e.g. 0.145 lands in bin 15.
std::size_t bin_index(double v);

/// Throws InvalidArgument for a raw vector.
BinnedDistribution bin_distribution(const MetricVector& m);

/// Per-bin arithmetic mean. Throws for an empty list or mixed metrics.
AverageDistribution average_distribution(std::span<const BinnedDistribution> ds);

/// Pearson product-moment correlation of two equally long vectors.
/// Throws ComputeError("degenerate distribution") when either has zero variance.
double pearson_correlation(std::span<const double> x, std::span<const double> y);

std::array<double, kBinCount> as_reals(const BinnedDistribution& d);

struct RobustnessReport {
    Metric metric = Metric::Degree;
    double threshold = 0.9;
    std::vector<BinnedDistribution> per_sample;
    AverageDistribution average{};
    std::vector<double> correlations;
    /// Sample indices whose correlation with the average is below threshold.
    std::vector<std::size_t> flagged;
};

/// Normalized metric on every sample, binned, averaged and correlated against
/// the average. Errors carry the failing sample index.
RobustnessReport robustness_report(const SampleRun& run, Metric metric, double threshold, Workers workers = {});

/// Same, from distributions computed elsewhere.
RobustnessReport robustness_report(std::vector<BinnedDistribution> per_sample, Metric metric, double threshold);

struct TrimPolicy {
    /// Leading and trailing bins with a count below this are cut.
    double min_count = 1.0;
};

/// Presentation slice of a distribution; the source data is untouched.
struct TrimmedBins {
    std::size_t first_bin = 0;
    std::vector<double> counts;
    std::optional<std::string> warning;

    bool empty() const noexcept { return counts.empty(); }
};

TrimmedBins trim_bins(std::span<const double> bins, TrimPolicy policy = {});

/// Whether presentation output trims this metric's extreme bins.
bool trimmed_in_reports(Metric m);

} // namespace socnet
