#include "socnet/distributions.hpp"

#include <algorithm>
#include <cmath>

#include "socnet/error.hpp"

namespace socnet {

std::size_t bin_index(double v) {
    const double scaled = std::floor(v * 100.0 + 0.5 + 1e-9);
    return static_cast<std::size_t>(std::clamp(scaled, 0.0, 100.0));
}

BinnedDistribution bin_distribution(const MetricVector& m) {
    if (m.scale != Scale::Normalized01) throw InvalidArgument("binning needs a normalized metric vector");
    BinnedDistribution d;
    d.metric = m.metric;
    for (double v : m.values) ++d.bins[bin_index(v)];
    d.total = m.values.size();
    return d;
}

AverageDistribution average_distribution(std::span<const BinnedDistribution> ds) {
    if (ds.empty()) throw InvalidArgument("no distributions to average");
    std::array<std::uint64_t, kBinCount> sums{};
    for (const auto& d : ds) {
        if (d.metric != ds.front().metric) throw InvalidArgument("cannot average distributions of different metrics");
        for (std::size_t k = 0; k < kBinCount; ++k) sums[k] += d.bins[k];
    }
    // Integer sums make the mean independent of sample order.
    AverageDistribution avg{};
    for (std::size_t k = 0; k < kBinCount; ++k)
        avg[k] = static_cast<double>(sums[k]) / static_cast<double>(ds.size());
    return avg;
}

double pearson_correlation(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw InvalidArgument("correlation inputs differ in length");
    if (x.size() < 2) throw InvalidArgument("correlation needs at least two points");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw ComputeError("degenerate distribution");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::array<double, kBinCount> as_reals(const BinnedDistribution& d) {
    std::array<double, kBinCount> out{};
    for (std::size_t k = 0; k < kBinCount; ++k) out[k] = static_cast<double>(d.bins[k]);
    return out;
}

RobustnessReport robustness_report(std::vector<BinnedDistribution> per_sample, Metric metric, double threshold) {
    if (per_sample.empty()) throw InvalidArgument("empty sample run");
    RobustnessReport r;
    r.metric = metric;
    r.threshold = threshold;
    r.average = average_distribution(per_sample);
    r.correlations.reserve(per_sample.size());
    for (std::size_t i = 0; i < per_sample.size(); ++i) {
        const auto bins = as_reals(per_sample[i]);
        double c = 0.0;
        try {
            c = pearson_correlation(bins, r.average);
        } catch (const ComputeError& e) {
            throw ComputeError(std::string(to_string(metric)) + ", sample " + std::to_string(i) + ": " + e.what());
        }
        r.correlations.push_back(c);
        if (c < threshold) r.flagged.push_back(i);
    }
    r.per_sample = std::move(per_sample);
    return r;
}

RobustnessReport robustness_report(const SampleRun& run, Metric metric, double threshold, Workers workers) {
    if (run.samples.empty()) throw InvalidArgument("empty sample run");
    std::vector<BinnedDistribution> dists(run.samples.size());
    for (std::size_t i = 0; i < run.samples.size(); ++i) {
        try {
            dists[i] = bin_distribution(compute_normalized_metric(run.samples[i].graph, metric, workers));
        } catch (const Error& e) {
            throw ComputeError(std::string(to_string(metric)) + ", sample " + std::to_string(i) + ": " + e.what());
        }
    }
    return robustness_report(std::move(dists), metric, threshold);
}

TrimmedBins trim_bins(std::span<const double> bins, TrimPolicy policy) {
    TrimmedBins out;
    auto keep = [&](double c) { return c >= policy.min_count; };
    const auto first = std::find_if(bins.begin(), bins.end(), keep);
    if (first == bins.end()) {
        out.warning = "every bin is below the trim threshold";
        return out;
    }
    const auto last = std::find_if(bins.rbegin(), bins.rend(), keep).base();
    out.first_bin = static_cast<std::size_t>(first - bins.begin());
    out.counts.assign(first, last);
    return out;
}

bool trimmed_in_reports(Metric m) {
    return m == Metric::Degree || m == Metric::Strength || m == Metric::Betweenness || m == Metric::Closeness;
}

} // namespace socnet
