#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "ponzi/ts_panel.hpp"

namespace ponzi::ts {

constexpr size_t kMeasureCount = 12;
constexpr size_t kTsFeatureCount = kSeriesCount * kMeasureCount;  // 516

/// Measure-name suffixes in canonical order; time-series feature columns are
/// `<series>__<measure>`, series-major.
const std::array<std::string, kMeasureCount>& measure_names();
std::vector<std::string> ts_feature_names();

struct MeasureSet {
    double mean = 0, var = 0, acf1 = 0, linearity = 0, curvature = 0, trend = 0;
    double season = 0, entropy = 0, lumpiness = 0, spikiness = 0, fspots = 0, cpoints = 0;

    std::array<double, kMeasureCount> as_array() const {
        return {mean, var,     acf1,      linearity, curvature, trend,
                season, entropy, lumpiness, spikiness, fspots,    cpoints};
    }
};

/// Additive decomposition x = trend + seasonal + remainder used by the
/// strength, spikiness and lumpiness measures. With period >= 2 and
/// N >= 2*period the trend is a centered moving average (odd window of
/// length period, rounded up; shrinking at the edges) and the seasonal
/// component is the mean-centered period-mean of the detrended series.
/// Otherwise the seasonal part is zero and the trend window is
/// min(N, 2*period+1) forced odd.
struct Decomposition {
    std::vector<double> trend;
    std::vector<double> seasonal;
    std::vector<double> remainder;
    bool seasonal_path = false;
};

Decomposition decompose(const std::vector<double>& x, int period);

std::pair<double, double> mean_var(const std::vector<double>& x);
double acf1(const std::vector<double>& x);
std::pair<double, double> linearity_curvature(const std::vector<double>& x);
/// Variance-ratio strengths: trend = max(0, 1 - Var(R)/Var(T+R)),
/// season = max(0, 1 - Var(R)/Var(S+R)); zero-variance denominators give 0.
std::pair<double, double> stl_strengths(const std::vector<double>& x, int period);
/// Shannon entropy of the normalized periodogram (DC excluded) over log(#bins).
/// Zero off-DC power (constant series) gives 1; a single bin gives 0.
double spectral_entropy(const std::vector<double>& x);
/// Variance of per-window variances of the standardized input over
/// non-overlapping windows; fewer than two windows or zero sd give 0.
double lumpiness(const std::vector<double>& x, size_t width = 10);
/// Variance of leave-one-out variances of the decomposition remainder.
double spikiness(const std::vector<double>& x, int period);
/// Longest run within one of ten equal-width value bins.
double flat_spots(const std::vector<double>& x);
/// Number of strict sign changes of x - mean; exact hits keep the prior sign.
double crossing_points(const std::vector<double>& x);

MeasureSet measures_for_series(const std::vector<double>& x, int period);

/// Seasonal period for an interval length: intervals per week, at least 2.
int period_for_interval(int t_hours);

/// 516 values, series-major measure-minor, finite for any finite panel.
std::vector<double> compress_panel(const TimeSeriesPanel& panel, int period);

/// Discrete Fourier transform of a real series (Bluestein for arbitrary N).
std::vector<std::complex<double>> dft_real(const std::vector<double>& x);

}  // namespace ponzi::ts
