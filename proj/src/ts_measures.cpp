#include "ponzi/ts_measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ponzi::ts {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double mean_of(const std::vector<double>& x) {
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double pop_var(const std::vector<double>& x) {
    if (x.size() < 2) return 0.0;
    const double m = mean_of(x);
    double acc = 0.0;
    for (double v : x) acc += (v - m) * (v - m);
    return acc / static_cast<double>(x.size());
}

// Centered moving average with the window shrinking symmetrically-as-possible
// at the edges; window must be odd.
std::vector<double> centered_ma(const std::vector<double>& x, size_t window) {
    const size_t n = x.size();
    const size_t half = window / 2;
    std::vector<double> out(n);
    for (size_t i = 0; i < n; ++i) {
        const size_t lo = i >= half ? i - half : 0;
        const size_t hi = std::min(n - 1, i + half);
        double sum = 0.0;
        for (size_t j = lo; j <= hi; ++j) sum += x[j];
        out[i] = sum / static_cast<double>(hi - lo + 1);
    }
    return out;
}

size_t force_odd(size_t w) { return w % 2 == 0 ? (w > 1 ? w - 1 : 1) : w; }

// in-place iterative radix-2 FFT
void fft_pow2(std::vector<std::complex<double>>& a, bool inverse) {
    const size_t n = a.size();
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? kTwoPi : -kTwoPi) / static_cast<double>(len);
        const std::complex<double> w_len(std::cos(ang), std::sin(ang));
        for (size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (size_t j = 0; j < len / 2; ++j) {
                const auto u = a[i + j];
                const auto v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= w_len;
            }
        }
    }
    if (inverse)
        for (auto& v : a) v /= static_cast<double>(n);
}

}  // namespace

const std::array<std::string, kMeasureCount>& measure_names() {
    static const std::array<std::string, kMeasureCount> names = {
        "mean",   "var",     "acf1",      "linearity", "curvature", "trend",
        "season", "entropy", "lumpiness", "spikiness", "fspots",    "cpoints"};
    return names;
}

std::vector<std::string> ts_feature_names() {
    std::vector<std::string> out;
    out.reserve(kTsFeatureCount);
    for (const auto& series : series_names())
        for (const auto& measure : measure_names()) out.push_back(series + "__" + measure);
    return out;
}

std::vector<std::complex<double>> dft_real(const std::vector<double>& x) {
    const size_t n = x.size();
    std::vector<std::complex<double>> out(n);
    if (n == 0) return out;
    if ((n & (n - 1)) == 0) {
        for (size_t i = 0; i < n; ++i) out[i] = {x[i], 0.0};
        fft_pow2(out, false);
        return out;
    }
    // Bluestein chirp-z: X_k = b*_k (a conv b), a_j = x_j b*_j, b_j = e^{i pi j^2 / n}
    size_t m = 1;
    while (m < 2 * n + 1) m <<= 1;
    std::vector<std::complex<double>> a(m), b(m);
    std::vector<std::complex<double>> chirp(n);
    for (size_t j = 0; j < n; ++j) {
        // j^2 mod 2n keeps the phase argument small
        const double ang = M_PI * static_cast<double>((j * j) % (2 * n)) / static_cast<double>(n);
        chirp[j] = {std::cos(ang), std::sin(ang)};
    }
    for (size_t j = 0; j < n; ++j) a[j] = x[j] * std::conj(chirp[j]);
    b[0] = chirp[0];
    for (size_t j = 1; j < n; ++j) b[j] = b[m - j] = chirp[j];
    fft_pow2(a, false);
    fft_pow2(b, false);
    for (size_t j = 0; j < m; ++j) a[j] *= b[j];
    fft_pow2(a, true);
    for (size_t k = 0; k < n; ++k) out[k] = std::conj(chirp[k]) * a[k];
    return out;
}

std::pair<double, double> mean_var(const std::vector<double>& x) {
    if (x.empty()) throw std::invalid_argument("mean_var: empty series");
    return {mean_of(x), pop_var(x)};
}

double acf1(const std::vector<double>& x) {
    if (x.size() < 2) return 0.0;
    const double m = mean_of(x);
    double denom = 0.0, numer = 0.0;
    for (size_t t = 0; t < x.size(); ++t) {
        denom += (x[t] - m) * (x[t] - m);
        if (t + 1 < x.size()) numer += (x[t] - m) * (x[t + 1] - m);
    }
    if (denom <= 0.0) return 0.0;
    return numer / denom;
}

std::pair<double, double> linearity_curvature(const std::vector<double>& x) {
    const size_t n = x.size();
    if (n < 3) return {0.0, 0.0};
    // Gram-Schmidt orthonormal basis from {1, t, t^2}, t = 1..N
    std::vector<double> p1(n), p2(n);
    const double tbar = (static_cast<double>(n) + 1.0) / 2.0;
    double norm1 = 0.0;
    for (size_t i = 0; i < n; ++i) {
        p1[i] = (static_cast<double>(i) + 1.0) - tbar;
        norm1 += p1[i] * p1[i];
    }
    norm1 = std::sqrt(norm1);
    for (auto& v : p1) v /= norm1;

    double q_mean = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) + 1.0;
        p2[i] = t * t;
        q_mean += p2[i];
    }
    q_mean /= static_cast<double>(n);
    double proj1 = 0.0;
    for (size_t i = 0; i < n; ++i) proj1 += (p2[i] - q_mean) * p1[i];
    double norm2 = 0.0;
    for (size_t i = 0; i < n; ++i) {
        p2[i] = p2[i] - q_mean - proj1 * p1[i];
        norm2 += p2[i] * p2[i];
    }
    norm2 = std::sqrt(norm2);
    if (norm2 > 0.0)
        for (auto& v : p2) v /= norm2;

    double lin = 0.0, curv = 0.0;
    for (size_t i = 0; i < n; ++i) {
        lin += x[i] * p1[i];
        curv += x[i] * p2[i];
    }
    return {lin, curv};
}

Decomposition decompose(const std::vector<double>& x, int period) {
    const size_t n = x.size();
    Decomposition d;
    d.seasonal.assign(n, 0.0);
    const size_t p = period > 0 ? static_cast<size_t>(period) : 0;
    if (p >= 2 && n >= 2 * p) {
        d.seasonal_path = true;
        d.trend = centered_ma(x, force_odd(p % 2 == 0 ? p + 1 : p));
        std::vector<double> season_mean(p, 0.0);
        std::vector<size_t> season_count(p, 0);
        for (size_t i = 0; i < n; ++i) {
            season_mean[i % p] += x[i] - d.trend[i];
            ++season_count[i % p];
        }
        double overall = 0.0;
        for (size_t s = 0; s < p; ++s) {
            season_mean[s] /= static_cast<double>(season_count[s]);
            overall += season_mean[s];
        }
        overall /= static_cast<double>(p);
        for (size_t i = 0; i < n; ++i) d.seasonal[i] = season_mean[i % p] - overall;
    } else {
        const size_t w = force_odd(std::min(n, 2 * p + 1));
        d.trend = centered_ma(x, std::max<size_t>(1, w));
    }
    d.remainder.resize(n);
    for (size_t i = 0; i < n; ++i) d.remainder[i] = x[i] - d.trend[i] - d.seasonal[i];
    return d;
}

std::pair<double, double> stl_strengths(const std::vector<double>& x, int period) {
    if (x.size() < 3) return {0.0, 0.0};
    const Decomposition d = decompose(x, period);
    const double var_r = pop_var(d.remainder);
    std::vector<double> detrended(x.size()), deseasoned(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
        deseasoned[i] = d.trend[i] + d.remainder[i];
        detrended[i] = d.seasonal[i] + d.remainder[i];
    }
    const double var_deseason = pop_var(deseasoned);
    const double var_detrend = pop_var(detrended);
    const double trend = var_deseason <= 0.0 ? 0.0 : std::max(0.0, 1.0 - var_r / var_deseason);
    double season = 0.0;
    if (d.seasonal_path && var_detrend > 0.0) season = std::max(0.0, 1.0 - var_r / var_detrend);
    return {trend, season};
}

double spectral_entropy(const std::vector<double>& x) {
    const size_t n = x.size();
    if (n < 2) return 1.0;
    const double m = mean_of(x);
    std::vector<double> centered(n);
    for (size_t i = 0; i < n; ++i) centered[i] = x[i] - m;
    const auto spectrum = dft_real(centered);
    const size_t bins = n / 2;  // k = 1 .. floor(N/2)
    double total = 0.0;
    std::vector<double> power(bins);
    for (size_t k = 1; k <= bins; ++k) {
        power[k - 1] = std::norm(spectrum[k]);
        total += power[k - 1];
    }
    if (total <= 0.0) return 1.0;
    if (bins == 1) return 0.0;
    double h = 0.0;
    for (double p : power) {
        if (p <= 0.0) continue;
        const double q = p / total;
        h -= q * std::log(q);
    }
    return std::clamp(h / std::log(static_cast<double>(bins)), 0.0, 1.0);
}

double lumpiness(const std::vector<double>& x, size_t width) {
    const size_t n = x.size();
    if (n < 2 || width == 0) return 0.0;
    const size_t windows = n / width;
    if (windows < 2) return 0.0;
    const double m = mean_of(x);
    const double sd = std::sqrt(pop_var(x));
    if (sd <= 0.0) return 0.0;
    std::vector<double> window_vars(windows);
    for (size_t w = 0; w < windows; ++w) {
        std::vector<double> z(width);
        for (size_t j = 0; j < width; ++j) z[j] = (x[w * width + j] - m) / sd;
        window_vars[w] = pop_var(z);
    }
    return pop_var(window_vars);
}

double spikiness(const std::vector<double>& x, int period) {
    const size_t n = x.size();
    if (n < 4) return 0.0;
    const Decomposition d = decompose(x, period);
    const auto& r = d.remainder;
    double s1 = 0.0, s2 = 0.0;
    for (double v : r) {
        s1 += v;
        s2 += v * v;
    }
    const double m = static_cast<double>(n - 1);
    std::vector<double> loo(n);
    for (size_t j = 0; j < n; ++j) {
        const double mean_j = (s1 - r[j]) / m;
        loo[j] = (s2 - r[j] * r[j]) / m - mean_j * mean_j;
    }
    return pop_var(loo);
}

double flat_spots(const std::vector<double>& x) {
    const size_t n = x.size();
    if (n == 0) throw std::invalid_argument("flat_spots: empty series");
    const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    if (*lo == *hi) return static_cast<double>(n);
    const double span = *hi - *lo;
    size_t best = 1, run = 1;
    int prev_bin = -1;
    for (size_t i = 0; i < n; ++i) {
        const int bin = std::min(9, static_cast<int>((x[i] - *lo) / span * 10.0));
        if (bin == prev_bin) {
            ++run;
        } else {
            run = 1;
            prev_bin = bin;
        }
        best = std::max(best, run);
    }
    return static_cast<double>(best);
}

double crossing_points(const std::vector<double>& x) {
    if (x.size() < 2) return 0.0;
    const double m = mean_of(x);
    int carried = 0;
    size_t crossings = 0;
    for (double v : x) {
        int sign = v > m ? 1 : (v < m ? -1 : carried);
        if (carried != 0 && sign != 0 && sign != carried) ++crossings;
        if (sign != 0) carried = sign;
    }
    return static_cast<double>(crossings);
}

int period_for_interval(int t_hours) {
    const int per_week = (7 * 24 + t_hours - 1) / t_hours;
    return std::max(2, per_week);
}

MeasureSet measures_for_series(const std::vector<double>& x, int period) {
    MeasureSet m;
    if (x.empty()) return m;
    std::tie(m.mean, m.var) = mean_var(x);
    m.acf1 = acf1(x);
    std::tie(m.linearity, m.curvature) = linearity_curvature(x);
    std::tie(m.trend, m.season) = stl_strengths(x, period);
    m.entropy = spectral_entropy(x);
    m.lumpiness = x.size() < 3 ? 0.0 : lumpiness(decompose(x, period).remainder);
    m.spikiness = spikiness(x, period);
    m.fspots = flat_spots(x);
    m.cpoints = crossing_points(x);
    return m;
}

std::vector<double> compress_panel(const TimeSeriesPanel& panel, int period) {
    std::vector<double> out;
    out.reserve(kTsFeatureCount);
    for (const auto& series : panel.series) {
        const MeasureSet m = measures_for_series(series, period);
        for (double v : m.as_array()) out.push_back(std::isfinite(v) ? v : 0.0);
    }
    return out;
}

}  // namespace ponzi::ts
