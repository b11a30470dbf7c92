#pragma once

#include <array>
#include <string>
#include <vector>

#include "ponzi/types.hpp"

namespace ponzi::ts {

constexpr size_t kSeriesCount = 43;

/// Names of the 43 interval series, canonical order.
const std::array<std::string, kSeriesCount>& series_names();
int series_index(const std::string& name);

/// Lifetime partition: N = ceil(lifetime / T), interval i covers
/// [created_at + i*T, created_at + (i+1)*T).
struct IntervalSpec {
    int t_hours = 24;  // one of 12, 24, 48
    size_t n = 1;
};

IntervalSpec make_interval_spec(const ApplicationRecord& app, int t_hours);

/// Maps each transaction to its interval index in [0, N). The closing
/// timestamp of an exact-multiple lifetime folds into the last interval.
std::vector<size_t> assign_intervals(const ApplicationRecord& app, int t_hours);

struct TimeSeriesPanel {
    std::string address;
    IntervalSpec spec;
    // series[s][i] = value of series s in interval i
    std::array<std::vector<double>, kSeriesCount> series;
    bool negative_balance_warning = false;

    const std::vector<double>& at(const std::string& name) const;
};

/// Materializes all 43 series. Counts and sums are interval-local with empty
/// intervals contributing zero; balance carries forward. Unique-style series
/// count distinct values within each interval independently.
TimeSeriesPanel build_panel(const ApplicationRecord& app, int t_hours);

void write_panel_csv(const TimeSeriesPanel& panel, const std::string& path);

}  // namespace ponzi::ts
