#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "slice_set.hpp"

namespace eonsim {

// Per-run means of the hourly measurements.  A field is absent when no
// hour produced data for it (e.g. no reconfiguration succeeded all run).
struct RunReport {
  std::optional<double> p_establish;
  std::optional<double> est_length_km;
  std::optional<double> est_width;
  std::optional<double> p_reconfigure;
  std::optional<double> new_links;
  std::optional<double> reused_links;
  std::optional<double> all_links;
  std::optional<double> rec_length_km;
  std::optional<double> rec_width;
  std::optional<double> utilization;
  std::optional<double> active_connections;
  std::optional<double> capacity_served;

  std::uint64_t seed = 0;
  std::uint64_t config_digest = 0;

  bool operator==(const RunReport&) const = default;
};

struct MetricField {
  const char* name;
  std::optional<double> RunReport::*field;
};

inline constexpr std::array<MetricField, 12> kMetricFields{{
    {"p_establish", &RunReport::p_establish},
    {"est_length_km", &RunReport::est_length_km},
    {"est_width", &RunReport::est_width},
    {"p_reconfigure", &RunReport::p_reconfigure},
    {"new_links", &RunReport::new_links},
    {"reused_links", &RunReport::reused_links},
    {"all_links", &RunReport::all_links},
    {"rec_length_km", &RunReport::rec_length_km},
    {"rec_width", &RunReport::rec_width},
    {"utilization", &RunReport::utilization},
    {"active_connections", &RunReport::active_connections},
    {"capacity_served", &RunReport::capacity_served},
}};

struct MetricAggregate {
  int n = 0;                  // reports that carried the metric
  std::optional<double> mean;
  std::optional<double> se;   // needs n >= 2
  std::optional<double> rse;  // needs se and a nonzero mean
};

struct PopulationStats {
  std::array<MetricAggregate, kMetricFields.size()> metrics;

  const MetricAggregate& operator[](std::size_t i) const { return metrics[i]; }
};

// Unbiased sample mean, standard error and relative standard error per
// metric over the reports of one population.
inline PopulationStats population_mean(std::span<const RunReport> reports) {
  if (reports.size() < 2)
    throw std::invalid_argument("population_mean: need at least two reports");
  PopulationStats out;
  for (std::size_t m = 0; m < kMetricFields.size(); ++m) {
    MetricAggregate& agg = out.metrics[m];
    double sum = 0;
    for (const RunReport& r : reports)
      if (auto v = r.*(kMetricFields[m].field)) {
        sum += *v;
        ++agg.n;
      }
    if (agg.n == 0) continue;
    double mean = sum / agg.n;
    agg.mean = mean;
    if (agg.n >= 2) {
      double ss = 0;
      for (const RunReport& r : reports)
        if (auto v = r.*(kMetricFields[m].field)) ss += (*v - mean) * (*v - mean);
      double se = std::sqrt(ss / (agg.n - 1) / agg.n);
      agg.se = se;
      if (mean != 0) agg.rse = se / std::abs(mean);
    }
  }
  return out;
}

}  // namespace eonsim
