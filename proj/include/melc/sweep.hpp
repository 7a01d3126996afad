#ifndef MELC_SWEEP_HPP
#define MELC_SWEEP_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "melc/geometry.hpp"
#include "melc/kde.hpp"
#include "melc/objectives.hpp"
#include "melc/parallel.hpp"
#include "melc/risk.hpp"

namespace melc {

/// Every objective of one direction in the plane.
struct SweepRecord {
  double angle;
  UnitDirection direction;
  double cip;
  double h2x;
  double dcs;
  double hinge;
  double hinge_bias;
  double linear01;
  double overlap;
  double eaa_risk;
};

struct AnglePoint {
  double angle;
  UnitDirection direction;
};

/// Angles k * pi / n, k = 0 .. n-1. Half a turn covers every classifier since v
/// and -v are equivalent.
inline std::vector<AnglePoint> angle_grid(std::size_t n)
{
  if (n < 2)
    throw Error("angle grid needs at least two angles");
  std::vector<AnglePoint> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double a = std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    out.push_back({a, UnitDirection::from_angle(a)});
  }
  return out;
}

enum class SweepMode {
  full,               // every SweepRecord field
  cross_entropy_only  // cip and h2x only; other fields are NaN
};

struct SweepOptions {
  std::size_t grid_points = default_grid_points;
  std::optional<BandwidthPair> bandwidths;
  SumMethod sum_method = SumMethod::automatic;
  SweepMode mode = SweepMode::full;
  unsigned threads = 0;
};

inline SweepRecord evaluate_direction(const LabeledDataset& data, const AnglePoint& at,
                                      const SweepOptions& options = {})
{
  const double nan = std::numeric_limits<double>::quiet_NaN();
  auto classes = project(data, at.direction);
  SweepRecord r{at.angle, at.direction, nan, nan, nan, nan, nan, nan, nan, nan};
  if (options.mode == SweepMode::full) {
    const auto fit = best_bias_hinge(classes.minus, classes.plus);
    r.hinge = fit.loss;
    r.hinge_bias = fit.bias;
    r.linear01 = best_single_threshold_error(classes.minus, classes.plus);
  }
  const auto pair = make_projected_pair(std::move(classes), options.bandwidths);
  r.h2x = renyi_cross_entropy(pair, options.sum_method);
  r.cip = std::exp(-r.h2x);
  if (options.mode == SweepMode::full) {
    r.dcs = 2.0 * r.h2x - renyi_entropy(pair.minus, options.sum_method) -
            renyi_entropy(pair.plus, options.sum_method);
    const auto risk = eaa_bayes_risk(pair, options.grid_points);
    r.overlap = risk.overlap;
    r.eaa_risk = risk.eaa_risk;
  }
  return r;
}

/// One record per angle of angle_grid(n), ordered by angle index.
inline std::vector<SweepRecord> sweep(const LabeledDataset& data, std::size_t n,
                                      const SweepOptions& options = {})
{
  if (data.dim() != 2)
    throw Error("sweep needs two-dimensional data");
  data.require_both_classes();
  if (!options.bandwidths && (data.count(-1) < 2 || data.count(1) < 2))
    throw Error("degenerate bandwidth");
  const auto angles = angle_grid(n);
  std::vector<std::optional<SweepRecord>> slots(angles.size());
  parallel_for(
      angles.size(), [&](std::size_t k) { slots[k] = evaluate_direction(data, angles[k], options); },
      options.threads);
  std::vector<SweepRecord> out;
  out.reserve(slots.size());
  for (auto& s : slots)
    out.push_back(std::move(*s));
  return out;
}

enum class Objective { cip, h2x, dcs, hinge, linear01, overlap, eaa_risk };

inline double field(const SweepRecord& r, Objective o)
{
  switch (o) {
  case Objective::cip: return r.cip;
  case Objective::h2x: return r.h2x;
  case Objective::dcs: return r.dcs;
  case Objective::hinge: return r.hinge;
  case Objective::linear01: return r.linear01;
  case Objective::overlap: return r.overlap;
  case Objective::eaa_risk: return r.eaa_risk;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

/// Extremal record; ties go to the smallest angle.
inline const SweepRecord& select_best(std::span<const SweepRecord> records, Objective o, bool minimize)
{
  if (records.empty())
    throw Error("select_best on an empty sweep");
  std::size_t best = 0;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const double v = field(records[i], o);
    const double b = field(records[best], o);
    const bool better = minimize ? v < b : v > b;
    if (better || (v == b && records[i].angle < records[best].angle))
      best = i;
  }
  return records[best];
}

/// (chosen - best) / best.
inline double relative_error(double chosen_value, double best_value)
{
  if (!(best_value > 0.0))
    throw Error("zero Bayes risk: relative error undefined");
  return (chosen_value - best_value) / best_value;
}

/// Reference risks at or below this count as zero (separable data).
inline constexpr double zero_risk_tolerance = 1e-9;

// One row of the hinge-vs-MELC comparison. When the reference risk is zero the
// relative error is undefined; the E column then holds the absolute gap and the
// matching *_separable flag is set.
struct ComparisonRow {
  std::string dataset;
  double e_hinge;
  double cos_hinge;
  bool hinge_separable;
  double e_melc;
  double cos_melc;
  bool melc_separable;
  double hinge_angle;
  double linear01_angle;
  double melc_angle;
  double eaa_angle;
};

inline ComparisonRow compare_records(std::span<const SweepRecord> records, std::string name)
{
  const auto& hinge = select_best(records, Objective::hinge, true);
  const auto& linear = select_best(records, Objective::linear01, true);
  const auto& melc = select_best(records, Objective::h2x, false);
  const auto& bayes = select_best(records, Objective::eaa_risk, true);

  ComparisonRow row{};
  row.dataset = std::move(name);
  row.hinge_separable = !(linear.linear01 > 0.0);
  row.e_hinge = row.hinge_separable ? hinge.linear01 - linear.linear01
                                    : relative_error(hinge.linear01, linear.linear01);
  row.cos_hinge = cosine_alignment(hinge.direction, linear.direction);
  row.melc_separable = !(bayes.eaa_risk > zero_risk_tolerance);
  row.e_melc = row.melc_separable ? melc.eaa_risk - bayes.eaa_risk
                                  : relative_error(melc.eaa_risk, bayes.eaa_risk);
  row.cos_melc = cosine_alignment(melc.direction, bayes.direction);
  row.hinge_angle = hinge.angle;
  row.linear01_angle = linear.angle;
  row.melc_angle = melc.angle;
  row.eaa_angle = bayes.angle;
  return row;
}

inline ComparisonRow compare(const LabeledDataset& data, std::string name, std::size_t n,
                             SweepOptions options = {})
{
  options.mode = SweepMode::full;
  const auto records = sweep(data, n, options);
  return compare_records(records, std::move(name));
}

} // namespace melc

#endif
