#ifndef MELC_GEOMETRY_HPP
#define MELC_GEOMETRY_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace melc {

/// Single error type for every failed precondition in the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

using Vector = std::vector<double>;

inline double dot(std::span<const double> a, std::span<const double> b)
{
  if (a.size() != b.size())
    throw Error("dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += a[i] * b[i];
  return s;
}

inline double norm(std::span<const double> a)
{
  return std::sqrt(dot(a, a));
}

// Points with +/-1 labels. Both classes may be empty at construction; two-class
// consumers call require_both_classes().
class LabeledDataset {
public:
  LabeledDataset() = default;

  LabeledDataset(std::vector<Vector> points, std::vector<int> labels)
      : points_(std::move(points)), labels_(std::move(labels))
  {
    if (points_.empty())
      throw Error("dataset must contain at least one point");
    if (points_.size() != labels_.size())
      throw Error("points and labels differ in length");
    dim_ = points_.front().size();
    if (dim_ == 0)
      throw Error("points must have positive dimension");
    for (const auto& p : points_)
      if (p.size() != dim_)
        throw Error("dimension mismatch");
    for (int y : labels_)
      if (y != -1 && y != 1)
        throw Error("labels must be -1 or +1");
  }

  std::size_t size() const noexcept { return points_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  const std::vector<Vector>& points() const noexcept { return points_; }
  const std::vector<int>& labels() const noexcept { return labels_; }
  const Vector& point(std::size_t i) const { return points_.at(i); }
  int label(std::size_t i) const { return labels_.at(i); }

  std::size_t count(int label) const
  {
    return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), label));
  }

  void require_both_classes() const
  {
    if (count(-1) == 0 || count(1) == 0)
      throw Error("empty class");
  }

private:
  std::vector<Vector> points_;
  std::vector<int> labels_;
  std::size_t dim_ = 0;
};

class UnitDirection {
public:
  static constexpr double norm_tolerance = 1e-12;

  explicit UnitDirection(Vector components) : components_(std::move(components))
  {
    if (components_.empty())
      throw Error("direction must have positive dimension");
    if (std::abs(norm(components_) - 1.0) > norm_tolerance)
      throw Error("direction is not unit norm");
  }

  static UnitDirection normalized(Vector components)
  {
    const double n = norm(components);
    if (!(n > 0.0) || !std::isfinite(n))
      throw Error("cannot normalize a zero or non-finite vector");
    for (double& c : components)
      c /= n;
    return UnitDirection(std::move(components));
  }

  static UnitDirection from_angle(double radians)
  {
    return UnitDirection({std::cos(radians), std::sin(radians)});
  }

  UnitDirection negated() const
  {
    Vector c = components_;
    for (double& x : c)
      x = -x;
    return UnitDirection(std::move(c));
  }

  std::size_t dim() const noexcept { return components_.size(); }
  const Vector& components() const noexcept { return components_; }
  double operator[](std::size_t i) const { return components_[i]; }

private:
  Vector components_;
};

/// x -> scale * x + offset with scale > 0.
struct AffineMap1d {
  double scale = 1.0;
  double offset = 0.0;

  AffineMap1d() = default;
  AffineMap1d(double s, double o) : scale(s), offset(o)
  {
    if (!(scale > 0.0) || !std::isfinite(scale) || !std::isfinite(offset))
      throw Error("affine map scale must be positive and finite");
  }

  static AffineMap1d identity() { return {}; }

  double apply(double x) const noexcept { return scale * x + offset; }
  double inverse(double y) const noexcept { return (y - offset) / scale; }
  bool is_identity() const noexcept { return scale == 1.0 && offset == 0.0; }
};

struct ProjectedClasses {
  Vector minus;
  Vector plus;
};

inline ProjectedClasses project(const LabeledDataset& data, const UnitDirection& v)
{
  if (data.dim() != v.dim())
    throw Error("dimension mismatch");
  ProjectedClasses out;
  out.minus.reserve(data.count(-1));
  out.plus.reserve(data.count(1));
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double s = dot(data.point(i), v.components());
    (data.label(i) < 0 ? out.minus : out.plus).push_back(s);
  }
  return out;
}

struct RescaledClasses {
  AffineMap1d map;
  Vector minus;
  Vector plus;
};

// Maps [min center - tail_k * sigma_max, max center + tail_k * sigma_max] onto
// [0, 1]. Bandwidths are not touched; scale them by map.scale afterwards.
inline RescaledClasses unit_rescale(std::span<const double> minus, std::span<const double> plus,
                                    double sigma_minus, double sigma_plus, double tail_k)
{
  if (minus.empty() && plus.empty())
    throw Error("unit_rescale needs at least one scalar");
  if (sigma_minus < 0.0 || sigma_plus < 0.0)
    throw Error("bandwidths must be non-negative");
  if (!(tail_k > 0.0))
    throw Error("tail_k must be positive");

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (auto s : {minus, plus})
    for (double c : s) {
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
  const double pad = tail_k * std::max(sigma_minus, sigma_plus);
  lo -= pad;
  hi += pad;
  if (!(hi > lo))
    throw Error("degenerate support");

  const double scale = 1.0 / (hi - lo);
  RescaledClasses out{AffineMap1d(scale, -lo * scale), {}, {}};
  out.minus.reserve(minus.size());
  out.plus.reserve(plus.size());
  // (c - lo) * scale rounds better than scale * c + offset near the endpoints.
  for (double c : minus)
    out.minus.push_back(std::clamp((c - lo) * scale, 0.0, 1.0));
  for (double c : plus)
    out.plus.push_back(std::clamp((c - lo) * scale, 0.0, 1.0));
  return out;
}

/// |<v1, v2>|: v and -v index the same multithreshold family.
inline double cosine_alignment(const UnitDirection& v1, const UnitDirection& v2)
{
  if (v1.dim() != v2.dim())
    throw Error("dimension mismatch");
  return std::min(1.0, std::abs(dot(v1.components(), v2.components())));
}

} // namespace melc

#endif
