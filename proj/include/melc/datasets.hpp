#ifndef MELC_DATASETS_HPP
#define MELC_DATASETS_HPP

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "melc/geometry.hpp"

namespace melc {

// ---------------------------------------------------------------------------
// Synthetic benchmarks
// ---------------------------------------------------------------------------

/// Bumped whenever the sampling procedure changes, so old files stay traceable.
inline constexpr std::string_view generator_version = "melc-gen-1 (mt19937_64, box-muller)";

inline constexpr std::array<std::string_view, 3> dataset_names{"two-gauss", "four-line",
                                                               "four-mixed"};

struct DatasetSpec {
  std::string name;
  std::uint64_t seed = 0;
  std::size_t n_per_component = 200;
};

struct GaussianComponent {
  double mean_x;
  double mean_y;
  double sigma;
  int label;
};

inline std::vector<GaussianComponent> components_for(std::string_view name)
{
  if (name == "two-gauss")
    return {{0.0, 0.0, 1.0, -1}, {2.0, 2.0, 1.0, 1}};
  if (name == "four-line")
    return {{0.0, 0.0, 0.3, -1}, {1.5, 0.0, 0.3, 1}, {3.0, 0.0, 0.3, -1}, {4.5, 0.0, 0.3, 1}};
  if (name == "four-mixed")
    return {{0.0, 0.0, 0.8, -1}, {1.0, 0.5, 0.8, 1}, {0.5, 1.0, 0.8, -1}, {1.5, 1.5, 0.8, 1}};
  std::string valid;
  for (auto n : dataset_names)
    valid += (valid.empty() ? "" : ", ") + std::string(n);
  throw Error("unknown dataset name '" + std::string(name) + "' (valid: " + valid + ")");
}

/// Standard normal pairs by Box-Muller over a 64-bit Mersenne Twister. Both are
/// fully specified, so a seed reproduces the same stream on every platform.
class NormalStream {
public:
  explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on (0, 1].
  double uniform()
  {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  std::array<double, 2> pair()
  {
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double theta = 2.0 * std::numbers::pi * uniform();
    return {r * std::cos(theta), r * std::sin(theta)};
  }

private:
  std::mt19937_64 engine_;
};

/// Components are sampled in order, n_per_component points each.
inline LabeledDataset generate(const DatasetSpec& spec)
{
  const auto comps = components_for(spec.name);
  if (spec.n_per_component < 2)
    throw Error("n_per_component must be at least 2");
  NormalStream rng(spec.seed);
  std::vector<Vector> points;
  std::vector<int> labels;
  points.reserve(comps.size() * spec.n_per_component);
  labels.reserve(comps.size() * spec.n_per_component);
  for (const auto& c : comps)
    for (std::size_t i = 0; i < spec.n_per_component; ++i) {
      const auto z = rng.pair();
      points.push_back({c.mean_x + c.sigma * z[0], c.mean_y + c.sigma * z[1]});
      labels.push_back(c.label);
    }
  return LabeledDataset(std::move(points), std::move(labels));
}

// ---------------------------------------------------------------------------
// Text formats
// ---------------------------------------------------------------------------

namespace detail {

inline std::string_view trim(std::string_view s)
{
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos)
    return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

inline bool parse_double(std::string_view s, double& out)
{
  s = trim(s);
  if (!s.empty() && s.front() == '+')
    s.remove_prefix(1);
  if (s.empty())
    return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

inline std::vector<std::string_view> split(std::string_view s, char sep)
{
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos)
      break;
    start = pos + 1;
  }
  return out;
}

inline std::string format_double(double x)
{
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

inline std::ifstream open_input(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw Error("cannot open '" + path + "'");
  return in;
}

inline std::ofstream open_output(const std::string& path)
{
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw Error("cannot write '" + path + "'");
  return out;
}

inline Error line_error(const std::string& path, std::size_t line, const std::string& what)
{
  return Error(path + ":" + std::to_string(line) + ": " + what);
}

} // namespace detail

// Sparse "<label> <index>:<value> ..." lines with 1-based indices. Labels <= 0
// become -1, labels > 0 become +1; absent features are 0.
inline LabeledDataset read_libsvm(std::istream& in, const std::string& source = "<stream>")
{
  std::vector<std::vector<std::pair<std::size_t, double>>> rows;
  std::vector<int> labels;
  std::size_t dim = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view body = line;
    if (const auto hash = body.find('#'); hash != std::string_view::npos)
      body = body.substr(0, hash);
    body = detail::trim(body);
    if (body.empty())
      continue;

    std::istringstream tokens{std::string(body)};
    std::string tok;
    tokens >> tok;
    double y;
    if (!detail::parse_double(tok, y))
      throw detail::line_error(source, lineno, "bad label '" + tok + "'");
    std::vector<std::pair<std::size_t, double>> row;
    while (tokens >> tok) {
      const auto colon = tok.find(':');
      if (colon == std::string::npos)
        throw detail::line_error(source, lineno, "expected index:value, got '" + tok + "'");
      std::size_t idx = 0;
      const auto* b = tok.data();
      const auto [p, ec] = std::from_chars(b, b + colon, idx);
      double v;
      if (ec != std::errc() || p != b + colon || idx == 0 ||
          !detail::parse_double(std::string_view(tok).substr(colon + 1), v))
        throw detail::line_error(source, lineno, "malformed feature '" + tok + "'");
      row.emplace_back(idx, v);
      dim = std::max(dim, idx);
    }
    rows.push_back(std::move(row));
    labels.push_back(y > 0.0 ? 1 : -1);
  }
  if (rows.empty())
    throw Error(source + ": empty file");
  if (dim == 0)
    throw Error(source + ": no features");

  std::vector<Vector> points(rows.size(), Vector(dim, 0.0));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (const auto& [idx, v] : rows[i])
      points[i][idx - 1] = v;
  return LabeledDataset(std::move(points), std::move(labels));
}

inline LabeledDataset load_libsvm(const std::string& path)
{
  auto in = detail::open_input(path);
  return read_libsvm(in, path);
}

/// Zeros are omitted except the last feature, which pins the dimension on reload.
inline void write_libsvm(std::ostream& out, const LabeledDataset& data)
{
  for (std::size_t i = 0; i < data.size(); ++i) {
    out << (data.label(i) > 0 ? "+1" : "-1");
    const auto& p = data.point(i);
    for (std::size_t j = 0; j < p.size(); ++j)
      if (p[j] != 0.0 || j + 1 == p.size())
        out << ' ' << (j + 1) << ':' << detail::format_double(p[j]);
    out << '\n';
  }
}

inline void save_libsvm(const LabeledDataset& data, const std::string& path)
{
  auto out = detail::open_output(path);
  write_libsvm(out, data);
  if (!out)
    throw Error("failed writing '" + path + "'");
}

// Comma-separated numeric rows. Lines starting with '#' and blank lines are
// skipped; a first row with any non-numeric cell is a header. Labels must be
// -1/+1 or 0/1. label_column < 0 counts from the end (-1 = last column).
inline LabeledDataset read_csv(std::istream& in, long label_column = -1,
                               const std::string& source = "<stream>")
{
  std::vector<Vector> points;
  std::vector<int> labels;
  std::size_t width = 0;
  bool first_row = true;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto body = detail::trim(line);
    if (body.empty() || body.front() == '#')
      continue;
    const auto cells = detail::split(body, ',');
    Vector values(cells.size());
    bool numeric = true;
    for (std::size_t j = 0; j < cells.size() && numeric; ++j)
      numeric = detail::parse_double(cells[j], values[j]);
    if (!numeric) {
      if (first_row) {
        first_row = false;
        continue;
      }
      throw detail::line_error(source, lineno, "non-numeric cell");
    }
    first_row = false;
    if (width == 0) {
      width = cells.size();
      if (width < 2)
        throw detail::line_error(source, lineno, "need at least one feature and a label");
    } else if (cells.size() != width) {
      throw detail::line_error(source, lineno, "ragged row: expected " + std::to_string(width) +
                                                   " cells, got " + std::to_string(cells.size()));
    }
    const long col = label_column < 0 ? static_cast<long>(width) + label_column : label_column;
    if (col < 0 || col >= static_cast<long>(width))
      throw Error(source + ": label column out of range");
    const double y = values[static_cast<std::size_t>(col)];
    int label;
    if (y == 1.0)
      label = 1;
    else if (y == -1.0 || y == 0.0)
      label = -1;
    else
      throw detail::line_error(source, lineno, "label must be -1/+1 or 0/1");
    values.erase(values.begin() + col);
    points.push_back(std::move(values));
    labels.push_back(label);
  }
  if (points.empty())
    throw Error(source + ": empty file");
  return LabeledDataset(std::move(points), std::move(labels));
}

inline LabeledDataset load_csv(const std::string& path, long label_column = -1)
{
  auto in = detail::open_input(path);
  return read_csv(in, label_column, path);
}

/// Features x1..xd then the label; `metadata`, when nonempty, becomes a '#' line.
inline void write_csv(std::ostream& out, const LabeledDataset& data, const std::string& metadata = {})
{
  if (!metadata.empty())
    out << "# " << metadata << '\n';
  for (std::size_t j = 0; j < data.dim(); ++j)
    out << 'x' << (j + 1) << ',';
  out << "label\n";
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (double v : data.point(i))
      out << detail::format_double(v) << ',';
    out << data.label(i) << '\n';
  }
}

inline void save_csv(const LabeledDataset& data, const std::string& path, const std::string& metadata = {})
{
  auto out = detail::open_output(path);
  write_csv(out, data, metadata);
  if (!out)
    throw Error("failed writing '" + path + "'");
}

inline std::string dataset_metadata(const DatasetSpec& spec)
{
  return "name=" + spec.name + " seed=" + std::to_string(spec.seed) +
         " n=" + std::to_string(spec.n_per_component) + " generator=" + std::string(generator_version);
}

/// Files whose first meaningful line looks like "label idx:val" are LIBSVM,
/// everything else CSV.
inline LabeledDataset load_dataset(const std::string& path, long label_column = -1)
{
  auto in = detail::open_input(path);
  std::string line;
  while (std::getline(in, line)) {
    const auto body = detail::trim(line);
    if (body.empty() || body.front() == '#')
      continue;
    if (body.find(':') != std::string_view::npos && body.find(',') == std::string_view::npos)
      return load_libsvm(path);
    break;
  }
  return load_csv(path, label_column);
}

// ---------------------------------------------------------------------------
// Top-2 principal components
// ---------------------------------------------------------------------------

struct PcaResult {
  LabeledDataset embedded;
  UnitDirection first;
  UnitDirection second;
  double first_variance;
  double second_variance;
  Vector mean;
};

inline constexpr double pca_tolerance = 1e-9;
inline constexpr std::size_t pca_max_iterations = 10000;

namespace detail {

using Matrix = std::vector<Vector>;

inline Vector multiply(const Matrix& m, const Vector& v)
{
  Vector out(m.size(), 0.0);
  for (std::size_t i = 0; i < m.size(); ++i)
    out[i] = dot(m[i], v);
  return out;
}

struct EigenPair {
  double value;
  Vector vector;
};

// Power iteration from the column of largest norm. A (numerically) zero matrix
// yields value 0 and an empty vector.
inline EigenPair dominant_eigenpair(const Matrix& m)
{
  const std::size_t d = m.size();
  double scale = 0.0;
  std::size_t start = 0;
  for (std::size_t j = 0; j < d; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i)
      s += m[i][j] * m[i][j];
    if (s > scale) {
      scale = s;
      start = j;
    }
  }
  if (!(scale > 0.0))
    return {0.0, {}};

  Vector v(d);
  for (std::size_t i = 0; i < d; ++i)
    v[i] = m[i][start];
  double n = norm(v);
  for (double& x : v)
    x /= n;

  for (std::size_t it = 0; it < pca_max_iterations; ++it) {
    Vector w = multiply(m, v);
    n = norm(w);
    if (!(n > 0.0))
      return {0.0, {}};
    for (double& x : w)
      x /= n;
    double change = 0.0;
    for (std::size_t i = 0; i < d; ++i)
      change = std::max(change, std::abs(w[i] - v[i]));
    v = std::move(w);
    if (change < pca_tolerance)
      return {dot(v, multiply(m, v)), v};
  }
  throw Error("power iteration did not converge within " + std::to_string(pca_max_iterations) +
              " iterations");
}

// Unit vector orthogonal to `u`, from the first usable standard basis vector.
inline Vector orthogonal_to(const Vector& u)
{
  for (std::size_t k = 0; k < u.size(); ++k) {
    Vector e(u.size(), 0.0);
    e[k] = 1.0;
    const double p = dot(e, u);
    for (std::size_t i = 0; i < u.size(); ++i)
      e[i] -= p * u[i];
    const double n = norm(e);
    if (n > 1e-6) {
      for (double& x : e)
        x /= n;
      return e;
    }
  }
  throw Error("no orthogonal direction");
}

} // namespace detail

/// Project data onto its two leading covariance eigenvectors (power iteration
/// with deflation). Labels are kept.
inline PcaResult pca_top2(const LabeledDataset& data)
{
  const std::size_t d = data.dim();
  if (d < 2)
    throw Error("pca_top2 needs dimension >= 2");
  if (data.size() < 3)
    throw Error("pca_top2 needs at least 3 points");

  const double n = static_cast<double>(data.size());
  Vector mean(d, 0.0);
  for (const auto& p : data.points())
    for (std::size_t j = 0; j < d; ++j)
      mean[j] += p[j];
  for (double& m : mean)
    m /= n;

  detail::Matrix cov(d, Vector(d, 0.0));
  for (const auto& p : data.points())
    for (std::size_t i = 0; i < d; ++i) {
      const double di = p[i] - mean[i];
      for (std::size_t j = i; j < d; ++j)
        cov[i][j] += di * (p[j] - mean[j]);
    }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      cov[i][j] /= n;
      cov[j][i] = cov[i][j];
    }

  auto first = detail::dominant_eigenpair(cov);
  if (first.vector.empty())
    throw Error("pca_top2: zero covariance");

  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      cov[i][j] -= first.value * first.vector[i] * first.vector[j];
  auto second = detail::dominant_eigenpair(cov);
  const double noise = 1e-12 * first.value;
  if (second.vector.empty() || second.value <= noise) {
    second.vector = detail::orthogonal_to(first.vector);
    second.value = std::max(0.0, second.value);
  } else {
    const double p = dot(second.vector, first.vector);
    for (std::size_t i = 0; i < d; ++i)
      second.vector[i] -= p * first.vector[i];
  }

  auto u1 = UnitDirection::normalized(first.vector);
  auto u2 = UnitDirection::normalized(second.vector);
  std::vector<Vector> coords;
  coords.reserve(data.size());
  Vector centered(d);
  for (const auto& p : data.points()) {
    for (std::size_t j = 0; j < d; ++j)
      centered[j] = p[j] - mean[j];
    coords.push_back({dot(centered, u1.components()), dot(centered, u2.components())});
  }
  return {LabeledDataset(std::move(coords), data.labels()), std::move(u1), std::move(u2),
          first.value, second.value, std::move(mean)};
}

} // namespace melc

#endif
