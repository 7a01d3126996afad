#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "melc/melc.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace melc;

std::string fmt(double x)
{
  if (std::isinf(x))
    return x > 0 ? "inf" : "-inf";
  if (std::isnan(x))
    return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// JSON numbers are rounded the same way as the CSV columns.
json jnum(double x)
{
  if (!std::isfinite(x))
    return fmt(x);
  return std::stod(fmt(x));
}

struct Common {
  std::string in;
  std::string out;
  std::size_t angles = 360;
  std::size_t grid = default_grid_points;
  std::vector<double> sigma;
  long label_column = -1;
  bool pca2 = false;
};

void add_common(CLI::App* cmd, Common& c)
{
  cmd->add_option("--angles", c.angles, "number of angles in [0, pi)")->check(CLI::Range(2ul, 10000000ul));
  cmd->add_option("--grid", c.grid, "quadrature grid points")->check(CLI::Range(min_grid_points, 100000000ul));
  cmd->add_option("--sigma", c.sigma, "bandwidth override: one value for both classes, or minus,plus")
      ->delimiter(',')
      ->expected(1, 2)
      ->check(CLI::PositiveNumber);
  cmd->add_option("--label-column", c.label_column, "CSV label column (default: last)");
  cmd->add_flag("--pca2", c.pca2, "embed into the top two principal components first");
}

std::optional<BandwidthPair> bandwidths(const Common& c)
{
  if (c.sigma.empty())
    return std::nullopt;
  return BandwidthPair{c.sigma.front(), c.sigma.back()};
}

LabeledDataset load_2d(const std::string& path, const Common& c)
{
  auto data = load_dataset(path, c.label_column);
  if (c.pca2)
    return pca_top2(data).embedded;
  if (data.dim() != 2)
    throw Error("'" + path + "' has dimension " + std::to_string(data.dim()) + "; use --pca2");
  return data;
}

SweepOptions sweep_options(const Common& c)
{
  SweepOptions o;
  o.grid_points = c.grid;
  o.bandwidths = bandwidths(c);
  return o;
}

std::ofstream open_out(const std::string& path)
{
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw Error("cannot open '" + path + "' for writing");
  return out;
}

json record_json(const SweepRecord& r, std::size_t index)
{
  return {{"index", index}, {"angle_rad", jnum(r.angle)}, {"direction", {jnum(r.direction[0]), jnum(r.direction[1])}}};
}

int cmd_datagen(const std::string& name, std::uint64_t seed, std::size_t n, const std::string& out)
{
  const DatasetSpec spec{name, seed, n};
  save_csv(generate(spec), out, dataset_metadata(spec));
  return 0;
}

int cmd_sweep(const Common& c, std::string summary)
{
  const auto data = load_2d(c.in, c);
  const auto records = sweep(data, c.angles, sweep_options(c));

  auto out = open_out(c.out);
  out << "angle_rad,cip,sqrt_cip,h2x,dcs,hinge,hinge_bias,linear01,overlap,eaa_risk\n";
  for (const auto& r : records)
    out << fmt(r.angle) << ',' << fmt(r.cip) << ',' << fmt(std::sqrt(r.cip)) << ',' << fmt(r.h2x) << ','
        << fmt(r.dcs) << ',' << fmt(r.hinge) << ',' << fmt(r.hinge_bias) << ',' << fmt(r.linear01) << ','
        << fmt(r.overlap) << ',' << fmt(r.eaa_risk) << '\n';

  auto index_of = [&](const SweepRecord& r) { return static_cast<std::size_t>(&r - records.data()); };
  json side;
  side["input"] = c.in;
  side["angles"] = c.angles;
  side["grid_points"] = c.grid;
  side["hinge_bias"] = "optimal";
  const struct {
    const char* key;
    Objective o;
    bool minimize;
  } picks[] = {{"argmin_cip", Objective::cip, true},         {"argmax_h2x", Objective::h2x, false},
               {"argmax_dcs", Objective::dcs, false},        {"argmin_hinge", Objective::hinge, true},
               {"argmin_linear01", Objective::linear01, true}, {"argmin_eaa_risk", Objective::eaa_risk, true}};
  for (const auto& p : picks) {
    const auto& r = select_best(records, p.o, p.minimize);
    auto j = record_json(r, index_of(r));
    j["value"] = jnum(field(r, p.o));
    side[p.key] = j;
  }
  if (summary.empty())
    summary = std::filesystem::path(c.out).replace_extension(".json").string();
  open_out(summary) << side.dump(2) << '\n';
  return 0;
}

int cmd_table(const Common& c, const std::vector<std::string>& inputs)
{
  std::ostringstream table;
  table << "dataset,E_hinge,cos_hinge,hinge_separable,E_melc,cos_melc,melc_separable\n";
  for (const auto& path : inputs) {
    const auto row = compare(load_2d(path, c), std::filesystem::path(path).stem().string(), c.angles,
                             sweep_options(c));
    table << row.dataset << ',' << fmt(row.e_hinge) << ',' << fmt(row.cos_hinge) << ','
          << (row.hinge_separable ? "separable" : "") << ',' << fmt(row.e_melc) << ',' << fmt(row.cos_melc)
          << ',' << (row.melc_separable ? "separable" : "") << '\n';
  }
  if (c.out.empty())
    std::cout << table.str();
  else
    open_out(c.out) << table.str();
  return 0;
}

int cmd_bound_check(const Common& c, double tail_k)
{
  const auto data = load_2d(c.in, c);
  data.require_both_classes();
  const auto bw = bandwidths(c);
  const auto angles = angle_grid(c.angles);
  std::vector<BoundCheck> checks(angles.size(), BoundCheck{0, 0, true, false});
  parallel_for(angles.size(), [&](std::size_t k) {
    const auto unit = rescale_to_unit(make_projected_pair(data, angles[k].direction, bw), tail_k);
    checks[k] = bound_check(unit, c.grid, SumMethod::automatic);
  });

  std::ostringstream report;
  report << "angle_rad,lhs,rhs,slack,holds\n";
  std::size_t violations = 0, separable = 0, min_k = 0;
  double min_slack = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < checks.size(); ++k) {
    const auto& b = checks[k];
    const double slack = b.lhs - b.rhs;
    violations += !b.holds;
    separable += b.separable;
    if (!b.separable && slack < min_slack) {
      min_slack = slack;
      min_k = k;
    }
    report << fmt(angles[k].angle) << ',' << fmt(b.lhs) << ',' << fmt(b.rhs) << ',' << fmt(slack) << ','
           << (b.separable ? "separable" : b.holds ? "true" : "false") << '\n';
  }
  if (!c.out.empty())
    open_out(c.out) << report.str();

  json s;
  s["input"] = c.in;
  s["angles"] = c.angles;
  s["tail_k"] = tail_k;
  s["violations"] = violations;
  s["separable"] = separable;
  if (std::isfinite(min_slack)) {
    s["min_slack"] = jnum(min_slack);
    s["min_slack_angle"] = jnum(angles[min_k].angle);
  }
  std::cout << s.dump(2) << '\n';
  return violations == 0 ? 0 : 1;
}

// Misclassification rate with the empirical class priors.
double plain_error(const MultithresholdModel& model, const LabeledDataset& data)
{
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < data.size(); ++i)
    wrong += model.classify(data.point(i)) != data.label(i);
  return static_cast<double>(wrong) / static_cast<double>(data.size());
}

int cmd_classify(const Common& c, const std::string& train_path, const std::string& test_path,
                 std::string summary)
{
  auto train = load_dataset(train_path, c.label_column);
  auto test = load_dataset(test_path, c.label_column);
  if (c.pca2) {
    // the test set goes through the training basis
    auto pca = pca_top2(train);
    if (test.dim() != train.dim())
      throw Error("dimension mismatch");
    std::vector<Vector> coords;
    Vector centered(test.dim());
    for (const auto& p : test.points()) {
      for (std::size_t j = 0; j < p.size(); ++j)
        centered[j] = p[j] - pca.mean[j];
      coords.push_back({dot(centered, pca.first.components()), dot(centered, pca.second.components())});
    }
    test = LabeledDataset(std::move(coords), test.labels());
    train = std::move(pca.embedded);
  }
  if (train.dim() != 2 || test.dim() != 2)
    throw Error("classify needs two-dimensional data; use --pca2");
  auto options = sweep_options(c);
  options.mode = SweepMode::cross_entropy_only;
  const auto records = sweep(train, c.angles, options);
  const auto& best = select_best(records, Objective::h2x, false);
  const auto pair = make_projected_pair(train, best.direction, options.bandwidths);
  const auto model = build_multithreshold_model(pair, best.direction, c.grid);

  auto out = open_out(c.out);
  out << "prediction\n";
  for (std::size_t i = 0; i < test.size(); ++i)
    out << classify(model, test.point(i)) << '\n';

  json s;
  s["angle_rad"] = jnum(best.angle);
  s["direction"] = {jnum(best.direction[0]), jnum(best.direction[1])};
  s["h2x"] = jnum(best.h2x);
  json th = json::array();
  for (double t : model.thresholds())
    th.push_back(jnum(t));
  s["thresholds"] = th;
  s["leftmost_sign"] = model.leftmost_sign();
  s["bandwidths"] = {jnum(pair.minus.bandwidth()), jnum(pair.plus.bandwidth())};
  s["train_balanced_error"] = jnum(empirical_balanced_error(model, train));
  s["train_error"] = jnum(plain_error(model, train));
  if (test.count(-1) > 0 && test.count(1) > 0)
    s["test_balanced_error"] = jnum(empirical_balanced_error(model, test));
  s["test_error"] = jnum(plain_error(model, test));
  if (summary.empty())
    summary = std::filesystem::path(c.out).replace_extension(".json").string();
  open_out(summary) << s.dump(2) << '\n';
  return 0;
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Multithreshold entropy linear classifier tools"};
  app.require_subcommand(1);

  std::string name, out;
  std::uint64_t seed = 0;
  std::size_t n = 200;
  auto* datagen = app.add_subcommand("datagen", "write a synthetic benchmark dataset as CSV");
  datagen->add_option("--name", name, "two-gauss, four-line or four-mixed")->required();
  datagen->add_option("--seed", seed)->required();
  datagen->add_option("--n", n, "points per Gaussian component");
  datagen->add_option("--out", out)->required();

  Common sw;
  std::string sw_summary;
  auto* sweep_cmd = app.add_subcommand("sweep", "evaluate every objective over an angle grid");
  sweep_cmd->add_option("--in", sw.in)->required();
  sweep_cmd->add_option("--out", sw.out)->required();
  sweep_cmd->add_option("--summary", sw_summary, "JSON sidecar path (default: --out with .json)");
  add_common(sweep_cmd, sw);

  Common tb;
  std::vector<std::string> tb_inputs;
  auto* table = app.add_subcommand("table", "hinge vs entropy comparison rows");
  table->add_option("--in", tb_inputs)->required();
  table->add_option("--out", tb.out);
  add_common(table, tb);

  Common bc;
  double tail_k = 5.0;
  auto* bound = app.add_subcommand("bound-check", "check -ln overlap >= H2x / 2 at every angle");
  bound->add_option("--in", bc.in)->required();
  bound->add_option("--out", bc.out, "per-angle CSV report");
  bound->add_option("--tail-k", tail_k, "bandwidths kept on each side when rescaling to [0, 1]")
      ->check(CLI::PositiveNumber);
  add_common(bound, bc);

  Common cl;
  std::string train, test, cl_summary;
  auto* cls = app.add_subcommand("classify", "fit on --train, predict --test");
  cls->add_option("--train", train)->required();
  cls->add_option("--test", test)->required();
  cls->add_option("--out", cl.out)->required();
  cls->add_option("--summary", cl_summary, "JSON summary path (default: --out with .json)");
  add_common(cls, cl);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*datagen)
      return cmd_datagen(name, seed, n, out);
    if (*sweep_cmd)
      return cmd_sweep(sw, sw_summary);
    if (*table)
      return cmd_table(tb, tb_inputs);
    if (*bound)
      return cmd_bound_check(bc, tail_k);
    if (*cls)
      return cmd_classify(cl, train, test, cl_summary);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
