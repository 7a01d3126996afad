// Generates the two-Gaussian benchmark, sweeps 180 directions and fits a
// multithreshold model along the direction of largest cross entropy.
#include <cstdio>

#include "melc/melc.hpp"

int main()
{
  using namespace melc;
  const auto data = generate({"two-gauss", 42, 200});
  const auto records = sweep(data, 180);

  const auto& best = select_best(records, Objective::h2x, false);
  const auto& bayes = select_best(records, Objective::eaa_risk, true);
  std::printf("argmax h2x  angle %.4f  h2x %.6f  eaa risk %.6f\n", best.angle, best.h2x, best.eaa_risk);
  std::printf("argmin risk angle %.4f  eaa risk %.6f\n", bayes.angle, bayes.eaa_risk);

  const auto pair = make_projected_pair(data, best.direction);
  const auto model = build_multithreshold_model(pair, best.direction);
  std::printf("thresholds:");
  for (double t : model.thresholds())
    std::printf(" %.6f", t);
  std::printf("\ntraining balanced error %.4f\n", empirical_balanced_error(model, data));
}
