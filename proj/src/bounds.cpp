#include "fatplanes/bounds.hpp"

#include <algorithm>
#include <stdexcept>

namespace fatplanes {

Bigint conjecture_bound(int r, const Multidegree& dd) {
  if (r < 0) throw std::invalid_argument("conjecture_bound: needs r >= 0");
  Bigint sum = 0;
  for (int d : dd.degrees()) sum += d;
  return Bigint(r) * dd.max() + sum;
}

ElvBound elv_bound(int r, const Multidegree& dd) {
  if (r < 0) throw std::invalid_argument("elv_bound: needs r >= 0");
  ElvBound out;
  out.min_n = 0;
  for (int d : dd.degrees()) {
    out.min_n += binomial(d + r, r + 1);
    if (d == 2) out.degree2_caveat = true;
  }
  return out;
}

SmallStepBound small_step_min_n(int r, const Multidegree& dd) {
  if (r < 0) throw std::invalid_argument("small_step_min_n: needs r >= 0");
  SmallStepBound out;
  Bigint num = Bigint(r) * r + r - dd.size();
  for (int d : dd.degrees()) num += binomial(d + r + 1, r + 1);
  out.min_n = ceil_div(num, Bigint(r + 1));
  out.strict_top_ok = dd.top_degree_strict();
  out.max_degree_ok = dd.max() >= 3;
  return out;
}

namespace {

StrategyReport run_strategy(int r, const Multidegree& dd, int k,
                            bool conjectural) {
  const auto& degrees = dd.degrees();
  int s = dd.size();
  StrategyReport rep;
  rep.small_steps = k;
  for (int i = 0; i < k; ++i) {
    int m = s - i;  // length of the remaining degree list
    std::vector<int> prefix(degrees.begin(), degrees.begin() + m);
    Multidegree level(prefix);
    SmallStepBound step = small_step_min_n(r + i, level);
    rep.steps.push_back("small");
    rep.step_values.push_back(step.min_n);
    if (!step.strict_top_ok)
      rep.blocking.push_back("step " + std::to_string(i + 1) +
                             ": consumed degree must strictly exceed the next");
    if (!step.max_degree_ok)
      rep.blocking.push_back("step " + std::to_string(i + 1) +
                             ": consumed degree must be >= 3");
  }
  if (k < s) {
    std::vector<int> prefix(degrees.begin(), degrees.begin() + (s - k));
    ElvBound big = elv_bound(r + k, Multidegree(prefix));
    rep.steps.push_back("big");
    rep.step_values.push_back(big.min_n);
    if (big.degree2_caveat && !conjectural)
      rep.blocking.push_back("big step: degree-2 caveat");
  } else {
    rep.steps.push_back("base");
    rep.step_values.push_back(Bigint(r + s));
  }
  rep.value = rep.step_values.front();
  for (const Bigint& v : rep.step_values) rep.value = std::max(rep.value, v);
  return rep;
}

}  // namespace

BoundReport best_bound(int r, const Multidegree& dd, bool conjectural) {
  BoundReport rep{r, dd, conjecture_bound(r, dd), 0, false, 0,
                  std::nullopt, {}, {}, {}, conjectural};
  ElvBound elv = elv_bound(r, dd);
  rep.elv_n = elv.min_n;
  rep.elv_flagged = elv.degree2_caveat;
  SmallStepBound small = small_step_min_n(r, dd);
  rep.small_step_n = small.min_n;

  if (elv.degree2_caveat) rep.hypothesis_flags.push_back("elv_degree2_caveat");
  if (!small.strict_top_ok)
    rep.hypothesis_flags.push_back("small_step_needs_strict_top");
  if (!small.max_degree_ok)
    rep.hypothesis_flags.push_back("small_step_needs_max_degree_3");
  if (conjectural) rep.hypothesis_flags.push_back("conjectural_mode");

  for (int k = 0; k <= dd.size(); ++k) {
    StrategyReport strat = run_strategy(r, dd, k, conjectural);
    if (strat.admissible() && (!rep.best_n || strat.value < *rep.best_n)) {
      rep.best_n = strat.value;
      rep.strategy = strat.steps;
    }
    rep.strategies.push_back(std::move(strat));
  }
  if (!rep.best_n)
    rep.hypothesis_flags.push_back("no_admissible_strategy");
  return rep;
}

CoveringCheck covering_condition(const Bigint& n, int r,
                                 const Multidegree& dd) {
  if (r < 0) throw std::invalid_argument("covering_condition: needs r >= 0");
  if (n < r + dd.size() + 1)
    throw std::invalid_argument("covering_condition: needs s <= n - r - 1");
  CoveringCheck out;
  Bigint sum = 0;
  for (int d : dd.degrees()) sum += binomial(d + r + 1, r + 1);
  out.rho = Bigint(r + 2) * (n - r) - sum;
  out.slack = out.rho + r - (n - dd.size());
  out.holds = out.slack >= 0;
  out.strict_top_ok = dd.top_degree_strict();
  return out;
}

}  // namespace fatplanes
