#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fatplanes/bigint.hpp"
#include "fatplanes/combinatorics.hpp"

namespace fatplanes {

// Single big step: n >= sum_i binomial(d_i + r, r+1).  degree2_caveat marks
// multidegrees containing a quadric, where the hypothesis behind the big step
// is different and not implemented here.
struct ElvBound {
  Bigint min_n;
  bool degree2_caveat = false;
};

// One small step at (r, dd): minimal n with the covering condition,
// ceil((sum_i binomial(d_i+r+1, r+1) + r^2 + r - s) / (r+1)).
// The step is only proven when the top degree is strict (d_{s-1} < d_s,
// vacuous for s = 1) and max(dd) >= 3; the flags say which hypothesis failed.
struct SmallStepBound {
  Bigint min_n;
  bool strict_top_ok = true;
  bool max_degree_ok = true;
  bool admissible() const { return strict_top_ok && max_degree_ok; }
};

// A strategy = k small steps (each consumes the largest remaining degree and
// raises the plane dimension by one) followed by a big step on what is left,
// or by the bare dimension condition n >= r+s when k = s.
struct StrategyReport {
  int small_steps = 0;
  std::vector<std::string> steps;       // "small"... then "big" or "base"
  std::vector<Bigint> step_values;      // constraint per step
  Bigint value;                         // max of step_values
  std::vector<std::string> blocking;    // empty <=> admissible
  bool admissible() const { return blocking.empty(); }
};

struct BoundReport {
  int r;
  Multidegree dd;
  Bigint conjecture_n;
  Bigint elv_n;
  bool elv_flagged = false;
  Bigint small_step_n;
  std::optional<Bigint> best_n;          // absent when nothing is admissible
  std::vector<std::string> strategy;     // steps of the winning strategy
  std::vector<StrategyReport> strategies;
  std::vector<std::string> hypothesis_flags;
  bool conjectural = false;
};

// Conjectural sharp threshold r * max(dd) + sum(dd).
Bigint conjecture_bound(int r, const Multidegree& dd);

ElvBound elv_bound(int r, const Multidegree& dd);

SmallStepBound small_step_min_n(int r, const Multidegree& dd);

// Enumerates all strategies k = 0..s; best_n = min over admissible ones.
// conjectural additionally admits big steps carrying the degree-2 caveat
// (small-step hypothesis failures stay blocked in every mode).
BoundReport best_bound(int r, const Multidegree& dd, bool conjectural = false);

// Covering condition at (n, r, dd) for t = max degree: rho + r >= n - s with
// rho = (r+2)(n-r) - sum_i binomial(d_i+r+1, r+1).  strict_top_ok reports the
// d_{s-1} < d_s hypothesis of the underlying statement.
struct CoveringCheck {
  bool holds = false;
  Bigint rho;
  Bigint slack;  // rho + r - (n - s)
  bool strict_top_ok = true;
};
CoveringCheck covering_condition(const Bigint& n, int r, const Multidegree& dd);

}  // namespace fatplanes
