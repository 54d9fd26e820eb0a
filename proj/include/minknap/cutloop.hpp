#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "minknap/inequality.hpp"
#include "minknap/instance.hpp"
#include "minknap/knapdp.hpp"
#include "minknap/sep.hpp"

namespace minknap {

/// Ordered, duplicate-free list of cuts.
class CutPool {
 public:
  /// Adds the cut; returns false if an identical one is already present.
  bool add(const Inequality& cut);
  bool contains(const Inequality& cut) const;
  std::size_t size() const { return cuts_.size(); }
  const std::vector<Inequality>& cuts() const { return cuts_; }
  std::size_t count(Family f) const;

 private:
  std::vector<Inequality> cuts_;
  std::map<std::string, std::size_t> index_;
};

struct CutLoopConfig {
  bool kc = false;
  KcMode kc_mode = KcMode::heuristic;

  bool p12 = true;
  Exactness mode = Exactness::exact;
  Rational eps = Rational(1, 100);

  bool fixed_support = false;
  bool fs_full_support = false;            ///< also try I = [n]
  std::optional<std::size_t> fs_max_pitch;  ///< see separate_fixed_support

  /// One LP column per class of items with equal profit and cost. The cut
  /// families are invariant under permuting such items, so their closure has
  /// an optimum that is constant on classes and a certified run reaches the
  /// same value as the unaggregated loop.
  bool aggregate_identical = false;

  std::size_t max_iter = 1000;
  bool assert_valid = true;  ///< is_valid on every cut before it enters the pool
  DpBudget budget;
};

enum class Termination { certified, no_cut_found, max_iter };
std::string to_string(Termination t);

struct GapReport {
  std::string instance_id;
  Rational int_opt;
  std::vector<Rational> lp_values;  ///< one per LP solve
  Rational lp_value;
  Rational gap;  ///< int_opt / lp_value
  std::size_t cuts_kc = 0;
  std::size_t cuts_p12 = 0;
  std::size_t cuts_fs = 0;
  Termination reason = Termination::no_cut_found;
  bool kc_exhaustive = false;
  bool p12_exact = false;
  Point final_point;
  std::vector<Inequality> cuts;
};

/// Cutting-plane loop from the natural relaxation. Each round the separators
/// are tried in the order kc, p12, fixed-support; the first one that returns
/// a violated cut supplies the round's cut.
GapReport run(const Instance& inst, const CutLoopConfig& config, const std::string& instance_id = "");

/// Optimum of the natural relaxation plus `cuts`, x in [0,1]^n.
struct LpPoint {
  Point x;
  Rational value;
};
LpPoint solve_relaxation(const Instance& inst, const std::vector<Inequality>& cuts);

struct Rounding {
  IndexSet chosen;
  Rational cost;
  bool guaranteed = false;  ///< xbar satisfies KC(S); then cost <= 2 c.xbar
};

/// Rounds an LP point: S = {xbar >= 1/2}, then covers the residual demand
/// greedily by density c_i / min(p_i, b'). Throws Infeasible if the residual
/// items cannot cover it.
Rounding round_kc(const Instance& inst, const Point& xbar);

}  // namespace minknap
