#ifndef OED_LOTKA_VOLTERRA_HPP
#define OED_LOTKA_VOLTERRA_HPP

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "oed/fim_set.hpp"

namespace oed {

// Predator-prey benchmark: pick initial conditions (y1, y2) in [0,10]^2 and
// an observation time in [0,100] for a measurement of y1. The elemental
// information matrix of a cell is the outer product of the sensitivity row
// of y1 with respect to the four model parameters, taken at the cell
// midpoint. States and sensitivities advance together with explicit Euler.
struct LvConfig {
  std::array<double, 4> p{0.1, 0.4, 0.02, 0.02};
  double horizon = 100.0;
  double dt = 0.1;
  std::array<std::uint64_t, 3> counts{30, 30, 30};
  std::array<double, 3> axis_min{0.0, 0.0, 0.0};
  std::array<double, 3> axis_max{10.0, 10.0, 100.0};
  double budget_fraction = 5e-4;
  double overflow_limit = 1e12;

  int steps() const { return static_cast<int>(std::llround(horizon / dt)); }
};

struct LvState {
  Eigen::Vector2d y;
  Eigen::Matrix<double, 2, 4> z;  // dy/dp
};

// States at t = 0, dt, ..., horizon (steps() + 1 entries); z(0) = 0.
// Throws OverflowError when a state or sensitivity entry leaves
// [-overflow_limit, overflow_limit].
std::vector<LvState> lv_trajectory(const Eigen::Vector2d& y0, const LvConfig& cfg);

// Euler step indices of the observation-axis cell midpoints, each snapped
// to the nearest grid time.
std::vector<int> lv_sample_steps(const LvConfig& cfg);

// The full elemental FIM field over the tensor grid, with grid metadata,
// uniform volumes |X|/m and budget C = budget_fraction * |X| implied by the
// config (the budget itself is the caller's business).
FimSet lv_fimset(const LvConfig& cfg);

double lv_budget(const LvConfig& cfg);

}  // namespace oed

#endif
