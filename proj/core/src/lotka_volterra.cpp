#include "oed/lotka_volterra.hpp"

#include <cmath>
#include <exception>
#include <functional>
#include <thread>

#include "oed/errors.hpp"

namespace oed {

namespace {

void parallel_for(int count, const std::function<void(int, int)>& body) {
  int workers = static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  workers = std::min(workers, count);
  if (workers <= 1) {
    body(0, count);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  const int chunk = (count + workers - 1) / workers;
  for (int t = 0; t < workers; ++t) {
    const int lo = t * chunk;
    const int hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, t, lo, hi] {
      try {
        body(lo, hi);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

std::vector<LvState> lv_trajectory(const Eigen::Vector2d& y0, const LvConfig& cfg) {
  const auto& p = cfg.p;
  const int steps = cfg.steps();
  std::vector<LvState> out(steps + 1);
  out[0].y = y0;
  out[0].z.setZero();

  for (int k = 0; k < steps; ++k) {
    const Eigen::Vector2d y = out[k].y;
    const auto& z = out[k].z;

    const Eigen::Vector2d f(p[0] * y[0] - p[2] * y[0] * y[1],
                            -p[1] * y[1] + p[3] * y[0] * y[1]);
    Eigen::Matrix2d jac;
    jac << p[0] - p[2] * y[1], -p[2] * y[0],
           p[3] * y[1], -p[1] + p[3] * y[0];
    Eigen::Matrix<double, 2, 4> b;
    b << y[0], 0.0, -y[0] * y[1], 0.0,
         0.0, -y[1], 0.0, y[0] * y[1];

    out[k + 1].y = y + cfg.dt * f;
    out[k + 1].z = z + cfg.dt * (jac * z + b);

    if (!out[k + 1].y.allFinite() || !out[k + 1].z.allFinite() ||
        out[k + 1].y.cwiseAbs().maxCoeff() > cfg.overflow_limit ||
        out[k + 1].z.cwiseAbs().maxCoeff() > cfg.overflow_limit)
      throw OverflowError("trajectory blew up under explicit Euler");
  }
  return out;
}

std::vector<int> lv_sample_steps(const LvConfig& cfg) {
  const auto nt = static_cast<int>(cfg.counts[2]);
  const double width = (cfg.axis_max[2] - cfg.axis_min[2]) / nt;
  std::vector<int> steps(nt);
  for (int j = 0; j < nt; ++j) {
    const double t_mid = cfg.axis_min[2] + (j + 0.5) * width;
    steps[j] = static_cast<int>(std::llround(t_mid / cfg.dt));
  }
  return steps;
}

double lv_budget(const LvConfig& cfg) {
  double volume = 1.0;
  for (int a = 0; a < 3; ++a) volume *= cfg.axis_max[a] - cfg.axis_min[a];
  return cfg.budget_fraction * volume;
}

FimSet lv_fimset(const LvConfig& cfg) {
  const auto c0 = static_cast<int>(cfg.counts[0]);
  const auto c1 = static_cast<int>(cfg.counts[1]);
  const auto c2 = static_cast<int>(cfg.counts[2]);
  const int m = c0 * c1 * c2;

  double volume = 1.0;
  for (int a = 0; a < 3; ++a) volume *= cfg.axis_max[a] - cfg.axis_min[a];
  FimSet fs(m, 4, WeightedCells::uniform(m, volume / m));
  fs.grid() = GridInfo{{cfg.counts[0], cfg.counts[1], cfg.counts[2]},
                       {cfg.axis_min[0], cfg.axis_min[1], cfg.axis_min[2]},
                       {cfg.axis_max[0], cfg.axis_max[1], cfg.axis_max[2]}};

  const std::vector<int> sample = lv_sample_steps(cfg);
  const double w0 = (cfg.axis_max[0] - cfg.axis_min[0]) / c0;
  const double w1 = (cfg.axis_max[1] - cfg.axis_min[1]) / c1;

  parallel_for(c0 * c1, [&](int lo, int hi) {
    for (int ic = lo; ic < hi; ++ic) {
      const int i0 = ic % c0;
      const int i1 = ic / c0;
      const Eigen::Vector2d y0(cfg.axis_min[0] + (i0 + 0.5) * w0,
                               cfg.axis_min[1] + (i1 + 0.5) * w1);
      const std::vector<LvState> traj = lv_trajectory(y0, cfg);
      for (int i2 = 0; i2 < c2; ++i2) {
        const Eigen::RowVector4d z1 = traj[sample[i2]].z.row(0);
        const SymMatrix u = SymMatrix::from_dense(z1.transpose() * z1);
        fs.set_fim(i0 + c0 * (i1 + c1 * i2), u);
      }
    }
  });
  return fs;
}

}  // namespace oed
