#include "oed/projection.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <vector>

#include "oed/errors.hpp"

namespace oed {

namespace {

struct SortedInstance {
  std::vector<int> order;   // order[i] = original index of i-th largest f
  Eigen::VectorXd f;        // descending
  Eigen::VectorXd vol;      // matching permutation
  std::vector<double> pv;   // pv[i]  = sum of vol[0..i-1]
  std::vector<double> pvf;  // pvf[i] = sum of vol[j]*f[j], j < i
};

SortedInstance sort_descending(const Eigen::VectorXd& f, const WeightedCells& cells) {
  const int m = static_cast<int>(f.size());
  SortedInstance s;
  s.order.resize(m);
  std::iota(s.order.begin(), s.order.end(), 0);
  std::sort(s.order.begin(), s.order.end(), [&](int a, int b) {
    if (f[a] != f[b]) return f[a] > f[b];
    return a < b;  // deterministic tie order
  });
  s.f.resize(m);
  s.vol.resize(m);
  for (int i = 0; i < m; ++i) {
    s.f[i] = f[s.order[i]];
    s.vol[i] = cells.volumes[s.order[i]];
  }
  s.pv.resize(m + 1);
  s.pvf.resize(m + 1);
  s.pv[0] = s.pvf[0] = 0.0;
  for (int i = 0; i < m; ++i) {
    s.pv[i + 1] = s.pv[i] + s.vol[i];
    s.pvf[i + 1] = s.pvf[i] + s.vol[i] * s.f[i];
  }
  return s;
}

// Number of leading entries of the descending vector f with f_j >= x.
int count_ge(const Eigen::VectorXd& f, double x) {
  int lo = 0, hi = static_cast<int>(f.size());
  while (lo < hi) {
    int mid = (lo + hi) / 2;
    if (f[mid] >= x)
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo;
}

// Number of leading entries with f_j > x.
int count_gt(const Eigen::VectorXd& f, double x) {
  int lo = 0, hi = static_cast<int>(f.size());
  while (lo < hi) {
    int mid = (lo + hi) / 2;
    if (f[mid] > x)
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo;
}

// Budget consumed by the box clamp at shift zeta:
//   W(zeta) = sum_i vol_i * clamp(f_i - zeta, 0, 1).
// Entries with f_i >= zeta + 1 contribute vol_i, entries with
// zeta < f_i < zeta + 1 contribute vol_i (f_i - zeta), the rest nothing.
double clamp_budget(const SortedInstance& s, double zeta) {
  const int a = count_ge(s.f, zeta + 1.0);
  const int b = count_gt(s.f, zeta);
  return s.pv[a] + (s.pvf[b] - s.pvf[a]) - zeta * (s.pv[b] - s.pv[a]);
}

double zeta_shift_sorted(const SortedInstance& s, double C, int k, int l) {
  assert(1 <= k && k <= static_cast<int>(s.f.size()));
  assert(0 <= l && l <= k);
  if (k == l) return s.f[k - 1] - 1.0;
  const double denom = s.pv[k] - s.pv[l];
  return (s.pv[l] + (s.pvf[k] - s.pvf[l]) - C) / denom;
}

ProjectionResult assemble(const SortedInstance& s, double zeta, bool lower_bound) {
  const int m = static_cast<int>(s.f.size());
  ProjectionResult r;
  r.zeta = zeta;
  r.v.resize(m);
  for (int i = 0; i < m; ++i) {
    double x = s.f[i] - zeta;
    if (x > 1.0) x = 1.0;
    if (lower_bound && x < 0.0) x = 0.0;
    r.v[s.order[i]] = x;
    if (x != 0.0) ++r.nnz;
    if (x == 1.0) ++r.ones;
  }
  return r;
}

}  // namespace

double zeta_shift(const Eigen::VectorXd& f_sorted, const WeightedCells& cells_sorted,
                  double C, int k, int l) {
  SortedInstance s;
  const int m = static_cast<int>(f_sorted.size());
  s.order.resize(m);
  std::iota(s.order.begin(), s.order.end(), 0);
  s.f = f_sorted;
  s.vol = cells_sorted.volumes;
  s.pv.resize(m + 1);
  s.pvf.resize(m + 1);
  s.pv[0] = s.pvf[0] = 0.0;
  for (int i = 0; i < m; ++i) {
    s.pv[i + 1] = s.pv[i] + s.vol[i];
    s.pvf[i + 1] = s.pvf[i] + s.vol[i] * s.f[i];
  }
  return zeta_shift_sorted(s, C, k, l);
}

ProjectionResult project_restricted_simplex(const Eigen::VectorXd& f,
                                            const WeightedCells& cells, double C) {
  const int m = static_cast<int>(f.size());
  assert(m == cells.size() && m > 0);
  const double total = cells.total();
  if (!(C > 0.0) || !(C < total))
    throw BudgetInfeasibleError("budget must satisfy 0 < C < total volume");

  const SortedInstance s = sort_descending(f, cells);

  // Largest k with W(f_k) < C. True for k = 1 (W(f_1) = 0 < C), and W(f_k)
  // is nondecreasing in k, so binary search for the last true.
  int lo = 1, hi = m;
  while (lo < hi) {
    int mid = (lo + hi + 1) / 2;
    if (clamp_budget(s, s.f[mid - 1]) < C)
      lo = mid;
    else
      hi = mid - 1;
  }
  const int k = lo;

  const int l_min = count_ge(s.f, s.f[k - 1] + 1.0);
  const int l_max = (k < m) ? count_ge(s.f, s.f[k] + 1.0) : m - 1;

  // Smallest l in [l_min, l_max] with f_{l+1} - zeta(k,l) < 1. The predicate
  // is monotone over the bracket, so binary search for the first true;
  // the bracket is guaranteed nonempty with at least its last entry true.
  int a = l_min, b = l_max;
  while (a < b) {
    int mid = (a + b) / 2;
    if (1.0 > s.f[mid] - zeta_shift_sorted(s, C, k, mid))
      b = mid;
    else
      a = mid + 1;
  }
  const int l = a;

  return assemble(s, zeta_shift_sorted(s, C, k, l), /*lower_bound=*/true);
}

ProjectionResult project_upper_simplex(const Eigen::VectorXd& f,
                                       const WeightedCells& cells, double C) {
  const int m = static_cast<int>(f.size());
  assert(m == cells.size() && m > 0);
  const double total = cells.total();
  if (C > total) throw BudgetInfeasibleError("budget exceeds total volume");

  const SortedInstance s = sort_descending(f, cells);

  // With the t largest entries capped at 1, the budget equation
  //   pv[t] + (pvf[m] - pvf[t]) - zeta (pv[m] - pv[t]) = C
  // fixes zeta; t is valid when the cap pattern is consistent with it.
  for (int t = 0; t < m; ++t) {
    const double denom = s.pv[m] - s.pv[t];
    const double zeta = (s.pv[t] + (s.pvf[m] - s.pvf[t]) - C) / denom;
    const bool cap_ok = (t == 0) || (s.f[t - 1] - zeta >= 1.0);
    const bool free_ok = s.f[t] - zeta <= 1.0;
    if (cap_ok && free_ok) return assemble(s, zeta, /*lower_bound=*/false);
  }
  // Only reachable when C equals the total volume: everything capped.
  return assemble(s, s.f[m - 1] - 1.0, /*lower_bound=*/false);
}

Eigen::VectorXd project_box(const Eigen::VectorXd& f) {
  return f.array().min(1.0).max(0.0);
}

}  // namespace oed
