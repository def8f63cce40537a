#include "oed/optimality.hpp"

#include <algorithm>
#include <limits>

#include "oed/errors.hpp"
#include "oed/projection.hpp"

namespace oed {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

IndexClassification classify(const Eigen::VectorXd& w) {
  IndexClassification c;
  for (int i = 0; i < static_cast<int>(w.size()); ++i) {
    if (w[i] == 0.0)
      c.J0.push_back(i);
    else if (w[i] == 1.0)
      c.J1.push_back(i);
    else
      c.J01.push_back(i);
  }
  return c;
}

double residual_from_z(const Eigen::VectorXd& w, const Eigen::VectorXd& z, double alpha) {
  double sup0 = -kInf;
  double sup01 = -kInf, inf01 = kInf;
  double inf1 = kInf;
  for (int i = 0; i < static_cast<int>(w.size()); ++i) {
    if (w[i] == 0.0) {
      sup0 = std::max(sup0, z[i]);
    } else if (w[i] == 1.0) {
      inf1 = std::min(inf1, z[i] - alpha);
    } else {
      const double t = z[i] - alpha * w[i];
      sup01 = std::max(sup01, t);
      inf01 = std::min(inf01, t);
    }
  }
  double e = -kInf;
  auto consider = [&](double sup, double inf) {
    if (sup > -kInf && inf < kInf) e = std::max(e, sup - inf);
  };
  consider(sup0, inf01);
  consider(sup0, inf1);
  consider(sup01, inf01);
  consider(sup01, inf1);
  return e > -kInf ? 0.5 * e : 0.0;
}

double tolerance_from_z(const Eigen::VectorXd& z, double rel) {
  return rel * (z.maxCoeff() - z.minCoeff());
}

double upper_residual_from_z(const Eigen::VectorXd& w, const Eigen::VectorXd& z,
                             double alpha) {
  double sup_unc = -kInf, inf_unc = kInf;
  double inf_cap = kInf;
  for (int i = 0; i < static_cast<int>(w.size()); ++i) {
    if (w[i] == 1.0) {
      inf_cap = std::min(inf_cap, z[i] - alpha);
    } else {
      const double t = z[i] - alpha * w[i];
      sup_unc = std::max(sup_unc, t);
      inf_unc = std::min(inf_unc, t);
    }
  }
  double e = -kInf;
  if (sup_unc > -kInf && inf_unc < kInf) e = std::max(e, sup_unc - inf_unc);
  if (sup_unc > -kInf && inf_cap < kInf) e = std::max(e, sup_unc - inf_cap);
  return e > -kInf ? 0.5 * e : 0.0;
}

double residual(const Eigen::VectorXd& w, const ProblemSpec& p) {
  const PointEval e = eval_point(w, p);
  if (!e.positive_definite) throw NotPositiveDefiniteError();
  return residual_from_z(w, e.z, p.alpha);
}

double relative_tolerance(const Eigen::VectorXd& w, const ProblemSpec& p, double rel) {
  const PointEval e = eval_point(w, p);
  if (!e.positive_definite) throw NotPositiveDefiniteError();
  return tolerance_from_z(e.z, rel);
}

double check_regularized_fixed_point(const Eigen::VectorXd& w, const ProblemSpec& p) {
  if (!(p.alpha > 0.0)) throw AlphaZeroError();
  const PointEval e = eval_point(w, p);
  if (!e.positive_definite) throw NotPositiveDefiniteError();
  const Eigen::VectorXd target = e.z / p.alpha;
  const ProjectionResult proj = project_restricted_simplex(target, p.cells(), p.C);
  return (w - proj.v).cwiseAbs().maxCoeff();
}

}  // namespace oed
