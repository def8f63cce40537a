#ifndef OED_CRITERIA_HPP
#define OED_CRITERIA_HPP

#include "oed/sym_matrix.hpp"

namespace oed {

// Design criterion family on the positive definite cone, q >= 0:
//
//   q > 0:  Phi_q(I) = ((1/n) tr I^{-q})^{1/q}
//   q = 0:  Phi_0(I) = (1/n) ln det I^{-1} = -(1/n) sum_i ln lambda_i
//
// Outside the cone the value is +infinity (extended-real convention, no
// throw). q = 1 is average inverse-trace (A-criterion up to scaling), q = 0
// the log-det (D-) criterion, large q approaches the E-criterion.

// Evaluate from a precomputed decomposition.
double eval_criterion(double q, const SpectralDecomposition& eig);
double eval_criterion(double q, const SymMatrix& a);

// Gradient with respect to I in the Frobenius pairing:
//
//   q > 0:  -(1/n)^{1/q} (tr I^{-q})^{1/q-1} I^{-q-1}
//   q = 0:  -(1/n) I^{-1}
//
// Throws NotPositiveDefiniteError outside the cone.
SymMatrix grad_criterion(double q, const SpectralDecomposition& eig);
SymMatrix grad_criterion(double q, const SymMatrix& a);

}  // namespace oed

#endif
