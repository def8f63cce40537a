#include "oed/synthetic.hpp"

#include <cassert>

#include "oed/rng.hpp"

namespace oed {

FimSet synthetic_fimset(int m, int n, int rank, std::uint64_t seed) {
  assert(rank <= n);
  SplitMix64 rng(seed);
  FimSet fs(m, n, WeightedCells::uniform(m, 1.0));
  Eigen::VectorXd u(n);
  for (int i = 0; i < m; ++i) {
    SymMatrix s(n);
    for (int r = 0; r < rank; ++r) {
      for (int j = 0; j < n; ++j) u[j] = rng.uniform(-1.0, 1.0);
      SymMatrix outer(n);
      for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) outer(a, b) = u[a] * u[b];
      s += outer;
    }
    fs.set_fim(i, s);
  }
  return fs;
}

}  // namespace oed
