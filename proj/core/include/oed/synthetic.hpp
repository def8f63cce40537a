#ifndef OED_SYNTHETIC_HPP
#define OED_SYNTHETIC_HPP

#include <cstdint>

#include "oed/fim_set.hpp"

namespace oed {

// Random PSD test field: each cell gets the sum of `rank` outer products of
// vectors with entries uniform in [-1, 1]. Unit volumes, no grid metadata.
// The same seed reproduces the field bit for bit.
FimSet synthetic_fimset(int m, int n, int rank, std::uint64_t seed);

}  // namespace oed

#endif
