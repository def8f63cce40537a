#ifndef OED_TRACE_HPP
#define OED_TRACE_HPP

#include <ctime>
#include <vector>

namespace oed {

// One row per outer iteration of any solver. cpu_seconds is process CPU
// time since solve start; everything else is deterministic for a fixed
// problem, configuration, and seed.
struct TraceRecord {
  int iter;
  double cpu_seconds;
  double objective;
  double residual;
  int nnz;
  double gamma;
  double theta;
};

using Trace = std::vector<TraceRecord>;

inline double cpu_seconds_now() {
  timespec ts;
  clock_gettime(CLOCK_PROCESS_CPUTIME_ID, &ts);
  return static_cast<double>(ts.tv_sec) + 1e-9 * static_cast<double>(ts.tv_nsec);
}

}  // namespace oed

#endif
