#include "symdecomp/perfmodel.hpp"

#include "symdecomp/error.hpp"

#include <numeric>

namespace symdecomp {

FlopsEstimate flops_per_iteration(long l, long m, long n) {
  if (l <= 0 || m <= 0 || n <= 0) throw Error(ErrorCode::InvalidArgument, "l, m and n must be positive");
  FlopsEstimate f;
  const double dl = static_cast<double>(l), dm = static_cast<double>(m), dn = static_cast<double>(n);
  f.f1 = 4.0 * dl * dm * dn;
  f.f2_order = dl * dn;
  f.small_terms = 6.0 * dm * dm + 4.0 * dl * (dm - 1.0) * (2.0 * dm + dn + 1.0);
  f.total_order = f.f1 + f.f2_order;
  return f;
}

int PerfInputs::n_sub() const { return std::accumulate(dims.begin(), dims.end(), 0); }

double decomposed_flops_ratio(const PerfInputs& in) {
  const double prefactor = static_cast<double>(in.n_sub()) / in.g;
  return prefactor * ((1.0 - in.omega) / (in.theta1 * in.theta2) + in.omega / in.theta2);
}

double predict_speedup(int g, int n_sub, double theta1, double omega) {
  return predict_speedup(g, n_sub, theta1, theta1, omega);
}

double predict_speedup(int g, int n_sub, double theta1, double theta2, double omega) {
  if (!(theta1 > 0.0) || !(theta2 > 0.0)) throw Error(ErrorCode::InvalidArgument, "θ must be positive");
  if (n_sub <= 0 || g <= 0) throw Error(ErrorCode::InvalidArgument, "g and n_sub must be positive");
  return static_cast<double>(g) * theta1 * theta2 / (n_sub * (1.0 + (theta1 - 1.0) * omega));
}

double measure_omega(const SolveStats& stats) {
  if (!(stats.time_total > 0.0)) throw Error(ErrorCode::DegenerateStats, "time_total must be positive");
  return stats.time_mv / stats.time_total;
}

double theta1_from_counts(int n_e, int nev) {
  if (n_e <= 0 || nev <= 0) throw Error(ErrorCode::InvalidArgument, "counts must be positive");
  return (2.0 * n_e + 5.0) / (2.0 * nev + 5.0);
}

double average_iteration_time(const SolveStats& stats) {
  if (stats.iterations <= 0) throw Error(ErrorCode::DegenerateStats, "no iterations recorded");
  return stats.time_total / static_cast<double>(stats.iterations);
}

double accumulated_iteration_time(const std::vector<SolveStats>& stats) {
  double sum = 0.0;
  for (const auto& s : stats) sum += average_iteration_time(s);
  return sum;
}

}  // namespace symdecomp
