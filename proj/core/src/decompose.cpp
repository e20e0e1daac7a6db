#include "symdecomp/decompose.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <thread>
#include <tuple>

namespace symdecomp {

int default_extra(int n_e, int n_sub) {
  return std::max(5, static_cast<int>(std::ceil(0.2 * n_e / n_sub)));
}

int eigenvalues_per_subproblem(int n_e, int n_sub, int extra) { return (n_e + n_sub - 1) / n_sub + extra; }

SolveOptions solver_options_for(Scheme scheme, const SolveOptions& base) {
  SolveOptions opt = base;
  if (scheme == Scheme::Q1FE) opt.mode = SolveMode::ShiftInvert;
  return opt;
}

MergedSpectrum merge_spectra(const std::vector<SubproblemSpectrum>& subs, const std::vector<int>& dims, int n_e) {
  MergedSpectrum out;
  out.requested = n_e;
  std::vector<MergedEntry> all;
  for (std::size_t s = 0; s < subs.size(); ++s) {
    const auto& sub = subs[s];
    for (int i = 0; i < sub.eigenvalues.size(); ++i) {
      for (int l = 1; l <= dims[s]; ++l) {
        MergedEntry e;
        e.lambda = sub.eigenvalues(i);
        e.nu = sub.nu;
        e.l = l;
        e.local = i;
        e.slot = static_cast<int>(s);
        e.residual = i < static_cast<int>(sub.residuals.size()) ? sub.residuals[static_cast<std::size_t>(i)] : 0.0;
        all.push_back(e);
      }
    }
  }
  std::stable_sort(all.begin(), all.end(), [](const MergedEntry& a, const MergedEntry& b) {
    return std::tie(a.lambda, a.nu, a.l, a.local) < std::tie(b.lambda, b.nu, b.l, b.local);
  });
  out.leftover.assign(subs.size(), 0);
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (static_cast<int>(i) < n_e) {
      out.entries.push_back(all[i]);
    } else {
      ++out.leftover[static_cast<std::size_t>(all[i].slot)];
    }
  }
  if (static_cast<int>(out.entries.size()) < n_e) out.incomplete = true;
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

// Runs job(slot, inner_threads) for every slot. With a budget of T threads
// and n slots, min(T, n) workers pull slots in order; each solve gets a
// share of the remaining budget for its row-parallel products.
template <class Job>
void dispatch(const std::vector<int>& slots, const std::vector<double>& weights, int budget, const Job& job) {
  const int n = static_cast<int>(slots.size());
  if (n == 0) return;
  const int workers = std::clamp(budget, 1, n);
  double total = 0.0;
  for (int s : slots) total += weights[static_cast<std::size_t>(s)];
  const auto inner = [&](int s) {
    if (workers == 1) return std::max(1, budget);
    const double share = budget * weights[static_cast<std::size_t>(s)] / std::max(total, 1e-300);
    return std::max(1, static_cast<int>(std::floor(share)));
  };
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
  std::atomic<int> next{0};
  const auto worker = [&] {
    for (int t = next++; t < n; t = next++) {
      try {
        job(slots[static_cast<std::size_t>(t)], inner(slots[static_cast<std::size_t>(t)]));
      } catch (...) {
        errors[static_cast<std::size_t>(t)] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

DecomposedResult solve_decomposed(const Problem& problem, const SymmetricGrid& grid, const Discretization& disc,
                                  const PointGroup& group, int n_e, const DecomposeOptions& options) {
  if (n_e < 1) throw Error(ErrorCode::InvalidArgument, "N_e must be at least 1");
  const OrbitMap orbits(grid, group);
  const int nc = group.num_irreps();
  const int n_sub = group.num_subproblems();
  const int extra = options.extra >= 0 ? options.extra : default_extra(n_e, n_sub);
  SolveOptions solver = solver_options_for(disc.scheme, options.solver);
  solver.throw_on_max_iterations = false;

  DecomposedResult result;
  std::vector<ReducedSystem> systems(static_cast<std::size_t>(nc));
  std::vector<int> dims(static_cast<std::size_t>(nc));
  std::vector<double> weights(static_cast<std::size_t>(nc));
  std::vector<int> all_slots;
  for (int s = 0; s < nc; ++s) {
    dims[static_cast<std::size_t>(s)] = group.irrep(s + 1).dim;
    weights[static_cast<std::size_t>(s)] = dims[static_cast<std::size_t>(s)] * orbits.num_orbits();
    all_slots.push_back(s);
  }

  const auto t0 = Clock::now();
  dispatch(all_slots, weights, options.threads, [&](int s, int) {
    systems[static_cast<std::size_t>(s)] = assemble_reduced(problem, grid, disc, orbits, group, s + 1);
  });
  result.assembly_seconds = std::chrono::duration<double>(Clock::now() - t0).count();

  result.subproblems.assign(static_cast<std::size_t>(nc), SubproblemSpectrum{});
  result.requested_nev.assign(static_cast<std::size_t>(nc), eigenvalues_per_subproblem(n_e, n_sub, extra));
  const auto solve_slots = [&](const std::vector<int>& slots) {
    dispatch(slots, weights, options.threads, [&](int s, int inner) {
      const ReducedSystem& sys = systems[static_cast<std::size_t>(s)];
      SolveOptions opt = solver;
      opt.threads = inner;
      const int nev = std::min(result.requested_nev[static_cast<std::size_t>(s)], sys.size());
      result.requested_nev[static_cast<std::size_t>(s)] = nev;
      SubproblemSpectrum spec = solve_symmetric(sys.A, sys.standard ? nullptr : &sys.B, nev, opt);
      spec.nu = s + 1;
      result.subproblems[static_cast<std::size_t>(s)] = std::move(spec);
    });
  };
  solve_slots(all_slots);

  bool unconverged = false;
  for (int round = 0;; ++round) {
    result.merged = merge_spectra(result.subproblems, dims, n_e);
    std::vector<int> again;
    for (int s = 0; s < nc; ++s) {
      const int size = systems[static_cast<std::size_t>(s)].size();
      if (result.merged.leftover[static_cast<std::size_t>(s)] == 0 && result.requested_nev[static_cast<std::size_t>(s)] < size) {
        again.push_back(s);
      }
    }
    if (again.empty()) break;
    if (round == options.max_resolves) {
      result.merged.incomplete = true;
      break;
    }
    for (int s : again) result.requested_nev[static_cast<std::size_t>(s)] *= 2;
    solve_slots(again);
    ++result.resolve_rounds;
  }
  for (const auto& sub : result.subproblems) unconverged = unconverged || !sub.converged;
  if (unconverged) result.merged.incomplete = true;
  return result;
}

SubproblemSpectrum solve_direct(const Problem& problem, const SymmetricGrid& grid, const Discretization& disc, int n_e,
                                const DecomposeOptions& options) {
  const FullSystem full = assemble_full(problem, grid, disc);
  SolveOptions opt = solver_options_for(disc.scheme, options.solver);
  opt.threads = std::max(1, options.threads);
  SubproblemSpectrum s = solve_symmetric(full.A, full.standard ? nullptr : &full.B, n_e, opt);
  s.nu = 0;
  return s;
}

double lifted_orthogonality(const DecomposedResult& result, const OrbitMap& orbits, const PointGroup& group) {
  std::vector<GridFunction> lifted;
  std::vector<std::pair<int, int>> labels;
  for (const auto& e : result.merged.entries) {
    const auto& sub = result.subproblems[static_cast<std::size_t>(e.slot)];
    GridFunction u = lift(sub.eigenvectors.col(e.local), orbits, group, e.nu, e.l);
    u /= u.norm();
    lifted.push_back(std::move(u));
    labels.emplace_back(e.nu, e.l);
  }
  double worst = 0.0;
  for (std::size_t a = 0; a < lifted.size(); ++a) {
    for (std::size_t b = a + 1; b < lifted.size(); ++b) {
      if (labels[a] == labels[b]) continue;
      worst = std::max(worst, std::abs(lifted[a].dot(lifted[b])));
    }
  }
  return worst;
}

}  // namespace symdecomp
