#include "symdecomp/app.hpp"

#include "symdecomp/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

namespace symdecomp {

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

SymmetricGrid grid_of(const RunConfig& c) { return build_grid(c.dim, c.half_width, c.partitions); }

DecomposeOptions decompose_options(const RunConfig& c) {
  DecomposeOptions opt;
  opt.extra = c.n_a;
  opt.threads = c.threads;
  opt.solver.tol = c.tol;
  return opt;
}

double relative_gap(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

std::vector<double> first_values(const DecomposedResult& r) {
  std::vector<double> v;
  for (const auto& e : r.merged.entries) v.push_back(e.lambda);
  return v;
}

std::vector<double> first_values(const SubproblemSpectrum& s, int n) {
  std::vector<double> v;
  for (int i = 0; i < std::min<int>(n, static_cast<int>(s.eigenvalues.size())); ++i) v.push_back(s.eigenvalues(i));
  return v;
}

double max_discrepancy(const std::vector<double>& a, const std::vector<double>& ref) {
  if (a.size() != ref.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, relative_gap(a[i], ref[i]));
  return worst;
}

}  // namespace

void write_spectrum_csv(const MergedSpectrum& merged, std::ostream& out) {
  out << "index,lambda,nu,l,residual,subproblem_index\n";
  int i = 1;
  for (const auto& e : merged.entries) {
    out << i++ << ',' << fmt("%.15e", e.lambda) << ',' << e.nu << ',' << e.l << ',' << fmt("%.3e", e.residual) << ','
        << e.local + 1 << '\n';
  }
}

void write_spectrum_csv(const SubproblemSpectrum& direct, int n_e, std::ostream& out) {
  out << "index,lambda,nu,l,residual,subproblem_index\n";
  const int n = std::min<int>(n_e, static_cast<int>(direct.eigenvalues.size()));
  for (int i = 0; i < n; ++i) {
    const double r = i < static_cast<int>(direct.residuals.size()) ? direct.residuals[static_cast<std::size_t>(i)] : 0.0;
    out << i + 1 << ',' << fmt("%.15e", direct.eigenvalues(i)) << ",,," << fmt("%.3e", r) << ",\n";
  }
}

void write_stats_csv(const std::vector<StatsRow>& rows, std::ostream& out) {
  out << "problem,order,nev,iterations,opx,time_mv,time_total\n";
  for (const auto& r : rows) {
    out << r.problem << ',' << r.order << ',' << r.nev << ',' << r.stats.iterations << ',' << r.stats.opx_count << ','
        << fmt("%.6f", r.stats.time_mv) << ',' << fmt("%.6f", r.stats.time_total) << '\n';
  }
}

SolveReport run_solve(const RunConfig& config, bool write_files) {
  validate_config(config);
  const Problem problem = make_problem(config);
  const SymmetricGrid grid = grid_of(config);
  const Discretization disc{config.scheme};
  const DecomposeOptions opt = decompose_options(config);

  SolveReport report;
  const bool decomposed = config.decomposed() && config.mode != RunMode::Direct;
  const bool direct = !config.decomposed() || config.mode != RunMode::Decomposed;

  if (decomposed) {
    const PointGroup group = resolve_group(config.group);
    DecomposedResult r = solve_decomposed(problem, grid, disc, group, config.n_e, opt);
    for (std::size_t s = 0; s < r.subproblems.size(); ++s) {
      const auto& sub = r.subproblems[s];
      report.stats.push_back({"nu=" + std::to_string(sub.nu), static_cast<int>(sub.eigenvectors.rows()),
                              r.requested_nev[s], sub.stats});
      report.converged = report.converged && sub.converged;
    }
    report.converged = report.converged && !r.merged.incomplete;
    report.decomposed = std::move(r);
  }
  if (direct) {
    SubproblemSpectrum s = solve_direct(problem, grid, disc, config.n_e, opt);
    report.stats.insert(report.stats.begin(), StatsRow{"original", grid.size(), config.n_e, s.stats});
    report.converged = report.converged && s.converged;
    report.direct = std::move(s);
  }
  if (report.decomposed && report.direct) {
    report.discrepancy = max_discrepancy(first_values(*report.decomposed), first_values(*report.direct, config.n_e));
  }

  if (!write_files) return report;
  std::filesystem::create_directories(config.output_dir);
  const auto emit = [&](const std::string& name, const std::string& text) {
    const auto path = config.output_dir / name;
    write_file(path, text);
    report.files.push_back(path);
  };
  std::ostringstream spectrum, stats;
  if (report.decomposed) {
    write_spectrum_csv(report.decomposed->merged, spectrum);
  } else {
    write_spectrum_csv(*report.direct, config.n_e, spectrum);
  }
  emit("spectrum.csv", spectrum.str());
  write_stats_csv(report.stats, stats);
  emit("stats.csv", stats.str());
  if (report.decomposed && report.direct) {
    std::ostringstream d, cmp;
    write_spectrum_csv(*report.direct, config.n_e, d);
    emit("spectrum_direct.csv", d.str());
    const auto a = first_values(*report.decomposed);
    const auto b = first_values(*report.direct, config.n_e);
    cmp << "index,lambda_decomposed,lambda_direct,relative_difference\n";
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
      cmp << i + 1 << ',' << fmt("%.15e", a[i]) << ',' << fmt("%.15e", b[i]) << ',' << fmt("%.3e", relative_gap(a[i], b[i]))
          << '\n';
    }
    emit("comparison.csv", cmp.str());
  }
  return report;
}

ValidateReport run_validate(const RunConfig& config) {
  validate_config(config);
  if (!config.decomposed()) throw Error(ErrorCode::ConfigError, "validate needs a symmetry group");
  const Problem problem = make_problem(config);
  const SymmetricGrid grid = grid_of(config);
  const Discretization disc{config.scheme};
  const PointGroup group = resolve_group(config.group);
  const OrbitMap orbits = orbit_decomposition(grid, group);
  const DecomposeOptions opt = decompose_options(config);

  ValidateReport report;
  report.order = grid.size();
  report.dense_reference = grid.size() <= kDenseGuard;
  if (!report.dense_reference && config.mode != RunMode::Both) {
    throw Error(ErrorCode::SizeGuard, std::to_string(grid.size()) + " unknowns exceed the dense limit of " +
                                          std::to_string(kDenseGuard) + "; use mode = both for a Lanczos reference");
  }

  const DecomposedResult r = solve_decomposed(problem, grid, disc, group, config.n_e, opt);
  std::vector<double> reference;
  if (report.dense_reference) {
    const FullSystem full = assemble_full(problem, grid, disc);
    const SubproblemSpectrum all = solve_dense(full.A, full.standard ? nullptr : &full.B);
    reference = first_values(all, config.n_e);
    for (int nu = 1; nu <= group.num_irreps(); ++nu) {
      const ReducedSystem reduced = assemble_reduced(problem, grid, disc, orbits, group, nu);
      const SabSet sab = construct_sab(grid, orbits, group, nu);
      const EquivalenceReport eq = verify_equivalence(reduced, sab, full, group);
      report.equivalence_max = std::max({report.equivalence_max, eq.a_deviation, eq.b_deviation, eq.spectrum_deviation});
      report.equivalence.push_back(eq);
    }
  } else {
    reference = first_values(solve_direct(problem, grid, disc, config.n_e, opt), config.n_e);
  }
  report.discrepancy = max_discrepancy(first_values(r), reference);
  report.orthogonality = lifted_orthogonality(r, orbits, group);
  report.passed = !r.merged.incomplete && report.discrepancy <= config.validate_tol && report.orthogonality <= 1e-10 &&
                  report.equivalence_max <= 1e-10;
  return report;
}

void print_validate(const ValidateReport& r, std::ostream& out) {
  out << "unknowns                 " << r.order << (r.dense_reference ? " (dense reference)" : " (Lanczos reference)")
      << '\n';
  out << "max relative discrepancy " << fmt("%.3e", r.discrepancy) << '\n';
  out << "cross-block orthogonality " << fmt("%.3e", r.orthogonality) << '\n';
  if (r.equivalence.empty()) {
    out << "basis equivalence        skipped\n";
  } else {
    for (std::size_t i = 0; i < r.equivalence.size(); ++i) {
      const auto& e = r.equivalence[i];
      out << "equivalence nu=" << i + 1 << "  A " << fmt("%.3e", e.a_deviation) << "  B " << fmt("%.3e", e.b_deviation)
          << "  spectrum " << fmt("%.3e", e.spectrum_deviation) << '\n';
    }
  }
  out << (r.passed ? "PASS" : "FAIL") << '\n';
}

std::vector<double> exact_eigenvalues(const RunConfig& config, int n) {
  if (config.problem == "anharmonic") return {};
  const int d = config.dim;
  // Enumerate quantum numbers per axis until the n-th value is certain.
  std::vector<double> values;
  for (int kmax = 4;; kmax *= 2) {
    values.clear();
    const int base = config.problem == "laplacian" ? 1 : 0;
    std::vector<int> q(static_cast<std::size_t>(d), base);
    while (true) {
      double v = 0.0;
      if (config.problem == "laplacian") {
        const double w = M_PI / (2.0 * config.half_width);
        for (int k : q) v += w * w * k * k;
      } else {
        for (int k : q) v += k + 0.5;
      }
      values.push_back(v);
      int axis = 0;
      while (axis < d && ++q[static_cast<std::size_t>(axis)] > kmax) q[static_cast<std::size_t>(axis++)] = base;
      if (axis == d) break;
    }
    std::sort(values.begin(), values.end());
    // The smallest value with some index at kmax + 1 bounds what is missing.
    double bound = 0.0;
    if (config.problem == "laplacian") {
      const double w = M_PI / (2.0 * config.half_width);
      bound = w * w * ((kmax + 1.0) * (kmax + 1.0) + (d - 1));
    } else {
      bound = kmax + 1.0 + 0.5 * d;
    }
    if (static_cast<int>(values.size()) >= n && values[static_cast<std::size_t>(n - 1)] < bound) break;
  }
  values.resize(static_cast<std::size_t>(n));
  return values;
}

double loglog_slope(const std::vector<double>& h, const std::vector<double>& e) {
  const std::size_t n = std::min(h.size(), e.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::log(h[i]);
    const double y = std::log(std::max(e[i], 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double den = n * sxx - sx * sx;
  return den == 0.0 ? 0.0 : (n * sxy - sx * sy) / den;
}

ConvergenceReport run_convergence(const RunConfig& config) {
  validate_config(config);
  if (config.levels.size() < 3) throw Error(ErrorCode::ConfigError, "convergence needs at least three grid levels");
  ConvergenceReport rep;
  rep.levels = config.levels;
  std::sort(rep.levels.begin(), rep.levels.end());
  rep.levels.erase(std::unique(rep.levels.begin(), rep.levels.end()), rep.levels.end());
  if (rep.levels.size() < 3) throw Error(ErrorCode::ConfigError, "convergence needs at least three distinct levels");

  const std::vector<double> exact = exact_eigenvalues(config, config.n_e);
  rep.richardson = exact.empty();
  rep.indices = config.indices;
  if (rep.indices.empty()) {
    if (rep.richardson) {
      rep.indices.resize(static_cast<std::size_t>(config.n_e));
      std::iota(rep.indices.begin(), rep.indices.end(), 1);
    } else {
      // First index of every distinct exact value.
      for (int i = 0; i < config.n_e; ++i) {
        if (i == 0 || exact[static_cast<std::size_t>(i)] - exact[static_cast<std::size_t>(i - 1)] > 1e-9) rep.indices.push_back(i + 1);
      }
    }
  }

  const Problem problem = make_problem(config);
  const Discretization disc{config.scheme};
  const DecomposeOptions opt = decompose_options(config);
  for (int level : rep.levels) {
    const SymmetricGrid grid = build_grid(config.dim, config.half_width, std::vector<int>(static_cast<std::size_t>(config.dim), level));
    std::vector<double> values;
    if (config.decomposed()) {
      const DecomposedResult r = solve_decomposed(problem, grid, disc, resolve_group(config.group), config.n_e, opt);
      if (r.merged.incomplete) throw Error(ErrorCode::IncompleteSpectrum, "level " + std::to_string(level));
      values = first_values(r);
    } else {
      values = first_values(solve_direct(problem, grid, disc, config.n_e, opt), config.n_e);
    }
    std::vector<double> row;
    for (int i : rep.indices) row.push_back(values.at(static_cast<std::size_t>(i - 1)));
    rep.h.push_back(grid.spacing(0));
    rep.lambda.push_back(std::move(row));
  }

  const std::size_t nl = rep.levels.size();
  for (std::size_t k = 0; k < rep.indices.size(); ++k) {
    double ref = 0.0;
    if (!rep.richardson) {
      ref = exact[static_cast<std::size_t>(rep.indices[k] - 1)];
    } else {
      // Second-order extrapolation from the two finest levels.
      const double fine = rep.lambda[nl - 1][k];
      const double coarse = rep.lambda[nl - 2][k];
      const double ratio = rep.h[nl - 2] / rep.h[nl - 1];
      ref = fine + (fine - coarse) / (ratio * ratio - 1.0);
    }
    rep.reference.push_back(ref);
  }
  rep.error.assign(nl, std::vector<double>(rep.indices.size(), 0.0));
  for (std::size_t lvl = 0; lvl < nl; ++lvl) {
    for (std::size_t k = 0; k < rep.indices.size(); ++k) rep.error[lvl][k] = std::abs(rep.lambda[lvl][k] - rep.reference[k]);
  }
  for (std::size_t k = 0; k < rep.indices.size(); ++k) {
    std::vector<double> e;
    for (std::size_t lvl = 0; lvl < nl; ++lvl) e.push_back(rep.error[lvl][k]);
    rep.slope.push_back(loglog_slope(rep.h, e));
  }
  return rep;
}

void write_convergence_csv(const ConvergenceReport& r, std::ostream& out) {
  out << "partitions,h";
  for (int i : r.indices) out << ",lambda" << i << ",e" << i;
  out << '\n';
  for (std::size_t lvl = 0; lvl < r.levels.size(); ++lvl) {
    out << r.levels[lvl] << ',' << fmt("%.10g", r.h[lvl]);
    for (std::size_t k = 0; k < r.indices.size(); ++k) {
      out << ',' << fmt("%.15e", r.lambda[lvl][k]) << ',' << fmt("%.6e", r.error[lvl][k]);
    }
    out << '\n';
  }
  out << (r.richardson ? "reference,extrapolated" : "reference,exact");
  for (double v : r.reference) out << ',' << fmt("%.15e", v) << ',';
  out << '\n' << "slope,";
  for (double s : r.slope) out << ",," << fmt("%.4f", s);
  out << '\n';
}

PredictReport run_predict(int g, int n_sub, double theta1, double omega, std::optional<double> theta2) {
  PredictReport r;
  r.inputs.g = g;
  r.inputs.dims.assign(static_cast<std::size_t>(std::max(n_sub, 1)), 1);
  r.inputs.theta1 = theta1;
  r.inputs.theta2 = theta2.value_or(theta1);
  r.inputs.omega = omega;
  r.speedup = predict_speedup(g, n_sub, theta1, r.inputs.theta2, omega);
  r.flops_ratio = decomposed_flops_ratio(r.inputs);
  return r;
}

void print_predict(const PredictReport& r, std::ostream& out) {
  out << "g          " << r.inputs.g << '\n'
      << "n_sub      " << r.inputs.n_sub() << '\n'
      << "theta1     " << fmt("%.4f", r.inputs.theta1) << '\n'
      << "theta2     " << fmt("%.4f", r.inputs.theta2) << '\n'
      << "omega      " << fmt("%.4f", r.inputs.omega) << '\n'
      << "flop ratio " << fmt("%.6f", r.flops_ratio) << '\n'
      << "speedup    " << fmt("%.2f", r.speedup) << '\n';
}

std::vector<GroupStatus> run_groups() {
  std::vector<GroupStatus> out;
  for (const auto& name : builtin_group_names()) {
    const PointGroup g = builtin_group(name);
    GroupStatus s;
    s.name = name;
    s.order = g.order();
    s.classes = g.num_irreps();
    s.subproblems = g.num_subproblems();
    for (const auto& ir : g.irreps()) s.dims.push_back(ir.dim);
    s.orthogonality_deviation = verify_great_orthogonality(g);
    s.verified = verify_group_axioms(g).ok() && s.orthogonality_deviation <= 1e-12;
    out.push_back(std::move(s));
  }
  return out;
}

void print_groups(const std::vector<GroupStatus>& groups, std::ostream& out) {
  out << std::left << std::setw(10) << "group" << std::setw(7) << "order" << std::setw(9) << "irreps" << std::setw(8)
      << "n_sub" << std::setw(18) << "dims" << "status\n";
  for (const auto& g : groups) {
    std::string dims;
    for (int d : g.dims) dims += (dims.empty() ? "" : ",") + std::to_string(d);
    out << std::left << std::setw(10) << g.name << std::setw(7) << g.order << std::setw(9) << g.classes << std::setw(8)
        << g.subproblems << std::setw(18) << dims << (g.verified ? "verified" : "FAILED") << '\n';
  }
}

std::vector<int> allocate_workers(const std::vector<int>& sizes, int budget) {
  const int n = static_cast<int>(sizes.size());
  if (n == 0) return {};
  // Too small a budget: groups take turns on a single worker each.
  if (budget <= n) return std::vector<int>(static_cast<std::size_t>(n), 1);
  const double total = std::accumulate(sizes.begin(), sizes.end(), 0.0);
  std::vector<int> w(static_cast<std::size_t>(n), 1);
  int left = budget - n;
  std::vector<double> want(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) want[static_cast<std::size_t>(s)] = budget * sizes[static_cast<std::size_t>(s)] / total - 1.0;
  // Largest remaining demand first; ties go to the lower slot.
  while (left > 0) {
    int best = 0;
    for (int s = 1; s < n; ++s) {
      if (want[static_cast<std::size_t>(s)] > want[static_cast<std::size_t>(best)]) best = s;
    }
    ++w[static_cast<std::size_t>(best)];
    want[static_cast<std::size_t>(best)] -= 1.0;
    --left;
  }
  return w;
}

long halo_bytes(const SparseSym& a, int workers) {
  const int n = static_cast<int>(a.rows());
  workers = std::clamp(workers, 1, std::max(n, 1));
  long bytes = 0;
  for (int w = 0; w < workers; ++w) {
    const int lo = static_cast<int>(static_cast<long>(n) * w / workers);
    const int hi = static_cast<int>(static_cast<long>(n) * (w + 1) / workers);
    std::set<int> remote;
    for (int i = lo; i < hi; ++i) {
      for (SparseSym::InnerIterator it(a, i); it; ++it) {
        if (it.col() < lo || it.col() >= hi) remote.insert(static_cast<int>(it.col()));
      }
    }
    bytes += 8L * static_cast<long>(remote.size());
  }
  return bytes;
}

CommReport communication_accounting(const RunConfig& config, const SolveReport* solved) {
  validate_config(config);
  const Problem problem = make_problem(config);
  const SymmetricGrid grid = grid_of(config);
  const Discretization disc{config.scheme};
  CommReport rep;
  rep.budget = config.threads;

  const FullSystem full = assemble_full(problem, grid, disc);
  rep.direct.order = grid.size();
  rep.direct.workers = config.threads;
  rep.direct.halo_bytes = halo_bytes(full.A, config.threads);
  if (!full.standard) rep.direct.halo_bytes += halo_bytes(full.B, config.threads);

  if (config.decomposed()) {
    const PointGroup group = resolve_group(config.group);
    const OrbitMap orbits = orbit_decomposition(grid, group);
    std::vector<ReducedSystem> systems;
    std::vector<int> sizes;
    for (int nu = 1; nu <= group.num_irreps(); ++nu) {
      systems.push_back(assemble_reduced(problem, grid, disc, orbits, group, nu));
      sizes.push_back(systems.back().size());
    }
    const std::vector<int> workers = allocate_workers(sizes, config.threads);
    // Global numbering: subproblems back to back. A product in group ν
    // touches exactly the columns of its own rows; anything outside the
    // block would be a cross-group exchange.
    int offset = 0;
    for (std::size_t s = 0; s < systems.size(); ++s) {
      const auto& sys = systems[s];
      WorkerGroup wg;
      wg.nu = sys.nu;
      wg.order = sys.size();
      wg.workers = workers[s];
      const auto count_outside = [&](const SparseSym& m) {
        long outside = 0;
        for (int i = 0; i < m.outerSize(); ++i) {
          for (SparseSym::InnerIterator it(m, i); it; ++it) {
            const long global = offset + it.col();
            if (global < offset || global >= offset + sys.size()) ++outside;
          }
        }
        return outside;
      };
      wg.cross_group_exchanges = count_outside(sys.A) + (sys.standard ? 0 : count_outside(sys.B));
      wg.cross_group_bytes = 8 * wg.cross_group_exchanges;
      wg.halo_bytes = halo_bytes(sys.A, wg.workers) + (sys.standard ? 0 : halo_bytes(sys.B, wg.workers));
      offset += sys.size();
      rep.decomposed.push_back(wg);
    }
  }

  if (solved) {
    for (const auto& row : solved->stats) {
      if (row.problem == "original") {
        rep.direct.opx = row.stats.opx_count;
      } else {
        const int nu = std::stoi(row.problem.substr(3));
        for (auto& wg : rep.decomposed) {
          if (wg.nu == nu) wg.opx = row.stats.opx_count;
        }
      }
    }
  }
  for (const auto& wg : rep.decomposed) {
    const long products = std::max(wg.opx, 1L);
    rep.cross_group_bytes_total += wg.cross_group_bytes * products;
    rep.halo_bytes_total_decomposed += wg.halo_bytes * products;
  }
  rep.halo_bytes_total_direct = rep.direct.halo_bytes * std::max(rep.direct.opx, 1L);
  return rep;
}

void print_comm(const CommReport& r, std::ostream& out) {
  out << "thread budget " << r.budget << '\n';
  out << std::left << std::setw(10) << "block" << std::setw(9) << "order" << std::setw(9) << "workers" << std::setw(12)
      << "cross_ops" << std::setw(13) << "cross_bytes" << std::setw(13) << "halo_bytes" << "products\n";
  const auto line = [&](const std::string& name, const WorkerGroup& w) {
    out << std::left << std::setw(10) << name << std::setw(9) << w.order << std::setw(9) << w.workers << std::setw(12)
        << w.cross_group_exchanges << std::setw(13) << w.cross_group_bytes << std::setw(13) << w.halo_bytes << w.opx
        << '\n';
  };
  for (const auto& w : r.decomposed) line("nu=" + std::to_string(w.nu), w);
  line("original", r.direct);
  out << "cross-group bytes, decomposed solve: " << r.cross_group_bytes_total << '\n'
      << "halo bytes, decomposed solve:        " << r.halo_bytes_total_decomposed << '\n'
      << "halo bytes, direct solve:            " << r.halo_bytes_total_direct << '\n';
}

std::vector<std::filesystem::path> export_matrices(const RunConfig& config, int nu) {
  validate_config(config);
  const Problem problem = make_problem(config);
  const SymmetricGrid grid = grid_of(config);
  const Discretization disc{config.scheme};
  std::filesystem::create_directories(config.output_dir);
  std::vector<std::filesystem::path> paths;
  const auto put = [&](const SparseSym& m, const std::string& name) {
    const auto p = config.output_dir / name;
    write_matrix_market(m, p);
    paths.push_back(p);
  };
  if (nu == 0) {
    const FullSystem full = assemble_full(problem, grid, disc);
    put(full.A, "A_full.mtx");
    put(full.B, "B_full.mtx");
  } else {
    const PointGroup group = resolve_group(config.group);
    const OrbitMap orbits = orbit_decomposition(grid, group);
    const ReducedSystem sys = assemble_reduced(problem, grid, disc, orbits, group, nu);
    put(sys.A, "A_nu" + std::to_string(nu) + ".mtx");
    put(sys.B, "B_nu" + std::to_string(nu) + ".mtx");
  }
  return paths;
}

}  // namespace symdecomp
