#include "symdecomp/eigensolve.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

namespace symdecomp {

namespace {

using Clock = std::chrono::steady_clock;
using ColMajor = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void check_square(const SparseSym& a, const SparseSym* b) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::ShapeMismatch, "matrix is not square");
  if (b && (b->rows() != a.rows() || b->cols() != a.cols())) throw Error(ErrorCode::ShapeMismatch, "A and B differ in shape");
}

struct Pair {
  double lambda;
  Eigen::VectorXd v;
};

void sort_into(std::vector<Pair>& pairs, SubproblemSpectrum& out, const SparseSym& a, const SparseSym* b) {
  std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) { return x.lambda < y.lambda; });
  const int count = static_cast<int>(pairs.size());
  out.eigenvalues.resize(count);
  out.eigenvectors.resize(a.rows(), count);
  out.residuals.assign(static_cast<std::size_t>(count), 0.0);
  for (int i = 0; i < count; ++i) {
    out.eigenvalues(i) = pairs[static_cast<std::size_t>(i)].lambda;
    out.eigenvectors.col(i) = pairs[static_cast<std::size_t>(i)].v;
    out.residuals[static_cast<std::size_t>(i)] = residual_norm(a, b, out.eigenvalues(i), out.eigenvectors.col(i));
  }
}

// θ ↦ λ, and which Ritz values are wanted.
struct Spectral {
  SolveMode mode;
  double sigma;
  double to_lambda(double theta) const { return mode == SolveMode::ShiftInvert ? sigma + 1.0 / theta : theta; }
  // Larger key = more wanted.
  double key(double theta) const { return mode == SolveMode::ShiftInvert ? std::abs(theta) : -theta; }
};

struct RoundResult {
  std::vector<Pair> pairs;
  bool converged = true;
};

// One IRLM run for nev pairs on the complement of `locked`.
RoundResult irlm_round(const LanczosOperator& op, const Spectral& sp, int nev, double tol, int max_restarts,
                       std::uint64_t seed, const Eigen::MatrixXd& locked, const Eigen::MatrixXd& locked_b,
                       const SparseSym& a, const SparseSym* b, SolveStats& stats, LanczosCounters& counters) {
  const int free_dim = op.n - static_cast<int>(locked.cols());
  const int m = std::min(krylov_dimension(nev), free_dim);
  const int k = nev;
  LanczosState state = lanczos_start(op, m, pseudo_random_vector(op.n, seed), locked, locked_b);
  state.fresh_seed = seed ^ 0xa5a5a5a5a5a5a5a5ULL;

  const double eps23 = std::pow(std::numeric_limits<double>::epsilon(), 2.0 / 3.0);
  double inner_tol = tol;
  RoundResult result;
  for (int it = 0; it < max_restarts; ++it) {
    lanczos_extend(op, state, m - state.k, counters);
    ++stats.iterations;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(state.H.topLeftCorner(m, m));
    const Eigen::VectorXd& theta = es.eigenvalues();
    std::vector<int> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return sp.key(theta(x)) > sp.key(theta(y)); });

    const double beta = std::sqrt(std::max(0.0, state.f.dot(state.Bf)));
    bool done = true;
    for (int i = 0; i < k; ++i) {
      const int c = order[static_cast<std::size_t>(i)];
      const double estimate = std::abs(beta * es.eigenvectors()(m - 1, c));
      if (estimate > inner_tol * std::max(std::abs(theta(c)), eps23)) {
        done = false;
        break;
      }
    }
    if (done || it + 1 == max_restarts || m == free_dim) {
      std::vector<Pair> pairs;
      double worst = 0.0;
      for (int i = 0; i < k; ++i) {
        const int c = order[static_cast<std::size_t>(i)];
        Pair p{sp.to_lambda(theta(c)), state.V.leftCols(m) * es.eigenvectors().col(c)};
        worst = std::max(worst, residual_norm(a, b, p.lambda, p.v));
        pairs.push_back(std::move(p));
      }
      // Accept on the true residual; otherwise tighten the Ritz test.
      if (worst <= tol || m == free_dim || inner_tol < 1e-15 || it + 1 == max_restarts) {
        result.pairs = std::move(pairs);
        result.converged = worst <= tol || m == free_dim;
        if (it + 1 == max_restarts && !done) result.converged = false;
        return result;
      }
      inner_tol *= 0.01;
    }

    std::vector<double> shifts;
    for (int i = k; i < m; ++i) shifts.push_back(theta(order[static_cast<std::size_t>(i)]));
    implicit_restart(state, shifts);
  }
  result.converged = false;
  return result;
}

}  // namespace

double residual_norm(const SparseSym& a, const SparseSym* b, double lambda, const Eigen::VectorXd& v) {
  const Eigen::VectorXd bv = b ? Eigen::VectorXd(*b * v) : v;
  const Eigen::VectorXd r = a * v - lambda * bv;
  const double denom = bv.norm();
  return denom > 0.0 ? r.norm() / denom : r.norm();
}

SubproblemSpectrum solve_dense(const SparseSym& a, const SparseSym* b) {
  check_square(a, b);
  const auto t0 = Clock::now();
  SubproblemSpectrum out;
  const Eigen::MatrixXd da(a);
  std::vector<Pair> pairs;
  if (b && !is_identity(*b)) {
    const Eigen::MatrixXd db(*b);
    if (Eigen::LLT<Eigen::MatrixXd>(db).info() != Eigen::Success) {
      throw Error(ErrorCode::IndefiniteMass, "mass matrix is not positive definite");
    }
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(da, db);
    for (int i = 0; i < da.rows(); ++i) pairs.push_back({es.eigenvalues()(i), es.eigenvectors().col(i)});
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(da);
    for (int i = 0; i < da.rows(); ++i) pairs.push_back({es.eigenvalues()(i), es.eigenvectors().col(i)});
  }
  sort_into(pairs, out, a, b);
  out.stats.iterations = 1;
  out.stats.time_total = seconds_since(t0);
  return out;
}

SubproblemSpectrum solve_symmetric(const SparseSym& a, const SparseSym* b, int nev, const SolveOptions& options) {
  check_square(a, b);
  const int n = static_cast<int>(a.rows());
  if (nev < 1) throw Error(ErrorCode::InvalidArgument, "nev must be at least 1");
  if (!(options.tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  nev = std::min(nev, n);
  if (b && is_identity(*b)) b = nullptr;
  const auto t0 = Clock::now();

  if (n <= options.dense_threshold || krylov_dimension(nev) >= n) {
    SubproblemSpectrum all = solve_dense(a, b);
    SubproblemSpectrum out;
    std::vector<int> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    if (options.mode == SolveMode::ShiftInvert) {
      std::stable_sort(idx.begin(), idx.end(), [&](int x, int y) {
        return std::abs(all.eigenvalues(x) - options.sigma) < std::abs(all.eigenvalues(y) - options.sigma);
      });
    }
    std::vector<Pair> pairs;
    for (int i = 0; i < nev; ++i) {
      const int c = idx[static_cast<std::size_t>(i)];
      pairs.push_back({all.eigenvalues(c), all.eigenvectors.col(c)});
    }
    sort_into(pairs, out, a, b);
    out.stats.iterations = 1;
    out.stats.time_total = seconds_since(t0);
    return out;
  }

  // Operators.
  LanczosOperator op;
  op.n = n;
  const int threads = options.threads;
  Eigen::SimplicialLDLT<ColMajor> shifted;
  Eigen::SimplicialLLT<ColMajor> mass_factor;
  if (b) {
    mass_factor.compute(ColMajor(*b));
    if (mass_factor.info() != Eigen::Success) throw Error(ErrorCode::IndefiniteMass, "mass matrix factorization failed");
    op.mass = [b, threads](const Eigen::VectorXd& x, Eigen::VectorXd& y) { spmv(*b, x, y, threads); };
  }
  if (options.mode == SolveMode::ShiftInvert) {
    ColMajor s = ColMajor(a);
    if (b) {
      s -= options.sigma * ColMajor(*b);
    } else {
      ColMajor eye(n, n);
      eye.setIdentity();
      s -= options.sigma * eye;
    }
    shifted.compute(s);
    if (shifted.info() != Eigen::Success) throw Error(ErrorCode::IndefiniteMass, "A − σB factorization failed");
    op.apply = [&shifted](const Eigen::VectorXd&, const Eigen::VectorXd& bx, Eigen::VectorXd& y) { y = shifted.solve(bx); };
  } else if (b) {
    op.apply = [&a, &mass_factor, threads](const Eigen::VectorXd& x, const Eigen::VectorXd&, Eigen::VectorXd& y) {
      Eigen::VectorXd ax;
      spmv(a, x, ax, threads);
      y = mass_factor.solve(ax);
    };
  } else {
    op.apply = [&a, threads](const Eigen::VectorXd& x, const Eigen::VectorXd&, Eigen::VectorXd& y) { spmv(a, x, y, threads); };
  }

  const Spectral sp{options.mode, options.sigma};
  SubproblemSpectrum out;
  LanczosCounters counters;
  std::vector<Pair> found;
  Eigen::MatrixXd locked(n, 0), locked_b(n, 0);
  bool converged = true;

  // Distance measure used to compare eigenvalues: λ itself in standard mode,
  // |λ − σ| in shift-invert mode.
  const auto dist = [&](double lambda) {
    return options.mode == SolveMode::ShiftInvert ? std::abs(lambda - options.sigma) : lambda;
  };

  for (int round = 0; round < options.max_rounds; ++round) {
    const int free_dim = n - static_cast<int>(locked.cols());
    if (free_dim <= nev) break;
    RoundResult rr = irlm_round(op, sp, nev, options.tol, options.max_restarts,
                                options.seed + 0x1000193ULL * static_cast<std::uint64_t>(round), locked, locked_b, a, b,
                                out.stats, counters);
    converged = converged && rr.converged;
    if (!rr.converged) {
      for (auto& p : rr.pairs) found.push_back(std::move(p));
      break;
    }

    double cutoff = std::numeric_limits<double>::infinity();
    if (static_cast<int>(found.size()) >= nev) {
      std::vector<double> d;
      for (const auto& p : found) d.push_back(dist(p.lambda));
      std::nth_element(d.begin(), d.begin() + (nev - 1), d.end());
      cutoff = d[static_cast<std::size_t>(nev - 1)];
    }
    const double margin = 1e-8 * std::max(1.0, std::abs(cutoff));
    bool any_new = false;
    for (auto& p : rr.pairs) {
      if (dist(p.lambda) <= cutoff + margin) any_new = true;
    }
    if (!any_new) break;

    // Lock this round's vectors (B-orthonormal among themselves and to the locked set).
    const int add = static_cast<int>(rr.pairs.size());
    Eigen::MatrixXd grown(n, locked.cols() + add), grown_b(n, locked.cols() + add);
    grown.leftCols(locked.cols()) = locked;
    grown_b.leftCols(locked.cols()) = locked_b;
    for (int i = 0; i < add; ++i) {
      Eigen::VectorXd v = rr.pairs[static_cast<std::size_t>(i)].v;
      Eigen::VectorXd bv = b ? Eigen::VectorXd(*b * v) : v;
      const int cols = static_cast<int>(locked.cols()) + i;
      for (int pass = 0; pass < 2; ++pass) {
        const Eigen::VectorXd c = grown_b.leftCols(cols).transpose() * v;
        v -= grown.leftCols(cols) * c;
        bv -= grown_b.leftCols(cols) * c;
      }
      const double nrm = std::sqrt(v.dot(bv));
      grown.col(cols) = v / nrm;
      grown_b.col(cols) = bv / nrm;
      rr.pairs[static_cast<std::size_t>(i)].v = grown.col(cols);
    }
    locked = std::move(grown);
    locked_b = std::move(grown_b);
    for (auto& p : rr.pairs) found.push_back(std::move(p));
  }

  std::stable_sort(found.begin(), found.end(), [&](const Pair& x, const Pair& y) { return dist(x.lambda) < dist(y.lambda); });
  if (static_cast<int>(found.size()) > nev) found.resize(static_cast<std::size_t>(nev));
  sort_into(found, out, a, b);
  out.converged = converged && static_cast<int>(found.size()) == nev;
  out.stats.opx_count = counters.opx;
  out.stats.time_mv = counters.time_mv;
  out.stats.time_total = seconds_since(t0);
  out.stats.time_mv = std::min(out.stats.time_mv, out.stats.time_total);
  if (!out.converged && options.throw_on_max_iterations) {
    throw MaxIterationsError("restart budget exhausted with " + std::to_string(found.size()) + " of " +
                                 std::to_string(nev) + " pairs",
                             out);
  }
  return out;
}

}  // namespace symdecomp
