#include "symdecomp/lanczos.hpp"

#include "symdecomp/error.hpp"

#include <chrono>
#include <cmath>

namespace symdecomp {

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void apply_mass(const LanczosOperator& op, const Eigen::VectorXd& x, Eigen::VectorXd& y, LanczosCounters* counters) {
  if (!op.mass) {
    y = x;
    return;
  }
  const auto t0 = Clock::now();
  op.mass(x, y);
  if (counters) counters->time_mv += std::chrono::duration<double>(Clock::now() - t0).count();
}

// x ← x − Q (QBᵀ x) twice against each basis; bx kept in step.
void orthogonalize(Eigen::VectorXd& x, Eigen::VectorXd& bx, const Eigen::MatrixXd& q, const Eigen::MatrixXd& bq,
                   int cols) {
  if (cols == 0) return;
  for (int pass = 0; pass < 2; ++pass) {
    const Eigen::VectorXd c = bq.leftCols(cols).transpose() * x;
    x.noalias() -= q.leftCols(cols) * c;
    bx.noalias() -= bq.leftCols(cols) * c;
  }
}

double b_norm(const Eigen::VectorXd& x, const Eigen::VectorXd& bx) { return std::sqrt(std::max(0.0, x.dot(bx))); }

// Fresh unit direction B-orthogonal to the current basis and the locked set.
bool fresh_direction(const LanczosOperator& op, LanczosState& s, int cols, Eigen::VectorXd& v, Eigen::VectorXd& bv) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    v = pseudo_random_vector(op.n, s.fresh_seed++);
    apply_mass(op, v, bv, nullptr);
    const double before = b_norm(v, bv);
    orthogonalize(v, bv, s.locked, s.locked_b, static_cast<int>(s.locked.cols()));
    orthogonalize(v, bv, s.V, s.BV, cols);
    apply_mass(op, v, bv, nullptr);
    const double after = b_norm(v, bv);
    if (after > 1e-8 * before) {
      v /= after;
      bv /= after;
      return true;
    }
  }
  return false;
}

}  // namespace

Eigen::VectorXd pseudo_random_vector(int n, std::uint64_t seed) {
  Eigen::VectorXd v(n);
  std::uint64_t state = seed;
  for (int i = 0; i < n; ++i) {
    const double u = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
    v(i) = 2.0 * u - 1.0;
  }
  return v;
}

LanczosState lanczos_start(const LanczosOperator& op, int capacity, const Eigen::VectorXd& start,
                           const Eigen::MatrixXd& locked, const Eigen::MatrixXd& locked_b) {
  if (start.size() != op.n) throw Error(ErrorCode::ShapeMismatch, "start vector length differs from operator order");
  if (capacity < 1 || capacity > op.n) throw Error(ErrorCode::InvalidArgument, "Krylov capacity out of range");
  LanczosState s;
  s.V = Eigen::MatrixXd::Zero(op.n, capacity);
  s.BV = Eigen::MatrixXd::Zero(op.n, capacity);
  s.H = Eigen::MatrixXd::Zero(capacity, capacity);
  s.locked = locked;
  s.locked_b = locked_b;
  Eigen::VectorXd v = start, bv;
  apply_mass(op, v, bv, nullptr);
  orthogonalize(v, bv, s.locked, s.locked_b, static_cast<int>(s.locked.cols()));
  apply_mass(op, v, bv, nullptr);
  const double nrm = b_norm(v, bv);
  if (!(nrm > 0.0)) {
    if (!fresh_direction(op, s, 0, v, bv)) throw Error(ErrorCode::InvalidArgument, "no start direction outside the locked set");
  } else {
    v /= nrm;
    bv /= nrm;
  }
  // Encode the start as a residual of a zero-step factorization: f = v, ‖f‖ = 1.
  s.f = v;
  s.Bf = bv;
  s.k = 0;
  return s;
}

void lanczos_extend(const LanczosOperator& op, LanczosState& s, int steps, LanczosCounters& counters) {
  if (s.k + steps > s.capacity()) throw Error(ErrorCode::InvalidArgument, "Lanczos extension exceeds capacity");
  Eigen::VectorXd v, bv, w, bw;
  for (int step = 0; step < steps; ++step) {
    const int j = s.k;
    double beta = b_norm(s.f, s.Bf);
    if (j > 0 && beta < 1e-300) beta = 0.0;
    if (beta > 0.0) {
      v = s.f / beta;
      bv = s.Bf / beta;
    } else if (!fresh_direction(op, s, j, v, bv)) {
      throw Error(ErrorCode::InvalidArgument, "Krylov space exhausted");
    }
    s.V.col(j) = v;
    s.BV.col(j) = bv;
    if (j > 0) {
      s.H(j, j - 1) = beta;
      s.H(j - 1, j) = beta;
    }

    const auto t0 = Clock::now();
    op.apply(v, bv, w);
    counters.time_mv += std::chrono::duration<double>(Clock::now() - t0).count();
    ++counters.opx;

    // First Gram-Schmidt pass yields α; the second only corrects roundoff.
    // B f is recomputed afterwards: updating it alongside f would inherit the
    // cancellation error of the projection.
    const Eigen::VectorXd h = s.BV.leftCols(j + 1).transpose() * w;
    w.noalias() -= s.V.leftCols(j + 1) * h;
    bw.setZero(op.n);
    orthogonalize(w, bw, s.V, s.BV, j + 1);
    orthogonalize(w, bw, s.locked, s.locked_b, static_cast<int>(s.locked.cols()));
    apply_mass(op, w, bw, &counters);
    s.H(j, j) = h(j);
    const double fnorm = b_norm(w, bw);
    const double wnorm = std::sqrt(h.squaredNorm() + fnorm * fnorm);

    if (fnorm < 1e-14 * wnorm) {
      // Invariant subspace: the next column starts a new Krylov sequence.
      w.setZero();
      bw.setZero();
    }
    s.f = w;
    s.Bf = bw;
    s.k = j + 1;
  }
}

Eigen::MatrixXd shifted_qr_step(Eigen::MatrixXd& H, double mu) {
  const int m = static_cast<int>(H.rows());
  Eigen::MatrixXd R = H - mu * Eigen::MatrixXd::Identity(m, m);
  std::vector<double> cs(static_cast<std::size_t>(std::max(0, m - 1))), sn(cs.size());
  for (int i = 0; i + 1 < m; ++i) {
    const double a = R(i, i), b = R(i + 1, i);
    const double r = std::hypot(a, b);
    const double c = r == 0.0 ? 1.0 : a / r;
    const double s = r == 0.0 ? 0.0 : b / r;
    cs[static_cast<std::size_t>(i)] = c;
    sn[static_cast<std::size_t>(i)] = s;
    for (int col = 0; col < m; ++col) {
      const double x = R(i, col), y = R(i + 1, col);
      R(i, col) = c * x + s * y;
      R(i + 1, col) = -s * x + c * y;
    }
  }
  Eigen::MatrixXd Q = Eigen::MatrixXd::Identity(m, m);
  for (int i = 0; i + 1 < m; ++i) {
    const double c = cs[static_cast<std::size_t>(i)], s = sn[static_cast<std::size_t>(i)];
    for (int row = 0; row < m; ++row) {
      double x = R(row, i), y = R(row, i + 1);
      R(row, i) = c * x + s * y;
      R(row, i + 1) = -s * x + c * y;
      x = Q(row, i);
      y = Q(row, i + 1);
      Q(row, i) = c * x + s * y;
      Q(row, i + 1) = -s * x + c * y;
    }
  }
  H = R + mu * Eigen::MatrixXd::Identity(m, m);
  // Restore exact symmetric tridiagonal shape.
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < m; ++c) {
      if (std::abs(r - c) > 1) H(r, c) = 0.0;
    }
  }
  for (int i = 0; i + 1 < m; ++i) {
    const double off = 0.5 * (H(i + 1, i) + H(i, i + 1));
    H(i + 1, i) = off;
    H(i, i + 1) = off;
  }
  return Q;
}

void implicit_restart(LanczosState& s, const std::vector<double>& shifts) {
  const int m = s.k;
  const int l = static_cast<int>(shifts.size());
  if (l == 0) return;
  if (l >= m) throw Error(ErrorCode::InvalidArgument, "more shifts than Lanczos vectors");
  const int k = m - l;

  Eigen::MatrixXd H = s.H.topLeftCorner(m, m);
  Eigen::MatrixXd Q = Eigen::MatrixXd::Identity(m, m);
  for (double mu : shifts) Q = Q * shifted_qr_step(H, mu);

  const double beta_hat = H(k, k - 1);
  const double sigma = Q(m - 1, k - 1);
  const Eigen::MatrixXd Vq = s.V.leftCols(m) * Q.leftCols(k + 1);
  const Eigen::MatrixXd BVq = s.BV.leftCols(m) * Q.leftCols(k + 1);
  s.f = Vq.col(k) * beta_hat + s.f * sigma;
  s.Bf = BVq.col(k) * beta_hat + s.Bf * sigma;
  s.V.leftCols(k) = Vq.leftCols(k);
  s.BV.leftCols(k) = BVq.leftCols(k);
  s.V.middleCols(k, s.capacity() - k).setZero();
  s.BV.middleCols(k, s.capacity() - k).setZero();
  s.H.setZero();
  s.H.topLeftCorner(k, k) = H.topLeftCorner(k, k);
  s.k = k;
}

double factorization_residual(const LanczosOperator& op, const LanczosState& s) {
  double worst = 0.0;
  Eigen::VectorXd w;
  for (int j = 0; j < s.k; ++j) {
    op.apply(s.V.col(j), s.BV.col(j), w);
    Eigen::VectorXd r = w - s.V.leftCols(s.k) * s.H.col(j).head(s.k);
    if (j == s.k - 1) r -= s.f;
    worst = std::max(worst, r.cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace symdecomp
