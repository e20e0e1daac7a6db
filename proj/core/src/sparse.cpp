#include "symdecomp/sparse.hpp"

#include "symdecomp/error.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace symdecomp {

double symmetry_deviation(const SparseSym& a) {
  const SparseSym t = a.transpose();
  const SparseSym d = a - t;
  double worst = 0.0;
  for (int k = 0; k < d.outerSize(); ++k) {
    for (SparseSym::InnerIterator it(d, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
  }
  return worst;
}

bool is_identity(const SparseSym& a) {
  if (a.rows() != a.cols()) return false;
  for (int k = 0; k < a.outerSize(); ++k) {
    for (SparseSym::InnerIterator it(a, k); it; ++it) {
      const double expected = it.row() == it.col() ? 1.0 : 0.0;
      if (it.value() != expected) return false;
    }
  }
  return a.nonZeros() >= a.rows();
}

namespace {

void spmv_rows(const SparseSym& a, const Eigen::VectorXd& x, Eigen::VectorXd& y, int begin, int end) {
  const int* outer = a.outerIndexPtr();
  const int* inner = a.innerIndexPtr();
  const double* values = a.valuePtr();
  for (int row = begin; row < end; ++row) {
    double acc = 0.0;
    for (int p = outer[row]; p < outer[row + 1]; ++p) acc += values[p] * x[inner[p]];
    y[row] = acc;
  }
}

}  // namespace

void spmv(const SparseSym& a, const Eigen::VectorXd& x, Eigen::VectorXd& y, int threads) {
  if (!a.isCompressed()) throw Error(ErrorCode::InvalidArgument, "spmv needs a compressed matrix");
  const int n = static_cast<int>(a.rows());
  y.resize(n);
  const int workers = std::clamp(threads, 1, std::max(1, n / 2048));
  if (workers == 1) {
    spmv_rows(a, x, y, 0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers - 1));
  const int chunk = (n + workers - 1) / workers;
  for (int w = 1; w < workers; ++w) {
    const int begin = std::min(n, w * chunk);
    const int end = std::min(n, begin + chunk);
    pool.emplace_back([&, begin, end] { spmv_rows(a, x, y, begin, end); });
  }
  spmv_rows(a, x, y, 0, std::min(n, chunk));
  for (auto& t : pool) t.join();
}

void write_matrix_market(const SparseSym& a, std::ostream& out) {
  int lower = 0;
  for (int k = 0; k < a.outerSize(); ++k) {
    for (SparseSym::InnerIterator it(a, k); it; ++it) lower += it.col() <= it.row() ? 1 : 0;
  }
  out << "%%MatrixMarket matrix coordinate real symmetric\n";
  out << a.rows() << ' ' << a.cols() << ' ' << lower << '\n';
  out << std::setprecision(17);
  for (int k = 0; k < a.outerSize(); ++k) {
    for (SparseSym::InnerIterator it(a, k); it; ++it) {
      if (it.col() <= it.row()) out << it.row() + 1 << ' ' << it.col() + 1 << ' ' << it.value() << '\n';
    }
  }
}

void write_matrix_market(const SparseSym& a, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  write_matrix_market(a, out);
}

SparseSym read_matrix_market(std::istream& in) {
  std::string header;
  if (!std::getline(in, header) || header.rfind("%%MatrixMarket", 0) != 0) {
    throw Error(ErrorCode::IoError, "missing %%MatrixMarket header");
  }
  std::istringstream hs(header);
  std::string banner, object, format, field, symmetry;
  hs >> banner >> object >> format >> field >> symmetry;
  if (object != "matrix" || format != "coordinate" || field != "real") {
    throw Error(ErrorCode::IoError, "only real coordinate matrices are supported");
  }
  const bool symmetric = symmetry == "symmetric";
  if (!symmetric && symmetry != "general") throw Error(ErrorCode::IoError, "unsupported symmetry '" + symmetry + "'");

  std::string line;
  do {
    if (!std::getline(in, line)) throw Error(ErrorCode::IoError, "missing size line");
  } while (line.empty() || line[0] == '%');
  std::istringstream sizes(line);
  long rows = 0, cols = 0, entries = 0;
  if (!(sizes >> rows >> cols >> entries)) throw Error(ErrorCode::IoError, "malformed size line");

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(symmetric ? 2 * entries : entries));
  for (long e = 0; e < entries; ++e) {
    long i = 0, j = 0;
    double v = 0.0;
    if (!(in >> i >> j >> v)) throw Error(ErrorCode::IoError, "truncated entry list");
    triplets.emplace_back(static_cast<int>(i - 1), static_cast<int>(j - 1), v);
    if (symmetric && i != j) triplets.emplace_back(static_cast<int>(j - 1), static_cast<int>(i - 1), v);
  }
  SparseSym a(static_cast<int>(rows), static_cast<int>(cols));
  a.setFromTriplets(triplets.begin(), triplets.end());
  a.makeCompressed();
  return a;
}

}  // namespace symdecomp
