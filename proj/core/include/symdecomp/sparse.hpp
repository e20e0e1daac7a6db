#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <filesystem>
#include <iosfwd>

namespace symdecomp {

/// Row-compressed storage of a symmetric real matrix (both triangles stored).
using SparseSym = Eigen::SparseMatrix<double, Eigen::RowMajor, int>;

/// max |A_ij − A_ji|.
double symmetry_deviation(const SparseSym& a);

/// True when a is exactly the identity.
bool is_identity(const SparseSym& a);

/// y = A x, rows split over `threads` workers. The row partition does not
/// change any row's summation order, so the result is thread-count independent.
void spmv(const SparseSym& a, const Eigen::VectorXd& x, Eigen::VectorXd& y, int threads = 1);

/// Matrix Market coordinate format, `real symmetric`, lower triangle, 1-based.
void write_matrix_market(const SparseSym& a, std::ostream& out);
void write_matrix_market(const SparseSym& a, const std::filesystem::path& path);
/// Accepts `general` and `symmetric` real coordinate files.
SparseSym read_matrix_market(std::istream& in);

}  // namespace symdecomp
