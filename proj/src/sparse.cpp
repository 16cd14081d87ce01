#include "wavegal/sparse.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <ostream>

namespace wavegal {

void SparseMatrix::multiply(const std::vector<double>& x, std::vector<double>& y) const {
  if (static_cast<int>(x.size()) != n_) throw DimensionError("mat-vec dimension mismatch");
  y.assign(n_, 0.0);
  for (int i = 0; i < n_; ++i) {
    double acc = 0.0;
    for (int p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p) acc += values_[p] * x[cols_[p]];
    y[i] = acc;
  }
}

std::vector<double> SparseMatrix::multiply(const std::vector<double>& x) const {
  std::vector<double> y;
  multiply(x, y);
  return y;
}

std::vector<double> SparseMatrix::diagonal() const {
  std::vector<double> d(n_, 0.0);
  for (int i = 0; i < n_; ++i)
    for (int p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p)
      if (cols_[p] == i) d[i] = values_[p];
  return d;
}

double SparseMatrix::at(int i, int j) const {
  for (int p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p)
    if (cols_[p] == j) return values_[p];
  return 0.0;
}

double SparseMatrix::symmetry_error() const {
  double worst = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p)
      worst = std::max(worst, std::abs(values_[p] - at(cols_[p], i)));
  return worst;
}

bool SparseMatrix::spd_by_dense_cholesky() const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p) a(i, cols_[p]) = values_[p];
  Eigen::LLT<Eigen::MatrixXd> llt(a);
  return llt.info() == Eigen::Success;
}

SparseMatrix SparseMatrix::add_scaled(const SparseMatrix& other, double s) const {
  if (other.n_ != n_) throw DimensionError("matrix addition dimension mismatch");
  Builder b(n_);
  for (int i = 0; i < n_; ++i) {
    int pa = row_offsets_[i], pb = other.row_offsets_[i];
    const int ea = row_offsets_[i + 1], eb = other.row_offsets_[i + 1];
    while (pa < ea || pb < eb) {
      const int ca = pa < ea ? cols_[pa] : n_;
      const int cb = pb < eb ? other.cols_[pb] : n_;
      if (ca < cb) {
        b.add(i, ca, values_[pa++]);
      } else if (cb < ca) {
        b.add(i, cb, s * other.values_[pb++]);
      } else {
        b.add(i, ca, values_[pa++] + s * other.values_[pb++]);
      }
    }
  }
  return b.finish();
}

std::vector<std::vector<double>> SparseMatrix::to_dense() const {
  std::vector<std::vector<double>> a(n_, std::vector<double>(n_, 0.0));
  for (int i = 0; i < n_; ++i)
    for (int p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p) a[i][cols_[p]] = values_[p];
  return a;
}

void SparseMatrix::write_matrix_market(std::ostream& os) const {
  os << "%%MatrixMarket matrix coordinate real general\n";
  os << n_ << ' ' << n_ << ' ' << nnz() << '\n';
  char buf[64];
  for (int i = 0; i < n_; ++i)
    for (int p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p) {
      std::snprintf(buf, sizeof(buf), "%d %d %.17g\n", i + 1, cols_[p] + 1, values_[p]);
      os << buf;
    }
}

SparseMatrix::Builder::Builder(int n, double drop_tolerance) : n_(n), drop_tol_(drop_tolerance) {
  row_offsets_.reserve(n + 1);
}

void SparseMatrix::Builder::add(int row, int col, double value) {
  if (row < 0 || row >= n_ || col < 0 || col >= n_)
    throw DimensionError("builder entry out of range");
  if (row < current_row_) throw ValidationError("builder rows must be appended in order");
  while (current_row_ < row) {
    row_offsets_.push_back(static_cast<int>(cols_.size()));
    ++current_row_;
    last_col_ = -1;
  }
  if (std::abs(value) <= drop_tol_) return;
  if (col <= last_col_)
    throw ValidationError("builder columns must arrive strictly ascending within a row");
  last_col_ = col;
  cols_.push_back(col);
  values_.push_back(value);
}

SparseMatrix SparseMatrix::Builder::finish() {
  while (static_cast<int>(row_offsets_.size()) < n_ + 1)
    row_offsets_.push_back(static_cast<int>(cols_.size()));
  current_row_ = n_;
  SparseMatrix m;
  m.n_ = n_;
  m.row_offsets_ = std::move(row_offsets_);
  m.cols_ = std::move(cols_);
  m.values_ = std::move(values_);
  return m;
}

}  // namespace wavegal
