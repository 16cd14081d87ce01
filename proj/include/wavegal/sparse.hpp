#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "wavegal/errors.hpp"

namespace wavegal {

// Compressed-row symmetric-storage-free sparse matrix (full pattern stored).
class SparseMatrix {
public:
  SparseMatrix() = default;

  int dim() const { return n_; }
  std::size_t nnz() const { return values_.size(); }

  const std::vector<int>& row_offsets() const { return row_offsets_; }
  const std::vector<int>& cols() const { return cols_; }
  const std::vector<double>& values() const { return values_; }

  // y = A x
  void multiply(const std::vector<double>& x, std::vector<double>& y) const;
  std::vector<double> multiply(const std::vector<double>& x) const;

  std::vector<double> diagonal() const;
  double at(int i, int j) const;  // 0 if absent

  // max_ij |A_ij - A_ji|
  double symmetry_error() const;

  // Dense Cholesky success probe for small matrices.
  bool spd_by_dense_cholesky() const;

  // this + s * other (pattern union).
  SparseMatrix add_scaled(const SparseMatrix& other, double s) const;

  std::vector<std::vector<double>> to_dense() const;

  // Matrix Market coordinate format, general symmetric-pattern mode.
  void write_matrix_market(std::ostream& os) const;

  // Row-wise builder; rows must be appended in order with sorted columns.
  class Builder {
  public:
    explicit Builder(int n, double drop_tolerance = 0.0);
    // Append entry to the current row; columns must arrive ascending.
    void add(int row, int col, double value);
    SparseMatrix finish();

  private:
    int n_;
    double drop_tol_;
    int current_row_ = 0;
    int last_col_ = -1;
    std::vector<int> row_offsets_{0};
    std::vector<int> cols_;
    std::vector<double> values_;
  };

private:
  int n_ = 0;
  std::vector<int> row_offsets_{0};
  std::vector<int> cols_;
  std::vector<double> values_;
  friend class Builder;
};

}  // namespace wavegal
