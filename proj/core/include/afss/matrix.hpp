#pragma once
#include <initializer_list>
#include <vector>

#include "afss/bits.hpp"
#include "afss/rng.hpp"

namespace afss {

// Dense matrix over GF(2), stored row-major. Row-vector convention
// throughout: a BitString of length rows() multiplies on the left,
// x * M has length cols().
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows, BitString(cols)) {}

  static BitMatrix identity(int n);
  static BitMatrix random(int rows, int cols, Rng& rng);
  static BitMatrix from_rows(std::initializer_list<std::initializer_list<int>> rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  bool get(int r, int c) const { return data_[r].get(c); }
  void set(int r, int c, bool v) { data_[r].set(c, v); }

  const BitString& row(int r) const { return data_[r]; }
  BitString& row(int r) { return data_[r]; }

  BitString mul_left(const BitString& x) const;  // x * M
  BitMatrix mul(const BitMatrix& other) const;   // M * other
  BitMatrix operator+(const BitMatrix& other) const;
  BitMatrix transpose() const;

  // Column-selection submatrix.
  BitMatrix select_cols(const std::vector<int>& cols) const;

  int rank() const;

  bool operator==(const BitMatrix& o) const = default;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<BitString> data_;
};

int gf2_rank(std::vector<BitString> rows);

}  // namespace afss
