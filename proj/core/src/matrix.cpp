#include "afss/matrix.hpp"

#include "afss/errors.hpp"

namespace afss {

BitMatrix BitMatrix::identity(int n) {
  BitMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

BitMatrix BitMatrix::random(int rows, int cols, Rng& rng) {
  BitMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) m.data_[i] = rng.bits(cols);
  return m;
}

BitMatrix BitMatrix::from_rows(std::initializer_list<std::initializer_list<int>> rows) {
  int r = static_cast<int>(rows.size());
  int c = r == 0 ? 0 : static_cast<int>(rows.begin()->size());
  BitMatrix m(r, c);
  int i = 0;
  for (auto& row : rows) {
    if (static_cast<int>(row.size()) != c) throw DimensionError("from_rows: ragged rows");
    int j = 0;
    for (int v : row) m.set(i, j++, v != 0);
    ++i;
  }
  return m;
}

BitString BitMatrix::mul_left(const BitString& x) const {
  if (x.size() != rows_) throw DimensionError("mul_left: vector length != rows");
  BitString out(cols_);
  for (int i = 0; i < rows_; ++i)
    if (x.get(i)) out += data_[i];
  return out;
}

BitMatrix BitMatrix::mul(const BitMatrix& other) const {
  if (cols_ != other.rows_) throw DimensionError("mul: inner dimension mismatch");
  BitMatrix out(rows_, other.cols_);
  for (int i = 0; i < rows_; ++i) out.data_[i] = other.mul_left(data_[i]);
  return out;
}

BitMatrix BitMatrix::operator+(const BitMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionError("add: shape mismatch");
  BitMatrix out = *this;
  for (int i = 0; i < rows_; ++i) out.data_[i] += other.data_[i];
  return out;
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix out(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (get(i, j)) out.set(j, i, true);
  return out;
}

BitMatrix BitMatrix::select_cols(const std::vector<int>& cols) const {
  BitMatrix out(rows_, static_cast<int>(cols.size()));
  for (int j = 0; j < static_cast<int>(cols.size()); ++j) {
    if (cols[j] < 0 || cols[j] >= cols_) throw DimensionError("select_cols: index out of range");
    for (int i = 0; i < rows_; ++i)
      if (get(i, cols[j])) out.set(i, j, true);
  }
  return out;
}

int gf2_rank(std::vector<BitString> rows) {
  int rank = 0;
  int cols = rows.empty() ? 0 : rows[0].size();
  for (int c = 0; c < cols; ++c) {
    int pivot = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (rows[r].get(c)) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r)
      if (r != rank && rows[r].get(c)) rows[r] += rows[rank];
    ++rank;
  }
  return rank;
}

int BitMatrix::rank() const { return gf2_rank(data_); }

}  // namespace afss
