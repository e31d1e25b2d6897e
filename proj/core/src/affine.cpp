#include "afss/affine.hpp"

#include <algorithm>

#include "afss/errors.hpp"

namespace afss {

AffineMap::AffineMap(BitMatrix matrix, BitString offset)
    : matrix_(std::move(matrix)), offset_(std::move(offset)) {
  if (offset_.size() != matrix_.cols()) throw DimensionError("AffineMap: offset length != cols");
}

AffineMap AffineMap::identity(int n) { return AffineMap(BitMatrix::identity(n), BitString(n)); }

AffineMap AffineMap::constant(int in_dim, BitString value) {
  return AffineMap(BitMatrix(in_dim, value.size()), std::move(value));
}

AffineMap AffineMap::linear(BitMatrix matrix) {
  BitString zero(matrix.cols());
  return AffineMap(std::move(matrix), std::move(zero));
}

AffineMap AffineMap::translation(BitString delta) {
  int n = delta.size();
  return AffineMap(BitMatrix::identity(n), std::move(delta));
}

AffineMap AffineMap::random(int in_dim, int out_dim, Rng& rng) {
  return AffineMap(BitMatrix::random(in_dim, out_dim, rng), rng.bits(out_dim));
}

BitString AffineMap::apply(const BitString& x) const { return matrix_.mul_left(x) + offset_; }

AffineMap compose(const AffineMap& g, const AffineMap& f) {
  if (f.out_dim() != g.in_dim()) throw DimensionError("compose: f.out_dim != g.in_dim");
  // g(f(x)) = x * (Mf * Mg) + (bf * Mg + bg)
  BitMatrix m = f.matrix().mul(g.matrix());
  BitString b = g.matrix().mul_left(f.offset()) + g.offset();
  return AffineMap(std::move(m), std::move(b));
}

AffineSubspace::AffineSubspace(int ambient_dim, std::vector<BitString> basis, BitString offset)
    : ambient_dim_(ambient_dim), basis_(std::move(basis)), offset_(std::move(offset)) {
  if (offset_.size() != ambient_dim_) throw DimensionError("AffineSubspace: offset length");
  for (auto& b : basis_)
    if (b.size() != ambient_dim_) throw DimensionError("AffineSubspace: basis vector length");
  if (gf2_rank(basis_) != static_cast<int>(basis_.size()))
    throw DimensionError("AffineSubspace: basis not independent");
}

AffineSubspace AffineSubspace::full(int n) {
  std::vector<BitString> basis;
  for (int i = 0; i < n; ++i) {
    BitString e(n);
    e.set(i, true);
    basis.push_back(e);
  }
  return AffineSubspace(n, std::move(basis), BitString(n));
}

AffineSubspace AffineSubspace::point(BitString p) {
  int n = p.size();
  return AffineSubspace(n, {}, std::move(p));
}

BitString AffineSubspace::element(const BitString& coords) const {
  if (coords.size() != dim()) throw DimensionError("element: coord length != dim");
  BitString x = offset_;
  for (int i = 0; i < dim(); ++i)
    if (coords.get(i)) x += basis_[i];
  return x;
}

bool AffineSubspace::contains(const BitString& p) const {
  if (p.size() != ambient_dim_) return false;
  // p in S iff p + offset lies in span(basis)
  std::vector<BitString> rows = basis_;
  rows.push_back(p + offset_);
  return gf2_rank(std::move(rows)) == dim();
}

std::vector<BitString> AffineSubspace::points() const {
  std::vector<BitString> out;
  out.reserve(static_cast<std::size_t>(point_count()));
  for (std::uint64_t c = 0; c < point_count(); ++c)
    out.push_back(element(BitString::from_u64(c, dim())));
  return out;
}

std::optional<AffineSolution> solve(const AffineMap& f, const BitString& y) {
  if (y.size() != f.out_dim()) throw DimensionError("solve: y length != out_dim");
  const int n = f.in_dim();
  const int m = f.out_dim();
  // Equations over unknown x: for each output bit j,
  //   sum_i x_i M[i][j] = (y + offset)_j.
  // Row j of the augmented system is column j of M plus the rhs bit.
  BitString rhs = y + f.offset();
  std::vector<BitString> aug(m, BitString(n + 1));
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < n; ++i)
      if (f.matrix().get(i, j)) aug[j].set(i, true);
    if (rhs.get(j)) aug[j].set(n, true);
  }
  // Gauss-Jordan.
  std::vector<int> pivot_col;
  int row = 0;
  for (int c = 0; c < n && row < m; ++c) {
    int p = -1;
    for (int r = row; r < m; ++r)
      if (aug[r].get(c)) {
        p = r;
        break;
      }
    if (p < 0) continue;
    std::swap(aug[row], aug[p]);
    for (int r = 0; r < m; ++r)
      if (r != row && aug[r].get(c)) aug[r] += aug[row];
    pivot_col.push_back(c);
    ++row;
  }
  for (int r = row; r < m; ++r)
    if (aug[r].get(n)) return std::nullopt;  // 0 = 1: no solution

  AffineSolution sol;
  sol.particular = BitString(n);
  for (int r = 0; r < row; ++r)
    if (aug[r].get(n)) sol.particular.set(pivot_col[r], true);

  std::vector<bool> is_pivot(n, false);
  for (int c : pivot_col) is_pivot[c] = true;
  for (int c = 0; c < n; ++c) {
    if (is_pivot[c]) continue;
    BitString k(n);
    k.set(c, true);
    for (int r = 0; r < row; ++r)
      if (aug[r].get(c)) k.set(pivot_col[r], true);
    sol.kernel.push_back(std::move(k));
  }
  return sol;
}

BitString sample_preimage(const AffineMap& f, const BitString& y, Rng& rng) {
  auto sol = solve(f, y);
  if (!sol) throw DimensionError("sample_preimage: y not in image");
  BitString x = sol->particular;
  for (auto& k : sol->kernel)
    if (rng.coin()) x += k;
  return x;
}

std::optional<AffineSubspace> preimage_subspace(const AffineMap& f, const BitString& y) {
  auto sol = solve(f, y);
  if (!sol) return std::nullopt;
  return AffineSubspace(f.in_dim(), std::move(sol->kernel), std::move(sol->particular));
}

AffineMap restrict(const AffineMap& f, const AffineSubspace& S) {
  if (f.in_dim() != S.ambient_dim()) throw DimensionError("restrict: dimension mismatch");
  BitMatrix m(S.dim(), f.out_dim());
  for (int i = 0; i < S.dim(); ++i) m.row(i) = f.matrix().mul_left(S.basis()[i]);
  return AffineMap(std::move(m), f.apply(S.offset()));
}

std::uint64_t gaussian_binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  // prod_{i=0..k-1} (2^{n-i} - 1) / (2^{k-i} - 1); exact in 64 bits for n <= 16.
  std::uint64_t num = 1, den = 1;
  for (int i = 0; i < k; ++i) {
    num *= (std::uint64_t(1) << (n - i)) - 1;
    den *= (std::uint64_t(1) << (k - i)) - 1;
  }
  return num / den;
}

std::uint64_t affine_subspace_count(int n, int k) {
  return gaussian_binomial(n, k) << (n - k);
}

void enumerate_affine_subspaces(int n, int k,
                                const std::function<void(const AffineSubspace&)>& yield) {
  if (n > 8) throw BudgetExceeded("enumerate_affine_subspaces: n > 8");
  if (k < 0 || k > n) return;

  // Pivot columns p_0 < ... < p_{k-1}; free RREF entries are (i, j) with
  // j > p_i and j not a pivot column; offsets live on non-pivot columns.
  std::vector<int> pivots(k);
  for (int i = 0; i < k; ++i) pivots[i] = i;

  auto emit_for_pivots = [&]() {
    std::vector<bool> is_pivot(n, false);
    for (int p : pivots) is_pivot[p] = true;
    std::vector<std::pair<int, int>> free_pos;
    for (int i = 0; i < k; ++i)
      for (int j = pivots[i] + 1; j < n; ++j)
        if (!is_pivot[j]) free_pos.emplace_back(i, j);
    std::vector<int> nonpivot;
    for (int j = 0; j < n; ++j)
      if (!is_pivot[j]) nonpivot.push_back(j);

    const std::uint64_t fills = std::uint64_t(1) << free_pos.size();
    const std::uint64_t offsets = std::uint64_t(1) << nonpivot.size();
    for (std::uint64_t fill = 0; fill < fills; ++fill) {
      std::vector<BitString> basis(k, BitString(n));
      for (int i = 0; i < k; ++i) basis[i].set(pivots[i], true);
      for (std::size_t t = 0; t < free_pos.size(); ++t)
        if ((fill >> t) & 1) basis[free_pos[t].first].set(free_pos[t].second, true);
      for (std::uint64_t off = 0; off < offsets; ++off) {
        BitString offset(n);
        for (std::size_t t = 0; t < nonpivot.size(); ++t)
          if ((off >> t) & 1) offset.set(nonpivot[t], true);
        yield(AffineSubspace(n, basis, offset));
      }
    }
  };

  if (k == 0) {
    for (std::uint64_t p = 0; p < (std::uint64_t(1) << n); ++p)
      yield(AffineSubspace::point(BitString::from_u64(p, n)));
    return;
  }

  // iterate combinations of pivot columns
  while (true) {
    emit_for_pivots();
    int i = k - 1;
    while (i >= 0 && pivots[i] == n - k + i) --i;
    if (i < 0) break;
    ++pivots[i];
    for (int j = i + 1; j < k; ++j) pivots[j] = pivots[j - 1] + 1;
  }
}

}  // namespace afss
