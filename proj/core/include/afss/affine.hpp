#pragma once
#include <functional>
#include <optional>
#include <vector>

#include "afss/matrix.hpp"
#include "afss/rng.hpp"

namespace afss {

// x |-> x * matrix + offset. Houses every linear/affine object in the
// artifact: leakage functions, ECC encoders and decoders, induced
// tamperings, bit-tamper equivalents.
class AffineMap {
 public:
  AffineMap() = default;
  AffineMap(BitMatrix matrix, BitString offset);

  static AffineMap identity(int n);
  static AffineMap constant(int in_dim, BitString value);
  static AffineMap linear(BitMatrix matrix);
  static AffineMap translation(BitString delta);
  static AffineMap random(int in_dim, int out_dim, Rng& rng);

  int in_dim() const { return matrix_.rows(); }
  int out_dim() const { return matrix_.cols(); }

  const BitMatrix& matrix() const { return matrix_; }
  const BitString& offset() const { return offset_; }

  BitString apply(const BitString& x) const;

  bool is_constant() const { return matrix_.rank() == 0; }

  bool operator==(const AffineMap& o) const = default;

 private:
  BitMatrix matrix_;  // in_dim x out_dim
  BitString offset_;  // out_dim
};

// g after f: result(x) = g(f(x)).
AffineMap compose(const AffineMap& g, const AffineMap& f);

// Basis + offset; the support of an affine source. Basis vectors are
// linearly independent, dim() = |basis|.
class AffineSubspace {
 public:
  AffineSubspace(int ambient_dim, std::vector<BitString> basis, BitString offset);

  static AffineSubspace full(int n);
  static AffineSubspace point(BitString p);

  int ambient_dim() const { return ambient_dim_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<BitString>& basis() const { return basis_; }
  const BitString& offset() const { return offset_; }

  // offset + sum of basis vectors selected by coords.
  BitString element(const BitString& coords) const;
  bool contains(const BitString& p) const;

  std::uint64_t point_count() const { return std::uint64_t(1) << dim(); }
  // All 2^dim points (dim kept small by callers).
  std::vector<BitString> points() const;

 private:
  int ambient_dim_;
  std::vector<BitString> basis_;
  BitString offset_;
};

struct AffineSolution {
  BitString particular;
  std::vector<BitString> kernel;  // basis of {x : x * matrix = 0}
};

// Solve f(x) = y. Empty optional iff y is outside the image.
std::optional<AffineSolution> solve(const AffineMap& f, const BitString& y);

// Uniform over the solution coset. Throws DimensionError if y is not in
// the image.
BitString sample_preimage(const AffineMap& f, const BitString& y, Rng& rng);

// The full preimage as a subspace, when nonempty.
std::optional<AffineSubspace> preimage_subspace(const AffineMap& f, const BitString& y);

// f viewed in the coordinates of S: restrict(f,S)(c) = f(S.element(c)).
AffineMap restrict(const AffineMap& f, const AffineSubspace& S);

// Gaussian binomial [n choose k]_2: number of k-dim subspaces of F_2^n.
std::uint64_t gaussian_binomial(int n, int k);
// Number of k-dim affine subspaces of F_2^n.
std::uint64_t affine_subspace_count(int n, int k);

// Yields each k-dimensional affine subspace of {0,1}^n exactly once
// (reduced row-echelon representatives, coset offsets supported on the
// non-pivot coordinates). n <= 8.
void enumerate_affine_subspaces(int n, int k,
                                const std::function<void(const AffineSubspace&)>& yield);

}  // namespace afss
