#pragma once
#include <optional>
#include <string>
#include <vector>

#include "afss/affine.hpp"
#include "afss/budget.hpp"
#include "afss/gf2m.hpp"
#include "afss/rational.hpp"
#include "afss/rng.hpp"

namespace afss {

// Exhaustive-certification record attached to an extractor. eps_table[j]
// is the exact worst case over affine sources of dimension exactly j;
// the headline (k, eps) claim is the running max over dimensions >= k.
struct ExtractorCert {
  int k = -1;
  Rational eps = 0;
  std::vector<Rational> eps_table;
  std::string family;
  std::uint64_t budget_used = 0;
  std::uint64_t rng_seed = 0;

  bool certified() const { return k >= 0; }
  Rational eps_at(int dim) const;         // table lookup, clamped into range
  Rational eps_from(int k_min) const;     // max over dims >= k_min
};

// Linear strong seeded extractor. For every fixed seed the map is linear
// (zero in, zero out); inversion samples a uniform preimage.
class LinearSeededExtractor {
 public:
  enum class Realization { Toeplitz, RandomLinear };

  // Toeplitz hashing, seed length d = n + m - 1.
  static LinearSeededExtractor toeplitz(int n, int m);
  // 2^d fixed pseudorandom rank-m matrices derived from rng; for short
  // seeds where the Toeplitz seed does not fit the code budget.
  static LinearSeededExtractor random_linear(int n, int d, int m, Rng rng);

  int n() const { return n_; }
  int d() const { return d_; }
  int m() const { return m_; }
  Realization realization() const { return realization_; }

  // n x m matrix of extract(z, .) in row convention.
  BitMatrix seed_matrix(const BitString& z) const;

  BitString extract(const BitString& z, const BitString& x) const;

  // Uniform over {x : extract(z,x) = s}; re-extraction returns s exactly.
  // Throws RankDeficientSeed when extract(z,.) is not surjective.
  BitString invert(const BitString& z, const BitString& s, Rng& rng) const;

  bool seed_full_rank(const BitString& z) const;

  ExtractorCert cert;

 private:
  int n_ = 0, d_ = 0, m_ = 0;
  Realization realization_ = Realization::Toeplitz;
  std::vector<BitMatrix> matrices_;  // RandomLinear: indexed by seed value
};

// Deterministic extractor for affine sources: concatenated quadratic
// forms, bit j = <x_left, x_right * P^j> + <mask_j, x>, with P the
// multiply-by-x map of GF(2^{n/2}). Never an affine function as a whole.
class AffineExtractor {
 public:
  AffineExtractor() = default;
  AffineExtractor(int n, int m);

  int n() const { return n_; }
  int m() const { return m_; }

  BitString extract(const BitString& x) const;

  ExtractorCert cert;
  // Exhaustive-check witness that the function is not affine.
  std::optional<std::pair<BitString, BitString>> nonaffine_witness;

 private:
  int n_ = 0, m_ = 0;
  std::vector<BitMatrix> mixers_;  // h x h, full rank
  std::vector<BitString> masks_;   // length n
};

// aExt''(sd || x) = outer(inner(x) + sd, x); the invertible seedless
// extractor obtained by composing a short-output affine extractor with a
// linear seeded one.
class ComposedAffineExtractor {
 public:
  ComposedAffineExtractor() = default;
  ComposedAffineExtractor(AffineExtractor inner, LinearSeededExtractor outer);

  const AffineExtractor& inner() const { return inner_; }
  const LinearSeededExtractor& outer() const { return outer_; }

  int d() const { return outer_.d(); }
  int n() const { return outer_.n(); }
  int m() const { return outer_.m(); }
  int in_dim() const { return d() + n(); }

  BitString extract(const BitString& sd_x) const;

  // (inner(X) + Z || X) with Z fresh uniform and X a uniform preimage of s
  // under outer(Z, .); resamples Z on rank-deficient seeds, bounded.
  BitString invert(const BitString& s, Rng& rng, int max_retries = 64) const;

 private:
  AffineExtractor inner_;
  LinearSeededExtractor outer_;
};

// Linear seeded non-malleable extractor candidates.
class SeededNmExtractor {
 public:
  enum class Realization { IpField, LookupTable };

  // Inner product over GF(2^m): extract(z,x) = sum_i x_i * enc(z)_i with a
  // fixed injective all-nonzero-component seed encoding. n divisible by m.
  static SeededNmExtractor ip_field(int n, int d, int m);
  // Searched instance: per-seed matrices.
  static SeededNmExtractor lookup(int n, int d, int m, std::vector<BitMatrix> mats);

  int n() const { return n_; }
  int d() const { return d_; }
  int m() const { return m_; }
  Realization realization() const { return realization_; }

  BitString extract(const BitString& z, const BitString& x) const;
  // The linear map extract(z,.) recovered by probing basis vectors.
  BitMatrix source_matrix(const BitString& z) const;
  BitString invert(const BitString& z, const BitString& s, Rng& rng) const;
  bool seed_full_rank(const BitString& z) const;

  ExtractorCert cert;

 private:
  int n_ = 0, d_ = 0, m_ = 0;
  Realization realization_ = Realization::IpField;
  std::vector<std::vector<std::uint32_t>> enc_;  // IpField: per seed, n/m field elements
  std::vector<BitMatrix> matrices_;              // LookupTable
};

// Seedless non-malleable extractor for affine sources, desk scale: a full
// truth table over {0,1}^n.
class AffineNmExtractor {
 public:
  AffineNmExtractor() = default;
  AffineNmExtractor(int n, int m, std::vector<BitString> table);

  int n() const { return n_; }
  int m() const { return m_; }

  BitString extract(const BitString& x) const { return table_[x.as_u64()]; }
  const std::vector<BitString>& table() const { return table_; }

  std::vector<BitString> preimage(const BitString& s) const;
  BitString invert(const BitString& s, Rng& rng) const;
  // Every output value has a preimage of the same size (makes the inverter
  // marginal exactly uniform, mu = 0).
  bool balanced() const;

  ExtractorCert cert;           // affine-extraction certification
  Rational cert_eps_nm = 0;     // worst minimax simulator error over the family
  Rational cert_eps_joint = 0;  // worst joint output-pair distance
  std::string cert_family;

 private:
  int n_ = 0, m_ = 0;
  std::vector<BitString> table_;
};

// A named deterministic family of affine tampering maps used by seedless
// non-malleability certification.
struct AffineTamperFamily {
  std::string description;
  std::vector<AffineMap> maps;

  // identity, all constants, all single-bit-flip translations, a pool of
  // invertible maps, and `extra_random` pseudorandom affine maps.
  static AffineTamperFamily standard(int n, int extra_random, Rng rng);
};

struct SeededNmSearchResult {
  std::optional<SeededNmExtractor> found;
  Rational best_eps = 2;
  int trials_used = 0;
};

struct AffineNmSearchResult {
  std::optional<AffineNmExtractor> found;
  Rational best_eps = 2;
  int trials_used = 0;
};

// Sample per-seed random matrices until the tampered-seed certification
// at entropy k over all fixed-point-free seed maps meets eps.
SeededNmSearchResult search_seeded_nm(int n, int d, int m, int k, const Rational& eps,
                                      int trials, Rng rng, const Budget& budget);

// Sample random balanced truth tables; certify affine extraction at k and
// non-malleability against `family`.
AffineNmSearchResult search_affine_nm(int n, int m, int k, const Rational& eps, int trials,
                                      Rng rng, const AffineTamperFamily& family,
                                      const Budget& budget);

}  // namespace afss
