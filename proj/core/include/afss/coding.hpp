#pragma once
#include <optional>
#include <vector>

#include "afss/affine.hpp"
#include "afss/budget.hpp"
#include "afss/gf2m.hpp"
#include "afss/rational.hpp"
#include "afss/rng.hpp"

namespace afss {

// Algebraic manipulation detection over GF(2^u): codeword (m, x, tag)
// with tag = x^{dd+2} + sum_i m_i x^i, dd odd so the leading exponent
// stays odd in characteristic 2. Detects any nonzero additive offset
// except with probability (dd+1)/2^u.
class AmdCode {
 public:
  AmdCode(int u, int dd);

  int u() const { return u_; }
  int dd() const { return dd_; }
  int message_bits() const { return dd_ * u_; }
  int codeword_bits() const { return (dd_ + 2) * u_; }
  Rational delta() const { return Rational(dd_ + 1, std::int64_t(1) << u_); }
  const Gf2m& field() const { return field_; }

  BitString encode(const BitString& msg, Rng& rng) const;
  // Deterministic variant for exact enumeration over the randomness x.
  BitString encode_with(const BitString& msg, std::uint32_t x) const;
  std::optional<BitString> decode(const BitString& codeword) const;

 private:
  int u_, dd_;
  Gf2m field_;
};

// Surviving codeword bit positions.
class ErasurePattern {
 public:
  ErasurePattern(int code_len, std::vector<int> surviving);

  static ErasurePattern all(int code_len);
  static ErasurePattern from_blocks(int code_len, int block_bits, const std::vector<int>& blocks);

  int code_len() const { return code_len_; }
  const std::vector<int>& surviving() const { return surviving_; }
  int surviving_count() const { return static_cast<int>(surviving_.size()); }

  BitString project(const BitString& codeword) const;

 private:
  int code_len_;
  std::vector<int> surviving_;  // sorted, distinct
};

// Stochastic affine erasure-correcting code, instantiated as a fixed
// random full-row-rank linear code (G_r constant, Delta_r = 0, a
// degenerate stochastic family). Decoding solves the surviving system by
// a canonical pseudo-inverse, so the decoder is a total affine map on
// every decodable pattern.
class SaEcc {
 public:
  static SaEcc random_linear(int msg_len, int code_len, Rng rng, int max_retries = 256);
  static SaEcc from_generator(BitMatrix g);

  int msg_len() const { return generator_.rows(); }
  int code_len() const { return generator_.cols(); }
  int rand_len() const { return 0; }
  const BitMatrix& generator() const { return generator_; }

  BitString encode(const BitString& msg) const;

  bool decodable(const ErasurePattern& pat) const;

  // partial has one bit per surviving position. Nullopt iff the pattern is
  // underdetermined; with verify_consistency, also when the surviving bits
  // contradict the unique candidate message.
  std::optional<BitString> decode(const BitString& partial, const ErasurePattern& pat,
                                  bool verify_consistency = false) const;

  // msg -> codeword as an AffineMap (offset zero for the linear family).
  AffineMap encoder_view() const;
  // codeword -> surviving bits.
  AffineMap projection_view(const ErasurePattern& pat) const;
  // surviving bits -> msg; nullopt on underdetermined patterns.
  std::optional<AffineMap> decoder_view(const ErasurePattern& pat) const;

  // Exact decode-failure fraction over all C(code_len, s) patterns.
  Rational exhaustive_delta(int surviving_count, const Budget& budget) const;
  // Exact failure fraction over all C(P, blocks_surviving) block-aligned patterns.
  Rational block_delta(int P, int blocks_surviving) const;

 private:
  explicit SaEcc(BitMatrix g) : generator_(std::move(g)) {}
  BitMatrix generator_;  // msg_len x code_len, full row rank
};

}  // namespace afss
