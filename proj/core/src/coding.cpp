#include "afss/coding.hpp"

#include <algorithm>

#include "afss/errors.hpp"

namespace afss {

// ---- AMD ----

AmdCode::AmdCode(int u, int dd) : u_(u), dd_(dd), field_(u) {
  if (dd < 1 || dd % 2 == 0) throw DimensionError("AmdCode: dd must be odd and positive");
}

BitString AmdCode::encode(const BitString& msg, Rng& rng) const {
  return encode_with(msg, static_cast<std::uint32_t>(rng.below(field_.order())));
}

BitString AmdCode::encode_with(const BitString& msg, std::uint32_t x) const {
  if (msg.size() != message_bits()) throw DimensionError("amd encode: message length");
  // tag = x^{dd+2} + sum_i m_i x^i
  std::uint32_t tag = field_.pow(x, dd_ + 2);
  for (int i = 1; i <= dd_; ++i)
    tag ^= field_.mul(field_.element_at(msg, (i - 1) * u_), field_.pow(x, i));
  BitString cw = msg.concat(BitString(2 * u_));
  field_.store_at(cw, message_bits(), x);
  field_.store_at(cw, message_bits() + u_, tag);
  return cw;
}

std::optional<BitString> AmdCode::decode(const BitString& codeword) const {
  if (codeword.size() != codeword_bits()) throw DimensionError("amd decode: codeword length");
  BitString msg = codeword.slice(0, message_bits());
  std::uint32_t x = field_.element_at(codeword, message_bits());
  std::uint32_t tag = field_.element_at(codeword, message_bits() + u_);
  std::uint32_t expect = field_.pow(x, dd_ + 2);
  for (int i = 1; i <= dd_; ++i)
    expect ^= field_.mul(field_.element_at(msg, (i - 1) * u_), field_.pow(x, i));
  if (expect != tag) return std::nullopt;
  return msg;
}

// ---- ErasurePattern ----

ErasurePattern::ErasurePattern(int code_len, std::vector<int> surviving)
    : code_len_(code_len), surviving_(std::move(surviving)) {
  std::sort(surviving_.begin(), surviving_.end());
  for (std::size_t i = 0; i < surviving_.size(); ++i) {
    if (surviving_[i] < 0 || surviving_[i] >= code_len)
      throw DimensionError("ErasurePattern: position out of range");
    if (i > 0 && surviving_[i] == surviving_[i - 1])
      throw DimensionError("ErasurePattern: duplicate position");
  }
}

ErasurePattern ErasurePattern::all(int code_len) {
  std::vector<int> s(code_len);
  for (int i = 0; i < code_len; ++i) s[i] = i;
  return ErasurePattern(code_len, std::move(s));
}

ErasurePattern ErasurePattern::from_blocks(int code_len, int block_bits,
                                           const std::vector<int>& blocks) {
  std::vector<int> s;
  for (int b : blocks)
    for (int i = 0; i < block_bits; ++i) s.push_back(b * block_bits + i);
  return ErasurePattern(code_len, std::move(s));
}

BitString ErasurePattern::project(const BitString& codeword) const {
  if (codeword.size() != code_len_) throw DimensionError("project: codeword length");
  BitString out(surviving_count());
  for (int i = 0; i < surviving_count(); ++i) out.set(i, codeword.get(surviving_[i]));
  return out;
}

// ---- SaEcc ----

SaEcc SaEcc::random_linear(int msg_len, int code_len, Rng rng, int max_retries) {
  if (code_len < msg_len) throw DimensionError("SaEcc: code_len < msg_len");
  for (int i = 0; i < max_retries; ++i) {
    BitMatrix g = BitMatrix::random(msg_len, code_len, rng);
    if (g.rank() == msg_len) return SaEcc(std::move(g));
  }
  throw Error("SaEcc: no full-row-rank generator found");
}

SaEcc SaEcc::from_generator(BitMatrix g) {
  if (g.rank() != g.rows()) throw DimensionError("SaEcc: generator not full row rank");
  return SaEcc(std::move(g));
}

BitString SaEcc::encode(const BitString& msg) const { return generator_.mul_left(msg); }

bool SaEcc::decodable(const ErasurePattern& pat) const {
  return generator_.select_cols(pat.surviving()).rank() == msg_len();
}

std::optional<AffineMap> SaEcc::decoder_view(const ErasurePattern& pat) const {
  BitMatrix sub = generator_.select_cols(pat.surviving());  // msg_len x s
  const int s = sub.cols();
  const int k = msg_len();
  // Lexicographically first set of k independent columns of sub; the
  // decoder reads only those, so it is total and affine on {0,1}^s.
  std::vector<int> chosen;
  std::vector<BitString> stack;
  for (int c = 0; c < s && static_cast<int>(chosen.size()) < k; ++c) {
    BitString col(k);
    for (int r = 0; r < k; ++r) col.set(r, sub.get(r, c));
    stack.push_back(col);
    if (gf2_rank(stack) == static_cast<int>(stack.size()))
      chosen.push_back(c);
    else
      stack.pop_back();
  }
  if (static_cast<int>(chosen.size()) < k) return std::nullopt;

  // Invert the k x k column-selected generator: m * gj = y_J.
  BitMatrix gj = sub.select_cols(chosen);
  // Gauss-Jordan for the right inverse: gj * inv = I  =>  m = y_J * inv.
  BitMatrix work = gj;
  BitMatrix inv = BitMatrix::identity(k);
  for (int c = 0; c < k; ++c) {
    int pivot = -1;
    for (int r = c; r < k; ++r)
      if (work.get(r, c)) {
        pivot = r;
        break;
      }
    std::swap(work.row(c), work.row(pivot));
    std::swap(inv.row(c), inv.row(pivot));
    for (int r = 0; r < k; ++r)
      if (r != c && work.get(r, c)) {
        work.row(r) += work.row(c);
        inv.row(r) += inv.row(c);
      }
  }
  // dec: {0,1}^s -> {0,1}^k, y |-> (y restricted to chosen) * inv
  BitMatrix dec(s, k);
  for (int i = 0; i < k; ++i) dec.row(chosen[i]) = inv.row(i);
  return AffineMap::linear(std::move(dec));
}

std::optional<BitString> SaEcc::decode(const BitString& partial, const ErasurePattern& pat,
                                       bool verify_consistency) const {
  if (partial.size() != pat.surviving_count()) throw DimensionError("decode: partial length");
  auto view = decoder_view(pat);
  if (!view) return std::nullopt;
  BitString msg = view->apply(partial);
  if (verify_consistency && pat.project(encode(msg)) != partial) return std::nullopt;
  return msg;
}

AffineMap SaEcc::encoder_view() const { return AffineMap::linear(generator_); }

AffineMap SaEcc::projection_view(const ErasurePattern& pat) const {
  BitMatrix sel(code_len(), pat.surviving_count());
  for (int i = 0; i < pat.surviving_count(); ++i) sel.set(pat.surviving()[i], i, true);
  return AffineMap::linear(std::move(sel));
}

Rational SaEcc::exhaustive_delta(int surviving_count, const Budget& budget) const {
  const int n = code_len();
  std::uint64_t total = 0, failures = 0;
  std::vector<int> comb(surviving_count);
  for (int i = 0; i < surviving_count; ++i) comb[i] = i;
  // C(n, s) patterns, one rank computation each
  std::uint64_t count = 1;
  for (int i = 0; i < surviving_count; ++i) count = count * (n - i) / (i + 1);
  budget.charge(count);
  while (true) {
    ++total;
    if (generator_.select_cols(comb).rank() < msg_len()) ++failures;
    int i = surviving_count - 1;
    while (i >= 0 && comb[i] == n - surviving_count + i) --i;
    if (i < 0) break;
    ++comb[i];
    for (int j = i + 1; j < surviving_count; ++j) comb[j] = comb[j - 1] + 1;
  }
  return Rational(failures, total);
}

Rational SaEcc::block_delta(int P, int blocks_surviving) const {
  const int block_bits = code_len() / P;
  std::uint64_t total = 0, failures = 0;
  std::vector<int> comb(blocks_surviving);
  for (int i = 0; i < blocks_surviving; ++i) comb[i] = i;
  while (true) {
    ++total;
    if (!decodable(ErasurePattern::from_blocks(code_len(), block_bits, comb))) ++failures;
    int i = blocks_surviving - 1;
    while (i >= 0 && comb[i] == P - blocks_surviving + i) --i;
    if (i < 0) break;
    ++comb[i];
    for (int j = i + 1; j < blocks_surviving; ++j) comb[j] = comb[j - 1] + 1;
  }
  return Rational(failures, total);
}

}  // namespace afss
