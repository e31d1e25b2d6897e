#include "afss/extractors.hpp"

#include <algorithm>

#include "afss/errors.hpp"
#include "afss/verify.hpp"

namespace afss {

Rational ExtractorCert::eps_at(int dim) const {
  if (eps_table.empty()) return eps;
  int j = std::clamp(dim, 0, static_cast<int>(eps_table.size()) - 1);
  return eps_table[j];
}

Rational ExtractorCert::eps_from(int k_min) const {
  if (eps_table.empty()) return eps;
  Rational worst = 0;
  for (int j = std::max(0, k_min); j < static_cast<int>(eps_table.size()); ++j)
    worst = std::max(worst, eps_table[j]);
  return worst;
}

// ---- LinearSeededExtractor ----

LinearSeededExtractor LinearSeededExtractor::toeplitz(int n, int m) {
  LinearSeededExtractor e;
  e.n_ = n;
  e.m_ = m;
  e.d_ = n + m - 1;
  e.realization_ = Realization::Toeplitz;
  return e;
}

LinearSeededExtractor LinearSeededExtractor::random_linear(int n, int d, int m, Rng rng) {
  if (d > 20) throw DimensionError("random_linear: seed space too large to materialize");
  LinearSeededExtractor e;
  e.n_ = n;
  e.d_ = d;
  e.m_ = m;
  e.realization_ = Realization::RandomLinear;
  e.matrices_.reserve(std::size_t(1) << d);
  for (std::uint64_t z = 0; z < (std::uint64_t(1) << d); ++z) {
    Rng child = rng.split(z);
    BitMatrix mat = BitMatrix::random(n, m, child);
    while (mat.rank() < m) mat = BitMatrix::random(n, m, child);
    e.matrices_.push_back(std::move(mat));
  }
  return e;
}

BitMatrix LinearSeededExtractor::seed_matrix(const BitString& z) const {
  if (z.size() != d_) throw DimensionError("seed_matrix: seed length mismatch");
  if (realization_ == Realization::RandomLinear) return matrices_[z.as_u64()];
  // Toeplitz T (m x n), T[i][j] = z[i - j + n - 1]; returned transposed to
  // the row convention.
  BitMatrix s(n_, m_);
  for (int j = 0; j < n_; ++j)
    for (int i = 0; i < m_; ++i)
      if (z.get(i - j + n_ - 1)) s.set(j, i, true);
  return s;
}

BitString LinearSeededExtractor::extract(const BitString& z, const BitString& x) const {
  if (x.size() != n_) throw DimensionError("extract: source length mismatch");
  return seed_matrix(z).mul_left(x);
}

bool LinearSeededExtractor::seed_full_rank(const BitString& z) const {
  return seed_matrix(z).rank() == m_;
}

BitString LinearSeededExtractor::invert(const BitString& z, const BitString& s, Rng& rng) const {
  BitMatrix mat = seed_matrix(z);
  if (mat.rank() < m_) throw RankDeficientSeed("invert: extract(z,.) not surjective");
  return sample_preimage(AffineMap::linear(std::move(mat)), s, rng);
}

// ---- AffineExtractor ----

AffineExtractor::AffineExtractor(int n, int m) : n_(n), m_(m) {
  if (n % 2 != 0) throw DimensionError("AffineExtractor: n must be even");
  int h = n / 2;
  // Multiply-by-x map of GF(2^h) in row convention; powers give the
  // full-rank public mixers.
  Gf2m field(h);
  BitMatrix mulx(h, h);
  for (int i = 0; i < h; ++i) {
    std::uint32_t v = field.mul(2, std::uint32_t(1) << i);  // x * x^i
    for (int b = 0; b < h; ++b)
      if ((v >> b) & 1) mulx.set(i, b, true);
  }
  BitMatrix p = BitMatrix::identity(h);
  for (int j = 0; j < m; ++j) {
    mixers_.push_back(p);
    p = p.mul(mulx);
  }
  masks_.assign(m, BitString(n));
}

BitString AffineExtractor::extract(const BitString& x) const {
  if (x.size() != n_) throw DimensionError("AffineExtractor: length mismatch");
  int h = n_ / 2;
  BitString left = x.slice(0, h);
  BitString right = x.slice(h, h);
  BitString out(m_);
  for (int j = 0; j < m_; ++j) {
    bool bit = left.dot(mixers_[j].mul_left(right)) ^ masks_[j].dot(x);
    out.set(j, bit);
  }
  return out;
}

// ---- ComposedAffineExtractor ----

ComposedAffineExtractor::ComposedAffineExtractor(AffineExtractor inner,
                                                 LinearSeededExtractor outer)
    : inner_(std::move(inner)), outer_(std::move(outer)) {
  if (inner_.m() != outer_.d())
    throw DimensionError("composed: inner output length != outer seed length");
  if (inner_.n() != outer_.n())
    throw DimensionError("composed: inner and outer source lengths differ");
}

BitString ComposedAffineExtractor::extract(const BitString& sd_x) const {
  if (sd_x.size() != in_dim()) throw DimensionError("composed extract: length mismatch");
  BitString sd = sd_x.slice(0, d());
  BitString x = sd_x.slice(d(), n());
  return outer_.extract(inner_.extract(x) + sd, x);
}

BitString ComposedAffineExtractor::invert(const BitString& s, Rng& rng, int max_retries) const {
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    BitString z = rng.bits(d());
    if (!outer_.seed_full_rank(z)) continue;
    BitString x = outer_.invert(z, s, rng);
    return (inner_.extract(x) + z).concat(x);
  }
  throw RankDeficientSeed("composed invert: no full-rank seed found");
}

// ---- SeededNmExtractor ----

static std::uint32_t find_generator(const Gf2m& field) {
  std::uint32_t group = field.order() - 1;
  for (std::uint32_t g = 2; g < field.order(); ++g) {
    std::uint32_t v = g;
    unsigned ord = 1;
    while (v != 1) {
      v = field.mul(v, g);
      ++ord;
    }
    if (ord == group) return g;
  }
  return 1;  // m = 1: the trivial group
}

SeededNmExtractor SeededNmExtractor::ip_field(int n, int d, int m) {
  if (n % m != 0) throw DimensionError("ip_field: m must divide n");
  SeededNmExtractor e;
  e.n_ = n;
  e.d_ = d;
  e.m_ = m;
  e.realization_ = Realization::IpField;
  Gf2m field(m);
  const int words = n / m;
  const std::uint64_t seeds = std::uint64_t(1) << d;
  // injectivity of the base-(2^m - 1) digit encoding
  double capacity = 1;
  for (int i = 0; i < words && capacity < 2e18; ++i) capacity *= field.order() - 1;
  if (capacity < double(seeds)) throw DimensionError("ip_field: seed space too large to encode");
  std::uint32_t g = find_generator(field);
  for (std::uint64_t z = 0; z < seeds; ++z) {
    std::vector<std::uint32_t> enc(words);
    std::uint64_t idx = z;
    for (int i = 0; i < words; ++i) {
      enc[i] = field.pow(g, idx % (field.order() - 1));
      idx /= field.order() - 1;
    }
    e.enc_.push_back(std::move(enc));
  }
  return e;
}

SeededNmExtractor SeededNmExtractor::lookup(int n, int d, int m, std::vector<BitMatrix> mats) {
  if (static_cast<int>(mats.size()) != (1 << d)) throw DimensionError("lookup: need 2^d matrices");
  SeededNmExtractor e;
  e.n_ = n;
  e.d_ = d;
  e.m_ = m;
  e.realization_ = Realization::LookupTable;
  e.matrices_ = std::move(mats);
  return e;
}

BitString SeededNmExtractor::extract(const BitString& z, const BitString& x) const {
  if (z.size() != d_ || x.size() != n_) throw DimensionError("nm extract: length mismatch");
  if (realization_ == Realization::LookupTable) return matrices_[z.as_u64()].mul_left(x);
  Gf2m field(m_);
  const auto& enc = enc_[z.as_u64()];
  std::uint32_t acc = 0;
  for (int i = 0; i < n_ / m_; ++i)
    acc ^= field.mul(field.element_at(x, i * m_), enc[i]);
  BitString out(m_);
  field.store_at(out, 0, acc);
  return out;
}

BitMatrix SeededNmExtractor::source_matrix(const BitString& z) const {
  BitMatrix mat(n_, m_);
  for (int i = 0; i < n_; ++i) {
    BitString e(n_);
    e.set(i, true);
    mat.row(i) = extract(z, e);
  }
  return mat;
}

bool SeededNmExtractor::seed_full_rank(const BitString& z) const {
  return source_matrix(z).rank() == m_;
}

BitString SeededNmExtractor::invert(const BitString& z, const BitString& s, Rng& rng) const {
  BitMatrix mat = source_matrix(z);
  if (mat.rank() < m_) throw RankDeficientSeed("nm invert: seed not surjective");
  return sample_preimage(AffineMap::linear(std::move(mat)), s, rng);
}

// ---- AffineNmExtractor ----

AffineNmExtractor::AffineNmExtractor(int n, int m, std::vector<BitString> table)
    : n_(n), m_(m), table_(std::move(table)) {
  if (table_.size() != (std::size_t(1) << n)) throw DimensionError("AffineNmExtractor: table size");
  for (auto& v : table_)
    if (v.size() != m) throw DimensionError("AffineNmExtractor: entry width");
}

std::vector<BitString> AffineNmExtractor::preimage(const BitString& s) const {
  std::vector<BitString> out;
  for (std::uint64_t x = 0; x < table_.size(); ++x)
    if (table_[x] == s) out.push_back(BitString::from_u64(x, n_));
  return out;
}

BitString AffineNmExtractor::invert(const BitString& s, Rng& rng) const {
  // rejection sampling over the truth table
  for (int attempt = 0; attempt < 64 << n_; ++attempt) {
    BitString x = rng.bits(n_);
    if (table_[x.as_u64()] == s) return x;
  }
  auto pre = preimage(s);
  if (pre.empty()) throw DimensionError("anm invert: empty preimage");
  return pre[rng.below(pre.size())];
}

bool AffineNmExtractor::balanced() const {
  std::vector<std::uint64_t> counts(std::size_t(1) << m_, 0);
  for (auto& v : table_) ++counts[v.as_u64()];
  for (auto c : counts)
    if (c != table_.size() >> m_) return false;
  return true;
}

// ---- tampering family ----

AffineTamperFamily AffineTamperFamily::standard(int n, int extra_random, Rng rng) {
  AffineTamperFamily fam;
  fam.maps.push_back(AffineMap::identity(n));
  for (std::uint64_t c = 0; c < (std::uint64_t(1) << n); ++c)
    fam.maps.push_back(AffineMap::constant(n, BitString::from_u64(c, n)));
  for (std::uint64_t t = 1; t < (std::uint64_t(1) << n); ++t)
    fam.maps.push_back(AffineMap::translation(BitString::from_u64(t, n)));
  Rng pool = rng.split("invertible-pool");
  for (int i = 0; i < 8; ++i) {
    BitMatrix mat = BitMatrix::random(n, n, pool);
    while (mat.rank() < n) mat = BitMatrix::random(n, n, pool);
    fam.maps.push_back(AffineMap(std::move(mat), pool.bits(n)));
  }
  Rng rand = rng.split("random-maps");
  for (int i = 0; i < extra_random; ++i) fam.maps.push_back(AffineMap::random(n, n, rand));
  fam.description = "identity + all constants + all translations + 8 invertible + " +
                    std::to_string(extra_random) + " pseudorandom affine maps (seed " +
                    std::to_string(rng.seed()) + ")";
  return fam;
}

// ---- searches ----

SeededNmSearchResult search_seeded_nm(int n, int d, int m, int k, const Rational& eps,
                                      int trials, Rng rng, const Budget& budget) {
  SeededNmSearchResult res;
  for (int trial = 0; trial < trials; ++trial) {
    Rng child = rng.split(std::uint64_t(trial));
    std::vector<BitMatrix> mats;
    for (int z = 0; z < (1 << d); ++z) {
      BitMatrix mat = BitMatrix::random(n, m, child);
      while (mat.rank() < m) mat = BitMatrix::random(n, m, child);
      mats.push_back(std::move(mat));
    }
    SeededNmExtractor cand = SeededNmExtractor::lookup(n, d, m, std::move(mats));
    Rational e = certify_seeded_nm(cand, k, budget);
    res.trials_used = trial + 1;
    if (e < res.best_eps) res.best_eps = e;
    if (e <= eps) {
      certify_seeded_nm_into(cand, k, budget);
      res.found = std::move(cand);
      return res;
    }
  }
  return res;
}

AffineNmSearchResult search_affine_nm(int n, int m, int k, const Rational& eps, int trials,
                                      Rng rng, const AffineTamperFamily& family,
                                      const Budget& budget) {
  AffineNmSearchResult res;
  const std::uint64_t size = std::uint64_t(1) << n;
  for (int trial = 0; trial < trials; ++trial) {
    Rng child = rng.split(std::uint64_t(trial));
    // random balanced table: equal preimage counts make the inverter
    // marginal exactly uniform
    std::vector<BitString> table(size);
    for (std::uint64_t i = 0; i < size; ++i)
      table[i] = BitString::from_u64(i & ((std::uint64_t(1) << m) - 1), m);
    for (std::uint64_t i = size - 1; i > 0; --i)
      std::swap(table[i], table[child.below(i + 1)]);

    AffineNmExtractor cand(n, m, std::move(table));
    AffineNmCert cert = certify_affine_nm(cand, k, family, budget);
    res.trials_used = trial + 1;
    if (cert.eps_fit < res.best_eps) res.best_eps = cert.eps_fit;
    if (cert.eps_fit <= eps) {
      certify_affine_extractor(cand, k, budget);
      cand.cert_eps_nm = cert.eps_fit;
      cand.cert_eps_joint = cert.eps_joint;
      cand.cert_family = family.description;
      res.found = std::move(cand);
      return res;
    }
  }
  return res;
}

}  // namespace afss
