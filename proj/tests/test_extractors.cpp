#include <doctest.h>

#include <map>
#include <set>

#include "afss/errors.hpp"
#include "afss/extractors.hpp"
#include "afss/verify.hpp"

using namespace afss;

namespace {
Budget big() { return Budget::with(std::uint64_t(1) << 28); }
}

TEST_CASE("toeplitz: zero seed, linearity, seed matrix shape") {
  auto ext = LinearSeededExtractor::toeplitz(6, 2);
  CHECK(ext.d() == 7);
  Rng rng(41);
  BitString z0(7);
  for (int i = 0; i < 20; ++i) CHECK(ext.extract(z0, rng.bits(6)).is_zero());

  for (int i = 0; i < 200; ++i) {
    BitString z = rng.bits(7), a = rng.bits(6), b = rng.bits(6);
    CHECK(ext.extract(z, a) + ext.extract(z, b) == ext.extract(z, a + b));
    CHECK(ext.extract(z, BitString(6)).is_zero());
  }
  CHECK_THROWS_AS(ext.extract(BitString(6), BitString(6)), DimensionError);
}

TEST_CASE("toeplitz(6,2): certified table and the leftover-hash bound at k=4") {
  auto ext = LinearSeededExtractor::toeplitz(6, 2);
  Budget b = big();
  certify_seeded(ext, 4, b);
  // worst case over affine (6,4)-sources is well under 2^{-(k-m)/2} = 1/2
  CHECK(ext.cert.eps <= Rational(1, 2));
  std::vector<Rational> expect = {Rational(3, 4),    Rational(9, 16),  Rational(21, 64),
                                  Rational(45, 256), Rational(45, 512), Rational(21, 512),
                                  Rational(9, 512)};
  CHECK(ext.cert.eps_table == expect);
  CHECK(ext.cert.eps == Rational(45, 512));

  // rerunning reproduces the certificate bit-exactly
  auto again = LinearSeededExtractor::toeplitz(6, 2);
  Budget b2 = big();
  certify_seeded(again, 4, b2);
  CHECK(again.cert.eps_table == ext.cert.eps_table);
}

TEST_CASE("seeded inversion: unique preimage, identity, uniform coset") {
  Rng rng(42);
  // m = n with a full-rank seed: the unique preimage
  auto sq = LinearSeededExtractor::random_linear(4, 2, 4, rng.split("sq"));
  for (std::uint64_t z = 0; z < 4; ++z) {
    BitString zz = BitString::from_u64(z, 2);
    REQUIRE(sq.seed_full_rank(zz));
    for (int i = 0; i < 10; ++i) {
      BitString s = rng.bits(4);
      BitString x = sq.invert(zz, s, rng);
      CHECK(sq.extract(zz, x) == s);
      CHECK(sq.invert(zz, s, rng) == x);  // bijective: no kernel freedom
    }
  }

  // re-extraction identity on 10^3 random (z, s)
  auto ext = LinearSeededExtractor::random_linear(6, 2, 1, rng.split("ext"));
  for (int i = 0; i < 1000; ++i) {
    BitString z = rng.bits(2), s = rng.bits(1);
    CHECK(ext.extract(z, ext.invert(z, s, rng)) == s);
  }

  // preimage frequency roughly uniform over the 2^{n-m} coset
  BitString z = BitString::from_u64(1, 2), s = BitString::from_u64(1, 1);
  std::map<BitString, int> freq;
  const int K = 16000;
  for (int i = 0; i < K; ++i) ++freq[ext.invert(z, s, rng)];
  CHECK(freq.size() == 32);
  for (auto& [x, c] : freq) CHECK(std::abs(c - K / 32) < 4 * K / 100);
}

TEST_CASE("random_linear(6,2,1): certified table shows the short-seed floor") {
  auto ext = LinearSeededExtractor::random_linear(6, 2, 1, Rng(42).split("seeded"));
  Budget b = big();
  certify_seeded(ext, 1, b);
  // with 4 one-bit masks there is always a direction all of them kill,
  // so low dimensions keep the full half distance
  CHECK(ext.cert.eps_table[0] == Rational(1, 2));
  CHECK(ext.cert.eps_table[1] == Rational(1, 2));
  CHECK(ext.cert.eps == Rational(1, 2));
  CHECK(ext.cert.eps_table[6] == 0);  // nonzero masks are exact on the full space
}

TEST_CASE("quadratic affine extractor: zero map, non-affineness, table") {
  AffineExtractor ax(6, 1);
  CHECK(ax.extract(BitString(6)).is_zero());  // masks default to zero
  Budget b = big();
  certify_affine_extractor(ax, 5, b);
  REQUIRE(ax.nonaffine_witness);
  auto [wa, wb] = *ax.nonaffine_witness;
  CHECK(ax.extract(wa) + ax.extract(wb) + ax.extract(BitString(6)) != ax.extract(wa + wb));

  // inner product of halves: exact worst case over every (6,5) source
  CHECK(ax.cert.eps_table[5] == Rational(1, 8));
  CHECK(ax.cert.eps == Rational(1, 8));  // dim-6 value 1/16 is smaller
  CHECK(ax.cert.eps_table[6] == Rational(1, 16));
  // negative control: some affine (6,3)-source is constant (max half SD)
  CHECK(ax.cert.eps_table[3] == Rational(1, 2));
}

TEST_CASE("quadratic affine extractor with two output bits") {
  AffineExtractor ax(6, 2);
  Budget b = big();
  certify_affine_extractor(ax, 0, b);
  std::vector<Rational> expect = {Rational(3, 4),  Rational(3, 4),  Rational(3, 4),
                                  Rational(3, 4),  Rational(3, 8),  Rational(3, 16),
                                  Rational(3, 32)};
  CHECK(ax.cert.eps_table == expect);
}

TEST_CASE("composed extractor: cancellation and seed steering") {
  Rng rng(43);
  AffineExtractor inner(6, 2);
  auto outer = LinearSeededExtractor::random_linear(6, 2, 1, rng.split("outer"));
  ComposedAffineExtractor comp(inner, outer);
  CHECK(comp.in_dim() == 8);

  for (int i = 0; i < 100; ++i) {
    BitString x = rng.bits(6), z = rng.bits(2);
    // choosing sd = inner(x) + z steers the outer extractor to seed z
    BitString sd = inner.extract(x) + z;
    CHECK(comp.extract(sd.concat(x)) == outer.extract(z, x));
    // flipping sd flips which seed is used
    BitString sd2 = sd;
    sd2.flip(0);
    BitString z2 = z;
    z2.flip(0);
    CHECK(comp.extract(sd2.concat(x)) == outer.extract(z2, x));
  }
}

TEST_CASE("composed inversion: round trip, coset marginal, exact uniformity") {
  Rng rng(44);
  AffineExtractor inner(6, 2);
  auto outer = LinearSeededExtractor::random_linear(6, 2, 1, rng.split("outer"));
  ComposedAffineExtractor comp(inner, outer);

  for (std::uint64_t s = 0; s < 2; ++s) {
    BitString sec = BitString::from_u64(s, 1);
    for (int i = 0; i < 200; ++i) CHECK(comp.extract(comp.invert(sec, rng)) == sec);
  }

  // The x-marginal is uniform over preimages: count exactly. All seeds are
  // full rank, so (z, coset point) -> (sd || x) is a bijection and the
  // inverter's output for uniform secrets is exactly uniform (mu = 0).
  std::map<BitString, int> support;
  for (std::uint64_t s = 0; s < 2; ++s) {
    BitString sec = BitString::from_u64(s, 1);
    for (std::uint64_t z = 0; z < 4; ++z) {
      BitString zz = BitString::from_u64(z, 2);
      auto coset = preimage_subspace(AffineMap::linear(outer.seed_matrix(zz)), sec);
      REQUIRE(coset);
      CHECK(coset->point_count() == 32);
      for (auto& x : coset->points()) ++support[(inner.extract(x) + zz).concat(x)];
    }
  }
  CHECK(support.size() == 256);  // every (sd || x) exactly once: mu = 0
  for (auto& [k, c] : support) CHECK(c == 1);
}

TEST_CASE("ip nm extractor: zero source, linearity, probed matrix") {
  auto e = SeededNmExtractor::ip_field(8, 2, 2);
  Rng rng(45);
  for (std::uint64_t z = 0; z < 4; ++z) {
    BitString zz = BitString::from_u64(z, 2);
    CHECK(e.extract(zz, BitString(8)).is_zero());
    // GF(2)-linearity, exhaustively
    for (std::uint64_t a = 0; a < 256; ++a)
      for (std::uint64_t b = a; b < 256; b += 37) {
        BitString xa = BitString::from_u64(a, 8), xb = BitString::from_u64(b, 8);
        CHECK(e.extract(zz, xa) + e.extract(zz, xb) == e.extract(zz, xa + xb));
      }
    // the probed matrix reproduces the map
    BitMatrix mat = e.source_matrix(zz);
    for (int i = 0; i < 50; ++i) {
      BitString x = rng.bits(8);
      CHECK(mat.mul_left(x) == e.extract(zz, x));
    }
  }
  CHECK_THROWS_AS(SeededNmExtractor::ip_field(8, 2, 3), DimensionError);
}

TEST_CASE("ip nm extractor: certification at n=8, m=2, k=6 and the m=n case") {
  auto e = SeededNmExtractor::ip_field(8, 2, 2);
  Budget b = big();
  CHECK(certify_seeded_nm(e, 6, b) == Rational(9, 16));

  // m = n: multiplication by distinct constants; the third coordinate of
  // the triple is determined by the second, so the distance is 1 - 2^-m
  auto e6 = SeededNmExtractor::ip_field(6, 2, 6);
  for (std::uint64_t z = 0; z < 4; ++z)
    CHECK(e6.seed_full_rank(BitString::from_u64(z, 2)));
  Budget b2 = big();
  CHECK(certify_seeded_nm(e6, 6, b2) == Rational(63, 64));
}

TEST_CASE("seed-ignoring extractor fails non-malleability maximally") {
  Rng rng(46);
  BitMatrix shared = BitMatrix::random(6, 1, rng);
  while (shared.rank() < 1) shared = BitMatrix::random(6, 1, rng);
  auto e = SeededNmExtractor::lookup(6, 2, 1, {shared, shared, shared, shared});
  Budget b = big();
  CHECK(certify_seeded_nm(e, 6, b) == Rational(1, 2));  // 1 - 2^-m
}

TEST_CASE("m=0 degenerate nm certification is zero") {
  auto e = SeededNmExtractor::lookup(4, 1, 0, {BitMatrix(4, 0), BitMatrix(4, 0)});
  Budget b = big();
  CHECK(certify_seeded_nm(e, 2, b) == 0);
}

TEST_CASE("d=1: the unique fixed-point-free seed map drives the certification") {
  // two seeds, one adversary (the swap); value pinned by a direct oracle
  Rng rng(47);
  std::vector<BitMatrix> mats;
  for (int z = 0; z < 2; ++z) {
    BitMatrix m = BitMatrix::random(4, 1, rng);
    while (m.rank() < 1) m = BitMatrix::random(4, 1, rng);
    mats.push_back(std::move(m));
  }
  auto e = SeededNmExtractor::lookup(4, 1, 1, mats);
  Budget b = big();
  Rational cert = certify_seeded_nm(e, 4, b);

  // oracle: build the two triple distributions over (z, a, b) by hand for
  // the swap adversary on the full source
  std::map<BitString, Rational> left, right;
  for (std::uint64_t z = 0; z < 2; ++z) {
    BitString zz = BitString::from_u64(z, 1);
    BitString za = BitString::from_u64(1 - z, 1);
    for (std::uint64_t x = 0; x < 16; ++x) {
      BitString xs = BitString::from_u64(x, 4);
      BitString a = e.extract(za, xs), bb = e.extract(zz, xs);
      left[zz.concat(a).concat(bb)] += Rational(1, 64);
      right[zz.concat(a).concat(BitString::from_u64(0, 1))] += Rational(1, 128);
      right[zz.concat(a).concat(BitString::from_u64(1, 1))] += Rational(1, 128);
    }
  }
  Rational sd = 0;
  for (auto& [k, v] : left) {
    Rational diff = v - right[k];
    sd += diff < 0 ? -diff : diff;
  }
  for (auto& [k, v] : right)
    if (!left.count(k)) sd += v;
  CHECK(cert == sd / 2);
}

TEST_CASE("search_seeded_nm: k=4 is out of reach, k=5 succeeds") {
  Budget b = big();
  // Any four masks collapse on some (6,4)-source: two seed pairs agree
  // after restriction, and the pairing adversary is fixed-point-free, so
  // the certified distance is always exactly 1/2.
  auto res4 = search_seeded_nm(6, 2, 1, 4, Rational(3, 10), 50, Rng(7), b);
  CHECK(!res4.found);
  CHECK(res4.best_eps == Rational(1, 2));
  CHECK(res4.trials_used == 50);

  auto res5 = search_seeded_nm(6, 2, 1, 5, Rational(3, 10), 1000, Rng(7), b);
  REQUIRE(res5.found);
  CHECK(res5.best_eps == Rational(1, 4));
  CHECK(res5.trials_used == 1);
  // re-certification from the stored tables is bit-exact
  Budget b2 = big();
  CHECK(certify_seeded_nm(*res5.found, 5, b2) == res5.found->cert.eps);
  CHECK(res5.found->cert.eps == Rational(1, 4));
}

TEST_CASE("search_seeded_nm: the wide-output point reports NotFound") {
  Budget b = big();
  auto res = search_seeded_nm(6, 2, 3, 4, Rational(3, 10), 20, Rng(7), b);
  CHECK(!res.found);
  CHECK(res.best_eps > Rational(3, 10));
}

TEST_CASE("search_affine_nm: balanced table found and certified") {
  Budget b = big();
  auto fam = AffineTamperFamily::standard(6, 64, Rng(9).split("fam"));
  CHECK(fam.maps.size() == 1 + 64 + 63 + 8 + 64);
  auto res = search_affine_nm(6, 1, 5, Rational(45, 100), 20, Rng(9).split("search"), fam, b);
  REQUIRE(res.found);
  CHECK(res.trials_used == 1);
  CHECK(res.found->balanced());
  CHECK(res.found->cert_eps_nm == Rational(15, 34));
  CHECK(res.found->cert_eps_joint == Rational(7, 16));
  CHECK(res.found->cert.eps_table[5] == Rational(5, 32));
  CHECK(res.found->cert.eps_table[6] == 0);  // balanced tables are exact on the full space

  // identity tampering contributes nothing; constants are exact
  CHECK(fit_binary_pair(Rational(0), Rational(0)) == 0);
  CHECK(fit_binary_pair(Rational(1), Rational(0)) == 0);
  CHECK(fit_binary_pair(Rational(1), Rational(1)) == Rational(1, 2));

  // preimage sampling is uniform over the stored table
  Rng rng(48);
  auto pre = res.found->preimage(BitString::from_u64(0, 1));
  CHECK(pre.size() == 32);
  std::map<BitString, int> freq;
  for (int i = 0; i < 6400; ++i) ++freq[res.found->invert(BitString::from_u64(0, 1), rng)];
  for (auto& x : pre) CHECK(freq.count(x));
}

TEST_CASE("closed-form fits agree with the LP routes") {
  Rng rng(49);
  for (int i = 0; i < 40; ++i) {
    // random 2x2 joint with small denominators
    std::vector<std::vector<Rational>> p(2, std::vector<Rational>(2, 0));
    std::uint64_t total = 0;
    std::vector<std::uint64_t> cells(4);
    for (auto& c : cells) {
      c = rng.below(8);
      total += c;
    }
    if (!total) continue;
    p[0][0] = Rational(cells[0], total);
    p[0][1] = Rational(cells[1], total);
    p[1][0] = Rational(cells[2], total);
    p[1][1] = Rational(cells[3], total);
    CHECK(joint_nm_fit_m1(p) == joint_nm_fit(p, 1));

    // conditional pair: closed form vs the general simulator LP
    Rational t0(rng.below(9), 8), t1(rng.below(9), 8);
    std::map<BitString, FiniteDistribution> tampers;
    FiniteDistribution d0, d1;
    if (t0 < 1) d0.add_mass(BitString::from_u64(0, 1), 1 - t0);
    if (t0 > 0) d0.add_mass(BitString::from_u64(1, 1), t0);
    if (t1 > 0) d1.add_mass(BitString::from_u64(0, 1), t1);
    if (t1 < 1) d1.add_mass(BitString::from_u64(1, 1), 1 - t1);
    tampers[BitString::from_u64(0, 1)] = d0;
    tampers[BitString::from_u64(1, 1)] = d1;
    CHECK(fit_simulator(tampers).eps_star == fit_binary_pair(t0, t1));
  }
}
