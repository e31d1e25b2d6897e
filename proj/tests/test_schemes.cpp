#include <doctest.h>

#include <set>

#include "afss/errors.hpp"
#include "afss/schemes.hpp"

using namespace afss;

namespace {

constexpr std::uint64_t kDeskSeed = 16;

Budget big() { return Budget::with(std::uint64_t(1) << 28); }

RampParams desk_lr() { return RampParams{1, 2, 3, 12, 1, 1, 6, 2}; }
RampParams desk_anm() { return RampParams{0, 2, 3, 12, 1, 0, 6, 0}; }
RampParams desk_bit() { return RampParams{0, 2, 3, 12, 2, 0, 6, 2}; }

ComponentSpec anm_spec() {
  ComponentSpec spec;
  spec.anm_k = 5;
  spec.anm_eps_target = Rational(45, 100);
  spec.anm_family_random = 64;
  return spec;
}

SchemeInstance desk(SchemeKind kind) {
  Budget b = big();
  switch (kind) {
    case SchemeKind::NonAdaptiveLR:
    case SchemeKind::AdaptiveLR:
      return SchemeInstance::make(kind, desk_lr(), kDeskSeed, b);
    case SchemeKind::AffineNM:
      return SchemeInstance::make(kind, desk_anm(), kDeskSeed, b, anm_spec());
    case SchemeKind::BitNM:
      return SchemeInstance::make(kind, desk_bit(), kDeskSeed, b);
  }
  throw Error("unreachable");
}

}  // namespace

TEST_CASE("every desk scheme round-trips from every r-subset") {
  for (auto kind : {SchemeKind::NonAdaptiveLR, SchemeKind::AdaptiveLR, SchemeKind::AffineNM,
                    SchemeKind::BitNM}) {
    CAPTURE(scheme_kind_str(kind));
    SchemeInstance inst = desk(kind);
    CHECK(inst.block_delta() == 0);
    Rng rng(1234);
    for (std::uint64_t s = 0; s < (std::uint64_t(1) << inst.secret_bits()); ++s) {
      BitString secret = BitString::from_u64(s, inst.secret_bits());
      ShareVector shares = inst.share(secret, rng);
      CHECK(shares.blocks.size() == 3);
      for (auto& blk : shares.blocks) CHECK(blk.size() == 4);
      for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) {
          auto got = inst.reconstruct({{a, shares.blocks[a]}, {b, shares.blocks[b]}});
          REQUIRE(got);
          CHECK(*got == secret);
        }
    }
  }
}

TEST_CASE("sharing is deterministic given the rng stream") {
  SchemeInstance inst = desk(SchemeKind::NonAdaptiveLR);
  BitString secret = BitString::from_u64(1, 1);
  Rng a(777), b(777);
  CHECK(inst.share(secret, a).concat() == inst.share(secret, b).concat());
  Rng c(778);
  // different stream: almost surely a different codeword
  bool same = inst.share(secret, c).concat() == inst.share(secret, a).concat();
  CHECK(!same);
}

TEST_CASE("reconstruct rejects wrong block counts and duplicates") {
  SchemeInstance inst = desk(SchemeKind::AdaptiveLR);
  Rng rng(55);
  ShareVector shares = inst.share(BitString::from_u64(0, 1), rng);
  auto res1 = inst.reconstruct_traced({{0, shares.blocks[0]}});
  CHECK(res1.fail == ReconstructFail::WrongBlockCount);
  auto res2 = inst.reconstruct_traced({{1, shares.blocks[1]}, {1, shares.blocks[1]}});
  CHECK(res2.fail == ReconstructFail::WrongBlockCount);
}

TEST_CASE("adaptive and bit kinds recompute the sampled seed on clean shares") {
  for (auto kind : {SchemeKind::AdaptiveLR, SchemeKind::BitNM}) {
    CAPTURE(scheme_kind_str(kind));
    SchemeInstance inst = desk(kind);
    Rng rng(321);
    BitString secret = BitString::from_u64(1, inst.secret_bits());
    for (int i = 0; i < 50; ++i) {
      ShareVector shares = inst.share(secret, rng);
      // decode the full codeword and check the chain is self-consistent
      BitString cw = shares.concat();
      ErasurePattern all = ErasurePattern::all(12);
      auto msg = inst.ecc().decode(all.project(cw), all);
      REQUIRE(msg);
      BitString payload = inst.payload_of_message(*msg);
      if (kind == SchemeKind::AdaptiveLR) {
        CHECK(payload == secret);
      } else {
        auto s = inst.amd().decode(payload);
        REQUIRE(s);
        CHECK(*s == secret);
      }
    }
  }
}

TEST_CASE("affine-nm preimage marginal is uniform over the truth table") {
  SchemeInstance inst = desk(SchemeKind::AffineNM);
  const auto& anm = inst.nm_affine();
  CHECK(anm.balanced());
  for (std::uint64_t s = 0; s < 2; ++s)
    CHECK(anm.preimage(BitString::from_u64(s, 1)).size() == 32);
}

TEST_CASE("structural rejections name the broken constraint") {
  Budget b = big();
  // t >= r
  RampParams bad = desk_lr();
  bad.t = 2;
  CHECK_THROWS_AS(SchemeInstance::make(SchemeKind::NonAdaptiveLR, bad, 1, b),
                  HypothesisViolation);

  // message longer than what r blocks can determine (the d = 7 shape)
  RampParams wide = desk_lr();
  wide.d = 7;
  CHECK_THROWS_WITH_AS(SchemeInstance::make(SchemeKind::NonAdaptiveLR, wide, 1, b),
                       doctest::Contains("recoverable from r"), HypothesisViolation);

  // P does not divide N
  RampParams odd = desk_lr();
  odd.N = 13;
  CHECK_THROWS_AS(SchemeInstance::make(SchemeKind::NonAdaptiveLR, odd, 1, b),
                  HypothesisViolation);
}

TEST_CASE("beta beyond the entropy chain is rejected with the slack") {
  Budget b = big();
  RampParams p = desk_lr();
  p.beta = 2;  // n - tN/P - ell = 1 is the budget
  CHECK_THROWS_WITH_AS(SchemeInstance::make(SchemeKind::NonAdaptiveLR, p, 1, b),
                       doctest::Contains("reduce beta by 1"), HypothesisViolation);
  CHECK_THROWS_AS(SchemeInstance::make(SchemeKind::AdaptiveLR, p, 1, b), HypothesisViolation);

  RampParams pb = desk_bit();
  pb.beta = 3;  // beta_max = n - tN/P - 2d = 2
  CHECK_THROWS_AS(SchemeInstance::make(SchemeKind::BitNM, pb, 1, b), HypothesisViolation);

  // the affine-NM chain rejects t = 1 outright at k = 5: the certificate
  // does not cover dimension-2 sources
  RampParams pa = desk_anm();
  pa.t = 1;
  CHECK_THROWS_AS(SchemeInstance::make(SchemeKind::AffineNM, pa, 1, b, anm_spec()),
                  HypothesisViolation);
}

TEST_CASE("hypothesis report records requirements and certified levels") {
  SchemeInstance inst = desk(SchemeKind::AdaptiveLR);
  REQUIRE(inst.hypothesis().entries.size() == 2);
  CHECK(inst.hypothesis().entries[0].required == 0);   // n - tN/P - beta - ell
  CHECK(inst.hypothesis().entries[0].certified == 0);
  CHECK(inst.hypothesis().entries[1].required == -1);  // n - tN/P - beta - d
  CHECK(inst.hypothesis().entries[1].certified == 0);  // clamped floor, shortfall recorded
  CHECK(!inst.hypothesis().entries[1].satisfied());
  CHECK(inst.hypothesis().beta_max == 1);

  SchemeInstance na = desk(SchemeKind::NonAdaptiveLR);
  CHECK(na.hypothesis().all_satisfied());
}

TEST_CASE("info ratio: desk arithmetic and the reference bound") {
  RampParams p = desk_lr();
  CHECK(info_ratio(p) == Rational(4));  // (N/P)/ell = 4/1
  CHECK(info_ratio_reference(p) == Rational(2));

  RampParams unit{0, 1, 4, 4, 1, 0, 1, 1};  // N/P = ell, beta = 0
  CHECK(info_ratio(unit) == Rational(1));
  CHECK(info_ratio_reference(unit) == Rational(1));
}

TEST_CASE("info ratio dominates the reference on a constructible sweep") {
  // threshold (t = r-1) configurations that actually construct
  int built = 0;
  for (int P = 2; P <= 4; ++P)
    for (int block = 3; block <= 5; ++block)
      for (int n = 4; n <= 6; ++n)
        for (int ell = 1; ell <= 2; ++ell)
          for (int beta = 0; beta <= 2; ++beta) {
            int N = P * block;
            int r = 2, t = 1;
            int d = r * block - n;
            if (d < 1) continue;
            RampParams p{t, r, P, N, ell, beta, n, d};
            Budget b = big();
            try {
              SchemeInstance inst = SchemeInstance::make(SchemeKind::NonAdaptiveLR, p, 5, b);
              ++built;
              CHECK(info_ratio(p) >= info_ratio_reference(p));
            } catch (const HypothesisViolation&) {
              // outside the entropy chain: not part of the sweep
            }
          }
  CHECK(built >= 20);
}

TEST_CASE("share length invariant: blocks of N/P bits, N total") {
  SchemeInstance inst = desk(SchemeKind::BitNM);
  Rng rng(9);
  ShareVector shares = inst.share(BitString::from_u64(2, 2), rng);
  int total = 0;
  for (auto& b : shares.blocks) total += b.size();
  CHECK(total == 12);
  CHECK(shares.concat().size() == 12);
}

TEST_CASE("secret and payload lengths per kind") {
  CHECK(desk(SchemeKind::NonAdaptiveLR).secret_bits() == 1);
  CHECK(desk(SchemeKind::AffineNM).payload_bits() == 1);
  SchemeInstance bit = desk(SchemeKind::BitNM);
  CHECK(bit.secret_bits() == 2);       // AMD message bits
  CHECK(bit.payload_bits() == 6);      // AMD codeword = nm extractor output
  CHECK(bit.msg_len() == 8);
  CHECK(desk(SchemeKind::AffineNM).msg_len() == 6);
}

TEST_CASE("secret padding reserves extractor output bits for randomness") {
  // wide-output table certified over the full space only, so the search
  // stays cheap; one padding bit leaves a one-bit secret
  Budget b = big();
  ComponentSpec spec;
  spec.anm_k = 6;
  spec.anm_eps_target = Rational(1);
  spec.anm_family_random = 8;
  spec.secret_pad = 1;
  SchemeInstance inst = SchemeInstance::make(SchemeKind::AffineNM, {0, 2, 3, 12, 2, 0, 6, 0},
                                             kDeskSeed, b, spec);
  CHECK(inst.secret_bits() == 1);
  CHECK(inst.payload_bits() == 2);
  Rng rng(31);
  for (std::uint64_t s = 0; s < 2; ++s) {
    BitString secret = BitString::from_u64(s, 1);
    std::set<BitString> codewords;
    for (int i = 0; i < 40; ++i) {
      ShareVector shares = inst.share(secret, rng);
      codewords.insert(shares.concat());
      auto got = inst.reconstruct({{0, shares.blocks[0]}, {1, shares.blocks[1]}});
      REQUIRE(got);
      CHECK(*got == secret);
    }
    // both padded payload values appear: the padding really is random
    CHECK(codewords.size() > 16);
  }
  // padding must leave at least one secret bit
  ComponentSpec toomuch = spec;
  toomuch.secret_pad = 2;
  Budget b2 = big();
  CHECK_THROWS_AS(SchemeInstance::make(SchemeKind::AffineNM, {0, 2, 3, 12, 2, 0, 6, 0},
                                       kDeskSeed, b2, toomuch),
                  HypothesisViolation);
}

TEST_CASE("enumerate_codewords matches the sharing distribution support") {
  SchemeInstance inst = desk(SchemeKind::NonAdaptiveLR);
  Budget b = big();
  BitString secret = BitString::from_u64(1, 1);
  auto cws = inst.enumerate_codewords(secret, b);
  CHECK(cws.size() == 4 * 32);  // seeds x preimage coset
  // every sampled share is one of the enumerated codewords
  Rng rng(77);
  std::set<BitString> all(cws.begin(), cws.end());
  for (int i = 0; i < 100; ++i) CHECK(all.count(inst.share(secret, rng).concat()));
  // and every enumerated codeword reconstructs to the secret
  for (auto& c : cws) {
    ShareVector v = ShareVector::split(c, 3);
    CHECK(*inst.reconstruct({{0, v.blocks[0]}, {1, v.blocks[1]}}) == secret);
  }
}
