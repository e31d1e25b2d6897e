#include <doctest.h>

#include "afss/distribution.hpp"
#include "afss/fit.hpp"
#include "afss/rng.hpp"

using namespace afss;

namespace {

FiniteDistribution random_distribution(Rng& rng, int bits, int denom_log) {
  // random rational masses with denominator 2^denom_log
  std::uint64_t denom = std::uint64_t(1) << denom_log;
  std::vector<std::uint64_t> cuts;
  for (std::uint64_t v = 0; v < (std::uint64_t(1) << bits); ++v) cuts.push_back(rng.below(denom));
  FiniteDistribution d;
  std::uint64_t total = 0;
  for (auto c : cuts) total += c;
  if (total == 0) return FiniteDistribution::point(BitString(bits));
  for (std::uint64_t v = 0; v < cuts.size(); ++v)
    if (cuts[v]) d.add_mass(BitString::from_u64(v, bits), Rational(cuts[v], total));
  return d;
}

}  // namespace

TEST_CASE("statistical distance: identity, disjoint, uniform-vs-point") {
  auto u2 = FiniteDistribution::uniform_bits(2);
  CHECK(statistical_distance(u2, u2) == 0);

  auto p = FiniteDistribution::point(BitString::from_string("0"));
  auto q = FiniteDistribution::point(BitString::from_string("1"));
  CHECK(statistical_distance(p, q) == 1);

  auto point00 = FiniteDistribution::point(BitString::from_string("00"));
  CHECK(statistical_distance(u2, point00) == Rational(3, 4));
}

TEST_CASE("statistical distance is a metric on sampled instances") {
  Rng rng(21);
  for (int i = 0; i < 50; ++i) {
    auto a = random_distribution(rng, 3, 6);
    auto b = random_distribution(rng, 3, 6);
    auto c = random_distribution(rng, 3, 6);
    CHECK(statistical_distance(a, b) == statistical_distance(b, a));
    CHECK(statistical_distance(a, c) <= statistical_distance(a, b) + statistical_distance(b, c));
    CHECK(statistical_distance(a, b) >= 0);
    CHECK(statistical_distance(a, b) <= 1);
    CHECK(a.is_distribution());
  }
}

TEST_CASE("copy: reassigns same* mass and nothing else") {
  BitString s = BitString::from_string("1");
  auto same = FiniteDistribution::point(SameStar{});
  CHECK(copy_dist(same, s) == FiniteDistribution::point(Outcome(s)));

  auto plain = FiniteDistribution::uniform_bits(1);
  CHECK(copy_dist(plain, s) == plain);

  FiniteDistribution half;
  half.add_mass(SameStar{}, Rational(1, 2));
  half.add_mass(BitString::from_string("0"), Rational(1, 2));
  FiniteDistribution expect;
  expect.add_mass(BitString::from_string("1"), Rational(1, 2));
  expect.add_mass(BitString::from_string("0"), Rational(1, 2));
  CHECK(copy_dist(half, s) == expect);
}

TEST_CASE("copy preserves total mass and never outputs same*") {
  Rng rng(22);
  for (int i = 0; i < 30; ++i) {
    FiniteDistribution d = random_distribution(rng, 2, 5);
    // move a random slice of mass to same* and bot
    FiniteDistribution mixed;
    Rational taken(1, 4);
    mixed.add_mass(SameStar{}, taken / 2);
    mixed.add_mass(Bot{}, taken / 2);
    for (auto& [o, p] : d.support()) mixed.add_mass(o, p * Rational(3, 4));
    BitString s = rng.bits(2);
    auto out = copy_dist(mixed, s);
    CHECK(out.total() == mixed.total());
    for (auto& [o, p] : out.support()) CHECK(!std::holds_alternative<SameStar>(o));
  }
}

TEST_CASE("fit_simulator: identical tampers need no secret dependence") {
  auto common = FiniteDistribution::uniform_bits(1);
  std::map<BitString, FiniteDistribution> tampers;
  tampers[BitString::from_string("0")] = common;
  tampers[BitString::from_string("1")] = common;
  auto fit = fit_simulator(tampers);
  CHECK(fit.eps_star == 0);
  CHECK(statistical_distance(copy_dist(fit.d, BitString::from_string("0")), common) == 0);
}

TEST_CASE("fit_simulator: identity tampering is same*") {
  std::map<BitString, FiniteDistribution> tampers;
  for (int s = 0; s < 2; ++s) {
    BitString sec = BitString::from_u64(s, 1);
    tampers[sec] = FiniteDistribution::point(sec);
  }
  auto fit = fit_simulator(tampers);
  CHECK(fit.eps_star == 0);
}

TEST_CASE("fit_simulator: LP value cross-checked by grid search") {
  // Tamper_0 = point on 0, Tamper_1 = uniform{0,1}
  std::map<BitString, FiniteDistribution> tampers;
  tampers[BitString::from_string("0")] = FiniteDistribution::point(BitString::from_string("0"));
  tampers[BitString::from_string("1")] = FiniteDistribution::uniform_bits(1);
  auto lp = fit_simulator(tampers, FitMethod::Lp);
  auto grid = fit_simulator(tampers, FitMethod::Grid, 6);
  CHECK(lp.path == "lp");
  CHECK(grid.path == "grid");
  // D = (1/2 on "0", 1/2 on same*) reproduces both tampers exactly
  CHECK(lp.eps_star == 0);
  CHECK(grid.eps_star == 0);
}

TEST_CASE("fit_simulator: LP never loses to the grid or the closed form") {
  Rng rng(23);
  for (int i = 0; i < 12; ++i) {
    std::map<BitString, FiniteDistribution> tampers;
    for (int s = 0; s < 2; ++s)
      tampers[BitString::from_u64(s, 1)] = random_distribution(rng, 1, 4);
    auto lp = fit_simulator(tampers, FitMethod::Lp);
    auto grid = fit_simulator(tampers, FitMethod::Grid, 5);
    auto candidate = closed_form_candidate(tampers);
    CHECK(lp.eps_star <= grid.eps_star);
    CHECK(lp.eps_star <= simulator_error(tampers, candidate));
    // the witness realizes the reported maximum
    CHECK(statistical_distance(tampers.at(lp.witness_secret),
                               copy_dist(lp.d, lp.witness_secret)) == lp.eps_star);
  }
}
