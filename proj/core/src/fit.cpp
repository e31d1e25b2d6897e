#include "afss/fit.hpp"

#include <set>
#include <vector>

#include "afss/errors.hpp"
#include "afss/simplex.hpp"

namespace afss {

Rational simulator_error(const std::map<BitString, FiniteDistribution>& tampers,
                         const FiniteDistribution& d, BitString* witness) {
  Rational worst = -1;
  for (auto& [s, t] : tampers) {
    Rational sd = statistical_distance(t, copy_dist(d, s));
    if (sd > worst) {
      worst = sd;
      if (witness) *witness = s;
    }
  }
  return worst;
}

FiniteDistribution closed_form_candidate(
    const std::map<BitString, FiniteDistribution>& tampers) {
  FiniteDistribution d;
  Rational w(1, static_cast<long>(tampers.size()));
  for (auto& [s, t] : tampers) {
    for (auto& [o, p] : t.support()) {
      if (o == Outcome(s))
        d.add_mass(SameStar{}, w * p);
      else
        d.add_mass(o, w * p);
    }
  }
  return d;
}

namespace {

std::vector<Outcome> outcome_space(const std::map<BitString, FiniteDistribution>& tampers) {
  std::set<Outcome> os;
  os.insert(Bot{});
  for (auto& [s, t] : tampers) {
    os.insert(Outcome(s));
    for (auto& [o, p] : t.support()) os.insert(o);
  }
  return {os.begin(), os.end()};
}

SimulatorFit fit_lp(const std::map<BitString, FiniteDistribution>& tampers) {
  std::vector<Outcome> omega = outcome_space(tampers);
  const int K = static_cast<int>(omega.size());
  const int S = static_cast<int>(tampers.size());
  // variables: D_0..D_{K-1}, D_same, e_{s,o} (S*K), z
  const int var_same = K;
  const int var_e0 = K + 1;
  const int var_z = var_e0 + S * K;
  const int nv = var_z + 1;

  LinearProgram lp;
  lp.objective.assign(nv, 0);
  lp.objective[var_z] = 1;

  // sum D = 1
  lp.eq_lhs.emplace_back(nv, Rational(0));
  for (int k = 0; k <= K; ++k) lp.eq_lhs.back()[k] = 1;
  lp.eq_rhs.push_back(1);

  int si = 0;
  for (auto& [s, t] : tampers) {
    for (int k = 0; k < K; ++k) {
      // Copy(D,s)(omega_k) = D_k + [omega_k == s] * D_same
      Rational ts = t.mass(omega[k]);
      bool hits_secret = omega[k] == Outcome(s);
      int ev = var_e0 + si * K + k;
      // e + D_k (+ D_same) >= ts
      lp.ub_lhs.emplace_back(nv, Rational(0));
      lp.ub_lhs.back()[ev] = -1;
      lp.ub_lhs.back()[k] = -1;
      if (hits_secret) lp.ub_lhs.back()[var_same] = -1;
      lp.ub_rhs.push_back(-ts);
      // D_k (+ D_same) - e <= ts
      lp.ub_lhs.emplace_back(nv, Rational(0));
      lp.ub_lhs.back()[ev] = -1;
      lp.ub_lhs.back()[k] = 1;
      if (hits_secret) lp.ub_lhs.back()[var_same] = 1;
      lp.ub_rhs.push_back(ts);
    }
    // sum_k e_{s,k} <= 2z
    lp.ub_lhs.emplace_back(nv, Rational(0));
    for (int k = 0; k < K; ++k) lp.ub_lhs.back()[var_e0 + si * K + k] = 1;
    lp.ub_lhs.back()[var_z] = -2;
    lp.ub_rhs.push_back(0);
    ++si;
  }

  auto sol = solve_lp(lp);
  if (!sol) throw Error("fit_simulator: LP infeasible (cannot happen)");

  SimulatorFit fit;
  for (int k = 0; k < K; ++k)
    if (sol->x[k] != 0) fit.d.add_mass(omega[k], sol->x[k]);
  if (sol->x[var_same] != 0) fit.d.add_mass(SameStar{}, sol->x[var_same]);
  fit.eps_star = simulator_error(tampers, fit.d, &fit.witness_secret);
  fit.path = "lp";
  return fit;
}

void grid_walk(std::vector<Rational>& masses, int idx, std::uint64_t remaining,
               std::uint64_t denom, const std::function<void()>& leaf) {
  if (idx + 1 == static_cast<int>(masses.size())) {
    masses[idx] = Rational(remaining, denom);
    leaf();
    return;
  }
  for (std::uint64_t take = 0; take <= remaining; ++take) {
    masses[idx] = Rational(take, denom);
    grid_walk(masses, idx + 1, remaining - take, denom, leaf);
  }
}

SimulatorFit fit_grid(const std::map<BitString, FiniteDistribution>& tampers,
                      unsigned log_res) {
  std::vector<Outcome> omega = outcome_space(tampers);
  omega.push_back(SameStar{});
  const int K = static_cast<int>(omega.size());
  const std::uint64_t denom = std::uint64_t(1) << log_res;
  // crude cost guard: C(denom + K - 1, K - 1) points
  double points = 1;
  for (int i = 1; i < K; ++i) points *= double(denom + i) / i;
  if (points > 2e7) throw BudgetExceeded("fit_simulator grid: resolution too fine");

  SimulatorFit best;
  best.eps_star = 2;
  std::vector<Rational> masses(K);
  grid_walk(masses, 0, denom, denom, [&]() {
    FiniteDistribution d;
    for (int k = 0; k < K; ++k)
      if (masses[k] != 0) d.add_mass(omega[k], masses[k]);
    BitString w;
    Rational e = simulator_error(tampers, d, &w);
    if (e < best.eps_star) {
      best.eps_star = e;
      best.d = d;
      best.witness_secret = w;
    }
  });
  best.path = "grid";
  return best;
}

}  // namespace

SimulatorFit fit_simulator(const std::map<BitString, FiniteDistribution>& tampers,
                           FitMethod method, unsigned grid_log_resolution) {
  if (tampers.empty()) throw DimensionError("fit_simulator: no tamper distributions");
  if (method == FitMethod::Lp) return fit_lp(tampers);
  return fit_grid(tampers, grid_log_resolution);
}

}  // namespace afss
