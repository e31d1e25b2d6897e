#pragma once
#include <map>
#include <string>

#include "afss/distribution.hpp"

namespace afss {

// Best simulator for a family of tampering outcomes: the distribution D
// over {0,1}^ell + {BOT, same*} minimizing max_s SD(Tamper_s, Copy(D, s)).
struct SimulatorFit {
  FiniteDistribution d;
  Rational eps_star;
  BitString witness_secret;  // realizes the max
  std::string path;          // "lp" or "grid"
};

enum class FitMethod { Lp, Grid };

SimulatorFit fit_simulator(const std::map<BitString, FiniteDistribution>& tampers,
                           FitMethod method = FitMethod::Lp, unsigned grid_log_resolution = 6);

// The admissible candidate built by moving the outcome==s mass of the
// secret-averaged tamper distribution to same*; fit_simulator can only
// improve on it.
FiniteDistribution closed_form_candidate(const std::map<BitString, FiniteDistribution>& tampers);

Rational simulator_error(const std::map<BitString, FiniteDistribution>& tampers,
                         const FiniteDistribution& d, BitString* witness = nullptr);

}  // namespace afss
