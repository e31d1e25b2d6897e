#pragma once
#include <functional>
#include <vector>

#include "afss/adversary.hpp"
#include "afss/budget.hpp"
#include "afss/distribution.hpp"
#include "afss/extractors.hpp"
#include "afss/fit.hpp"
#include "afss/schemes.hpp"

namespace afss {

// ---- extractor certifications (exact, enumeration-based) ----

// Worst SD(f(uniform on S); U_m) over affine subspaces of dimension
// exactly `dim`.
Rational certify_affine_function_dim(const std::function<BitString(const BitString&)>& f, int n,
                                     int m, int dim, const Budget& budget);

// Fills ax.cert: eps_table over all dimensions, headline at k, and the
// non-affineness witness.
void certify_affine_extractor(AffineExtractor& ax, int k, const Budget& budget);
// Same table for a truth-table extractor (no witness search).
void certify_affine_extractor(AffineNmExtractor& anm, int k, const Budget& budget);

// Strong-seeded certification: worst over affine sources of
// SD((Z, ext(Z,X)); (Z, U_m)), computed per seed by rank counting.
void certify_seeded(LinearSeededExtractor& ext, int k, const Budget& budget);

// Seeded non-malleability: worst, over affine sources of dimension >= k
// and every fixed-point-free seed map, of the exact triple distance
// SD((Z, E(A(Z),X), E(Z,X)); (Z, E(A(Z),X), U_m)).
Rational certify_seeded_nm(const SeededNmExtractor& e, int k, const Budget& budget);
void certify_seeded_nm_into(SeededNmExtractor& e, int k, const Budget& budget);

struct AffineNmCert {
  Rational eps_fit;    // worst minimax simulator error over (source, map)
  Rational eps_joint;  // worst joint output-pair distance
  int witness_map = -1;
  int witness_dim = -1;
};

// Seedless non-malleability of a truth table against a fixed affine
// tampering family, over affine sources of dimension >= k.
AffineNmCert certify_affine_nm(const AffineNmExtractor& anm, int k,
                               const AffineTamperFamily& family, const Budget& budget);

// Closed forms used on the hot m = 1 certification path; each equals the
// LP solution for its program (cross-checked in tests).
//   minimax simulator error for two 1-bit conditionals with flip masses
//   t0 = T_0(1), t1 = T_1(0):
Rational fit_binary_pair(const Rational& t0_flip, const Rational& t1_flip);
//   best joint output-pair distance for a 2x2 cell matrix p[a][b]:
Rational joint_nm_fit_m1(const std::vector<std::vector<Rational>>& p);
// General LP route for the same joint program, any m.
Rational joint_nm_fit(const std::vector<std::vector<Rational>>& p, int m);

// ---- composition & conditioning lemmas ----

struct CompositionCheck {
  Rational measured;  // SD(E(X), F(E(X),X); U_d, F(U_d,X)) exactly
  Rational bound;     // 2^{d+3} * eps(class)
};

CompositionCheck check_composition_lemma(const AffineExtractor& inner,
                                         const LinearSeededExtractor& outer,
                                         const AffineSubspace& source, const Budget& budget);

// Joint distribution over a (V,W) product, rational masses.
struct JointDistribution {
  std::vector<std::vector<Rational>> p;  // p[v][w]

  Rational event_mass(const std::vector<int>& w_event) const;
  bool is_distribution() const;
};

struct ConditioningCheck {
  Rational lhs;    // SD(V|W in E ; V'|W' in E)
  Rational bound;  // 2 eps / Pr[W' in E]
};

// Lemma: SD(V|W in E; V'|W' in E) <= 2 eps / Pr[W' in E] where eps is the
// joint distance. Throws on zero-probability events.
ConditioningCheck check_conditioning(const JointDistribution& pj, const JointDistribution& qj,
                                     const std::vector<int>& w_event);

// ---- exact experiment distributions ----

// Distribution of the adversary's answer bits over the encoder
// randomness, exact.
FiniteDistribution exact_view_distribution(const SchemeInstance& inst, const BitString& secret,
                                           const AdversaryProgram& adv, const Budget& budget);

// The tampering experiment: share, leak, tamper with sigma(view),
// reconstruct from R. Outcomes are secrets or BOT.
FiniteDistribution tamper_experiment(const SchemeInstance& inst, const BitString& secret,
                                     const AdversaryProgram& adv, const TamperStrategy& sigma,
                                     const std::vector<int>& R, const Budget& budget);

// All secrets at once, keyed for fit_simulator.
std::map<BitString, FiniteDistribution> tamper_experiment_all(
    const SchemeInstance& inst, const AdversaryProgram& adv, const TamperStrategy& sigma,
    const std::vector<int>& R, const Budget& budget);

}  // namespace afss
