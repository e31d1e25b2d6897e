#pragma once
#include <optional>
#include <string>
#include <vector>

#include "afss/adversary.hpp"
#include "afss/budget.hpp"
#include "afss/coding.hpp"
#include "afss/extractors.hpp"

namespace afss {

enum class SchemeKind { NonAdaptiveLR, AdaptiveLR, AffineNM, BitNM };

std::string scheme_kind_str(SchemeKind k);
SchemeKind scheme_kind_from_str(const std::string& s);

struct RampParams {
  int t = 0, r = 0, P = 0;  // privacy/reconstruction thresholds, players
  int N = 0;                // codeword bits, P | N
  int ell = 0;              // secret bits (BitNM: AMD message bits)
  int beta = 0;             // leakage budget
  int n = 0, d = 0;         // extractor source/seed bits (d = 0 for AffineNM)

  int block_bits() const { return N / P; }
  Rational tau_n() const { return Rational(std::int64_t(t) * N, P); }  // t*N/P exact

  void validate() const;  // structural constraints only
};

// Exact (N/P)/ell, and the reference (ell+beta)/ell it is compared with.
Rational info_ratio(const RampParams& p);
Rational info_ratio_reference(const RampParams& p);

// One entropy-chain line: the component must be certified at no more
// entropy than the construction leaves it.
struct HypothesisEntry {
  std::string name;
  int required;   // entropy budget the construction leaves (may be < 0)
  int certified;  // the component's certified k
  bool satisfied() const { return certified <= required; }
};

struct HypothesisReport {
  std::vector<HypothesisEntry> entries;
  int beta_max = 0;

  bool all_satisfied() const;
  std::string describe() const;
};

struct ShareVector {
  int block_bits = 0;
  std::vector<BitString> blocks;

  BitString concat() const;
  static ShareVector split(const BitString& codeword, int P);
};

enum class ReconstructFail { None, WrongBlockCount, EccFail, AmdReject };

struct ReconstructResult {
  std::optional<BitString> secret;
  ReconstructFail fail = ReconstructFail::None;
};

// Knobs for the component build inside SchemeInstance::make.
struct ComponentSpec {
  // AffineNM: certification entropy of the searched table (default
  // n - t*N/P - beta) and the search settings.
  int anm_k = -1;
  Rational anm_eps_target = Rational(1, 2);
  int anm_search_trials = 64;
  int anm_family_random = 64;
  // AffineNM: reserve this many extractor-output bits for fresh padding
  // randomness; the real secret is ell - secret_pad bits.
  int secret_pad = 0;
  // BitNM: AMD field exponent and symbol count.
  int amd_u = 2;
  int amd_dd = 1;
};

// One of the four constructions with its certified components. Immutable
// after construction; share/reconstruct are pure given the rng.
class SchemeInstance {
 public:
  // Builds components deterministically from rng_seed, certifies them at
  // the entropy levels the construction's chain dictates, measures the
  // block-aligned decode failure, and rejects configurations whose beta
  // exceeds the kind's budget (HypothesisViolation).
  static SchemeInstance make(SchemeKind kind, const RampParams& params, std::uint64_t rng_seed,
                             const Budget& budget, const ComponentSpec& spec = {});

  SchemeKind kind() const { return kind_; }
  const RampParams& params() const { return params_; }
  const SaEcc& ecc() const { return ecc_; }
  const HypothesisReport& hypothesis() const { return hypothesis_; }
  std::uint64_t rng_seed() const { return rng_seed_; }

  const LinearSeededExtractor& seeded() const { return *seeded_; }
  const AffineExtractor& affine_ext() const { return *affine_ext_; }
  const SeededNmExtractor& nm_seeded() const { return *nm_seeded_; }
  const AffineNmExtractor& nm_affine() const { return *nm_affine_; }
  const AmdCode& amd() const { return *amd_; }

  int secret_bits() const;   // length of the value callers share
  int payload_bits() const;  // extractor output length (AMD codeword for BitNM)
  int msg_len() const;       // ECC message bits (d+n, or n for AffineNM)

  ShareVector share(const BitString& secret, Rng& rng) const;

  ReconstructResult reconstruct_traced(const std::vector<std::pair<int, BitString>>& blocks) const;
  std::optional<BitString> reconstruct(const std::vector<std::pair<int, BitString>>& blocks) const;

  // Every equally-likely codeword of this secret (exact enumeration of the
  // encoder randomness), for the verification engine.
  std::vector<BitString> enumerate_codewords(const BitString& secret, const Budget& budget) const;

  // ECC message -> reconstructed payload (pre-AMD for BitNM), the map the
  // tampering analysis composes with induced tamperings.
  BitString payload_of_message(const BitString& msg) const;
  // Recomputed seed of the composed extractor chain (Adaptive/BitNM).
  BitString seed_of_message(const BitString& msg) const;

  Rational block_delta() const { return block_delta_; }
  Rational seed_rejection() const { return seed_rejection_; }

  // Composed error expressions of the construction, evaluated
  // with the certified component values.
  struct ErrorClaim {
    std::string name;
    Rational value;
  };
  std::vector<ErrorClaim> error_claims() const;

 private:
  SchemeInstance() = default;

  SchemeKind kind_{};
  RampParams params_{};
  std::uint64_t rng_seed_ = 0;
  std::optional<LinearSeededExtractor> seeded_;
  std::optional<AffineExtractor> affine_ext_;
  std::optional<SeededNmExtractor> nm_seeded_;
  std::optional<AffineNmExtractor> nm_affine_;
  std::optional<AmdCode> amd_;
  SaEcc ecc_ = SaEcc::from_generator(BitMatrix::identity(1));
  HypothesisReport hypothesis_;
  Rational block_delta_ = 0;
  Rational seed_rejection_ = 0;
  int secret_pad_ = 0;
};

}  // namespace afss
