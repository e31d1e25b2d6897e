#pragma once
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "afss/schemes.hpp"
#include "afss/verify.hpp"

namespace afss {

std::uint64_t fnv1a64(const std::string& s);

// Exact max over nonzero offsets of the probability that a tampered AMD
// codeword is not rejected, enumerated over the encoding randomness.
Rational amd_tamper_detection_max(const AmdCode& amd, const BitString& msg, const Budget& budget);

// Everything needed to rebuild a scheme instance bit-exactly, plus the
// certification values recorded at setup time.
struct Manifest {
  int version = 1;
  SchemeKind kind = SchemeKind::NonAdaptiveLR;
  RampParams params;
  ComponentSpec spec;
  std::uint64_t rng_seed = 1;
  std::uint64_t budget = std::uint64_t(1) << 22;

  struct CertRecord {
    std::string type;
    int n = 0, d = 0, m = 0, k = 0;
    std::string eps;
    std::string family;
    std::uint64_t enumeration_budget = 0;
    std::uint64_t rng_seed = 0;
  };
  std::vector<CertRecord> certificates;

  std::string decode_failure_delta;
  std::string seed_rejection;
  std::vector<std::pair<std::string, std::string>> error_claims;
  std::string info_ratio;
  std::string info_ratio_reference;

  struct HypRecord {
    std::string name;
    int required = 0;
    int certified = 0;
  };
  std::vector<HypRecord> hypothesis;
  int beta_max = 0;

  std::string amd_delta_bound;     // BitNM only
  std::string amd_delta_measured;  // BitNM only

  static Manifest from_instance(const SchemeInstance& inst, std::uint64_t budget,
                                const ComponentSpec& spec);

  std::string to_json() const;
  static Manifest from_json(const std::string& text);

  std::string digest() const;

  // Rebuild deterministically and require every recorded certification
  // value to match the recomputation bit-exactly.
  SchemeInstance instantiate() const;
  SchemeInstance instantiate_unchecked() const;
};

// Share file: JSON header + hex payload, one block per file.
struct ShareFileData {
  std::string scheme_id;      // scheme kind
  std::string params_digest;  // manifest digest
  int block_index = 0;
  BitString payload;

  std::string to_json() const;
  static ShareFileData from_json(const std::string& text, int expected_bits);
};

// Attack scenario: adversary + optional tampering strategy + targets.
struct Scenario {
  std::string name;
  AdversaryProgram adversary = AdversaryProgram::empty();
  bool has_sigma = false;
  TamperStrategy sigma;
  std::vector<int> reconstruction_set;
  std::vector<BitString> secrets;
};

Scenario parse_scenario(const std::string& text, const SchemeInstance& inst);

}  // namespace afss
