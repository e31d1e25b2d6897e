#pragma once
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "afss/affine.hpp"
#include "afss/coding.hpp"

namespace afss {

struct ShareRead {
  int block;
};
struct AffineLeak {
  AffineMap map;  // N bits -> c bits
};
using LeakageQuery = std::variant<ShareRead, AffineLeak>;

struct ViewEntry {
  bool is_read;
  int block;  // valid when is_read
  BitString answer;
};

// Ordered oracle answers; determined by (program, codeword).
struct View {
  std::vector<ViewEntry> entries;
  int leaked_bits = 0;
  int blocks_read = 0;  // distinct

  BitString answer_bits() const;  // concatenation, the distribution key
};

// Deterministic strategy mapping the transcript so far to the next query.
class AdversaryProgram {
 public:
  using NextFn = std::function<std::optional<LeakageQuery>(const View&)>;

  static AdversaryProgram empty();
  static AdversaryProgram non_adaptive(std::vector<LeakageQuery> queries);
  static AdversaryProgram adaptive(NextFn next, std::string name = "adaptive");

  std::optional<LeakageQuery> next(const View& transcript) const { return next_(transcript); }
  const std::string& name() const { return name_; }

 private:
  AdversaryProgram(NextFn f, std::string name) : next_(std::move(f)), name_(std::move(name)) {}
  NextFn next_;
  std::string name_;
};

// 2-round adaptive program: read `block`, then leak one bit through mask0
// or mask1 depending on bit `bit` of the answer.
AdversaryProgram builtin_read_then_leak(int N, int block, int bit, BitString mask0,
                                        BitString mask1);

struct GameLimits {
  int P;           // players
  int block_bits;  // share size
  int t;           // max distinct blocks read
  int beta;        // max leaked bits
};

// Replays adv against the oracle holding the codeword; enforces budgets
// (throws BudgetExceeded on violation) and a query-count halt guard.
View run_game(const AdversaryProgram& adv, const BitString& codeword, const GameLimits& limits);

// Bit-wise independent tampering: one action per codeword bit.
struct BitTamper {
  enum Action : std::uint8_t { Set0, Set1, Keep, Flip };
  std::vector<Action> actions;

  static BitTamper uniform(int n, Action a);
  // "K F 0 1 ..." with K=Keep, F=Flip, 0=Set0, 1=Set1.
  static BitTamper parse(const std::string& spec);
  std::string str() const;

  int size() const { return static_cast<int>(actions.size()); }
  BitString apply(const BitString& c) const;
};

// Diagonal matrix (Keep/Flip -> 1) plus offset (Flip/Set1 -> 1); agrees
// with BitTamper::apply on every input.
AffineMap bit_tamper_to_affine(const BitTamper& f);

// sigma: view -> tampering function, family fixed per strategy.
struct TamperStrategy {
  std::string name;
  bool bitwise = false;
  std::function<AffineMap(const View&)> choose_affine;
  std::function<BitTamper(const View&)> choose_bit;

  static TamperStrategy constant_affine(AffineMap f, std::string name = "affine");
  static TamperStrategy constant_bit(BitTamper f, std::string name = "bit");

  AffineMap tamper_map(const View& v) const;
};

// ECCdec_R . Pi_R . f^v . ECCenc on the message space; nullopt when the
// pattern is not decodable (experiments map that outcome to BOT).
std::optional<AffineMap> induced_tampering(const SaEcc& ecc, const ErasurePattern& pat,
                                           const AffineMap& f_v);

struct TamperEntropy {
  int image_dim;   // H_inf of g(X) for X uniform on S
  int kernel_dim;  // dim(S) = image_dim + kernel_dim
};
TamperEntropy tamper_entropy(const AffineMap& g, const AffineSubspace& S);

// Delta-g with g(x) = x + Delta-g(x); requires square g.
AffineMap difference_tamper(const AffineMap& g);

struct SeedCollisionSplit {
  Rational prob_differs;           // Pr[Z' != Z] under uniform on S
  Rational prob_same;
  std::vector<BitString> same_points;  // the complement event, exact
};

// Partition of S by whether the tampered seed recomputed from g(p) equals
// the original seed recomputed from p.
SeedCollisionSplit seed_collision_event(
    const AffineMap& g, const AffineSubspace& S,
    const std::function<BitString(const BitString&)>& seed_of);

}  // namespace afss
