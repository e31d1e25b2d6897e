#include "afss/adversary.hpp"

#include <set>
#include <sstream>

#include "afss/errors.hpp"

namespace afss {

BitString View::answer_bits() const {
  BitString out(0);
  for (auto& e : entries) out = out.concat(e.answer);
  return out;
}

AdversaryProgram AdversaryProgram::empty() {
  return AdversaryProgram([](const View&) { return std::nullopt; }, "empty");
}

AdversaryProgram AdversaryProgram::non_adaptive(std::vector<LeakageQuery> queries) {
  auto fn = [queries = std::move(queries)](const View& v) -> std::optional<LeakageQuery> {
    std::size_t i = v.entries.size();
    if (i >= queries.size()) return std::nullopt;
    return queries[i];
  };
  return AdversaryProgram(std::move(fn), "non-adaptive");
}

AdversaryProgram AdversaryProgram::adaptive(NextFn next, std::string name) {
  return AdversaryProgram(std::move(next), std::move(name));
}

static AffineLeak mask_leak(const BitString& mask) {
  BitMatrix mat(mask.size(), 1);
  for (int i = 0; i < mask.size(); ++i) mat.set(i, 0, mask.get(i));
  return AffineLeak{AffineMap(std::move(mat), BitString(1))};
}

AdversaryProgram builtin_read_then_leak(int N, int block, int bit, BitString mask0,
                                        BitString mask1) {
  if (mask0.size() != N || mask1.size() != N)
    throw DimensionError("read_then_leak: mask length != N");
  auto fn = [=](const View& v) -> std::optional<LeakageQuery> {
    if (v.entries.empty()) return LeakageQuery(ShareRead{block});
    if (v.entries.size() == 1) {
      bool b = bit < v.entries[0].answer.size() && v.entries[0].answer.get(bit);
      return LeakageQuery(b ? mask_leak(mask1) : mask_leak(mask0));
    }
    return std::nullopt;
  };
  return AdversaryProgram::adaptive(std::move(fn), "read_then_leak");
}

View run_game(const AdversaryProgram& adv, const BitString& codeword, const GameLimits& limits) {
  if (codeword.size() != limits.P * limits.block_bits)
    throw DimensionError("run_game: codeword length");
  View view;
  std::set<int> read_blocks;
  const int max_queries = limits.beta + limits.t + 1;
  for (int q = 0; q < max_queries; ++q) {
    auto query = adv.next(view);
    if (!query) return view;
    ViewEntry entry;
    if (auto* rd = std::get_if<ShareRead>(&*query)) {
      if (rd->block < 0 || rd->block >= limits.P) throw DimensionError("run_game: block index");
      read_blocks.insert(rd->block);
      if (static_cast<int>(read_blocks.size()) > limits.t)
        throw BudgetExceeded("run_game: more than t distinct blocks read");
      entry.is_read = true;
      entry.block = rd->block;
      entry.answer = codeword.slice(rd->block * limits.block_bits, limits.block_bits);
    } else {
      auto& leak = std::get<AffineLeak>(*query);
      if (leak.map.in_dim() != codeword.size()) throw DimensionError("run_game: leak input dim");
      view.leaked_bits += leak.map.out_dim();
      if (view.leaked_bits > limits.beta)
        throw BudgetExceeded("run_game: leakage budget beta exceeded");
      entry.is_read = false;
      entry.block = -1;
      entry.answer = leak.map.apply(codeword);
    }
    view.entries.push_back(std::move(entry));
    view.blocks_read = static_cast<int>(read_blocks.size());
  }
  throw BudgetExceeded("run_game: adversary did not halt within beta + t queries");
}

// ---- BitTamper ----

BitTamper BitTamper::uniform(int n, Action a) {
  BitTamper f;
  f.actions.assign(n, a);
  return f;
}

BitTamper BitTamper::parse(const std::string& spec) {
  BitTamper f;
  std::istringstream in(spec);
  std::string tok;
  while (in >> tok) {
    if (tok == "K")
      f.actions.push_back(Keep);
    else if (tok == "F")
      f.actions.push_back(Flip);
    else if (tok == "0")
      f.actions.push_back(Set0);
    else if (tok == "1")
      f.actions.push_back(Set1);
    else
      throw DimensionError("BitTamper::parse: expected K/F/0/1 tokens");
  }
  return f;
}

std::string BitTamper::str() const {
  std::string out;
  for (auto a : actions) {
    if (!out.empty()) out += ' ';
    out += (a == Keep ? 'K' : a == Flip ? 'F' : a == Set0 ? '0' : '1');
  }
  return out;
}

BitString BitTamper::apply(const BitString& c) const {
  if (c.size() != size()) throw DimensionError("BitTamper::apply: length mismatch");
  BitString out(size());
  for (int i = 0; i < size(); ++i) {
    switch (actions[i]) {
      case Set0: break;
      case Set1: out.set(i, true); break;
      case Keep: out.set(i, c.get(i)); break;
      case Flip: out.set(i, !c.get(i)); break;
    }
  }
  return out;
}

AffineMap bit_tamper_to_affine(const BitTamper& f) {
  const int n = f.size();
  BitMatrix diag(n, n);
  BitString offset(n);
  for (int i = 0; i < n; ++i) {
    BitTamper::Action a = f.actions[i];
    if (a == BitTamper::Keep || a == BitTamper::Flip) diag.set(i, i, true);
    if (a == BitTamper::Flip || a == BitTamper::Set1) offset.set(i, true);
  }
  return AffineMap(std::move(diag), std::move(offset));
}

// ---- TamperStrategy ----

TamperStrategy TamperStrategy::constant_affine(AffineMap f, std::string name) {
  TamperStrategy s;
  s.name = std::move(name);
  s.bitwise = false;
  s.choose_affine = [f = std::move(f)](const View&) { return f; };
  return s;
}

TamperStrategy TamperStrategy::constant_bit(BitTamper f, std::string name) {
  TamperStrategy s;
  s.name = std::move(name);
  s.bitwise = true;
  s.choose_bit = [f = std::move(f)](const View&) { return f; };
  s.choose_affine = [f](const View&) { return bit_tamper_to_affine(f); };
  return s;
}

AffineMap TamperStrategy::tamper_map(const View& v) const {
  if (bitwise && choose_bit) return bit_tamper_to_affine(choose_bit(v));
  return choose_affine(v);
}

// ---- induced tampering & entropy ----

std::optional<AffineMap> induced_tampering(const SaEcc& ecc, const ErasurePattern& pat,
                                           const AffineMap& f_v) {
  auto dec = ecc.decoder_view(pat);
  if (!dec) return std::nullopt;
  AffineMap enc = ecc.encoder_view();
  AffineMap proj = ecc.projection_view(pat);
  return compose(*dec, compose(proj, compose(f_v, enc)));
}

TamperEntropy tamper_entropy(const AffineMap& g, const AffineSubspace& S) {
  AffineMap restricted = restrict(g, S);
  TamperEntropy e;
  e.image_dim = restricted.matrix().rank();
  e.kernel_dim = S.dim() - e.image_dim;
  return e;
}

AffineMap difference_tamper(const AffineMap& g) {
  if (g.in_dim() != g.out_dim()) throw DimensionError("difference_tamper: map not square");
  return AffineMap(g.matrix() + BitMatrix::identity(g.in_dim()), g.offset());
}

SeedCollisionSplit seed_collision_event(
    const AffineMap& g, const AffineSubspace& S,
    const std::function<BitString(const BitString&)>& seed_of) {
  SeedCollisionSplit split;
  std::uint64_t differs = 0, total = 0;
  for (auto& p : S.points()) {
    ++total;
    if (seed_of(g.apply(p)) != seed_of(p))
      ++differs;
    else
      split.same_points.push_back(p);
  }
  split.prob_differs = Rational(differs, total);
  split.prob_same = Rational(total - differs, total);
  return split;
}

}  // namespace afss
