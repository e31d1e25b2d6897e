#include "afss/schemes.hpp"

#include <sstream>

#include "afss/errors.hpp"
#include "afss/verify.hpp"

namespace afss {

std::string scheme_kind_str(SchemeKind k) {
  switch (k) {
    case SchemeKind::NonAdaptiveLR: return "NonAdaptiveLR";
    case SchemeKind::AdaptiveLR: return "AdaptiveLR";
    case SchemeKind::AffineNM: return "AffineNM";
    case SchemeKind::BitNM: return "BitNM";
  }
  throw Error("unknown scheme kind");
}

SchemeKind scheme_kind_from_str(const std::string& s) {
  if (s == "NonAdaptiveLR") return SchemeKind::NonAdaptiveLR;
  if (s == "AdaptiveLR") return SchemeKind::AdaptiveLR;
  if (s == "AffineNM") return SchemeKind::AffineNM;
  if (s == "BitNM") return SchemeKind::BitNM;
  throw Error("unknown scheme kind: " + s);
}

void RampParams::validate() const {
  if (!(0 <= t && t < r && r <= P)) throw HypothesisViolation("ramp: need 0 <= t < r <= P");
  if (P <= 0 || N <= 0 || N % P != 0) throw HypothesisViolation("ramp: need P | N");
  if (ell < 1) throw HypothesisViolation("ramp: secret length must be positive");
  if (beta < 0) throw HypothesisViolation("ramp: beta must be nonnegative");
  if (n < 1 || d < 0) throw HypothesisViolation("ramp: extractor lengths out of range");
}

Rational info_ratio(const RampParams& p) { return Rational(p.N, std::int64_t(p.P) * p.ell); }

Rational info_ratio_reference(const RampParams& p) { return Rational(p.ell + p.beta, p.ell); }

bool HypothesisReport::all_satisfied() const {
  for (auto& e : entries)
    if (!e.satisfied()) return false;
  return true;
}

std::string HypothesisReport::describe() const {
  std::ostringstream out;
  for (auto& e : entries) {
    out << e.name << ": required entropy " << e.required << ", component certified at "
        << e.certified << (e.satisfied() ? " (ok)" : " (shortfall)") << "\n";
  }
  out << "beta_max = " << beta_max;
  return out.str();
}

BitString ShareVector::concat() const {
  BitString out(0);
  for (auto& b : blocks) out = out.concat(b);
  return out;
}

ShareVector ShareVector::split(const BitString& codeword, int P) {
  if (codeword.size() % P != 0) throw DimensionError("split: P does not divide length");
  ShareVector v;
  v.block_bits = codeword.size() / P;
  for (int i = 0; i < P; ++i) v.blocks.push_back(codeword.slice(i * v.block_bits, v.block_bits));
  return v;
}

// t*N/P as an integer (P | N guaranteed).
static int tau_n_int(const RampParams& p) { return p.t * (p.N / p.P); }

int SchemeInstance::msg_len() const {
  return kind_ == SchemeKind::AffineNM ? params_.n : params_.d + params_.n;
}

int SchemeInstance::secret_bits() const { return params_.ell - secret_pad_; }

int SchemeInstance::payload_bits() const {
  return kind_ == SchemeKind::BitNM ? amd_->codeword_bits() : params_.ell;
}

SchemeInstance SchemeInstance::make(SchemeKind kind, const RampParams& params,
                                    std::uint64_t rng_seed, const Budget& budget,
                                    const ComponentSpec& spec) {
  params.validate();
  SchemeInstance inst;
  inst.kind_ = kind;
  inst.params_ = params;
  inst.rng_seed_ = rng_seed;
  Rng rng(rng_seed);

  const int tn = tau_n_int(params);
  const int per_block = params.N / params.P;
  const int recons_bits = params.r * per_block;

  const int mlen = (kind == SchemeKind::AffineNM) ? params.n : params.d + params.n;
  if (mlen > recons_bits) {
    std::ostringstream msg;
    msg << "code message length " << mlen << " exceeds the " << recons_bits
        << " bits recoverable from r=" << params.r << " blocks";
    throw HypothesisViolation(msg.str());
  }

  auto check_beta = [&](int beta_max, const std::string& hypothesis) {
    inst.hypothesis_.beta_max = beta_max;
    if (params.beta > beta_max) {
      std::ostringstream msg;
      msg << hypothesis << ": beta = " << params.beta << " exceeds beta_max = " << beta_max
          << " (reduce beta by " << params.beta - beta_max << ")";
      throw HypothesisViolation(msg.str());
    }
  };

  switch (kind) {
    case SchemeKind::NonAdaptiveLR: {
      // linear strong (n - tN/P - beta, eps/8)-extractor with output ell
      check_beta(params.n - tn - params.ell,
                 "non-adaptive construction needs a linear strong (n - tN/P - beta)-extractor "
                 "with output ell");
      if (params.d < 1) throw HypothesisViolation("non-adaptive: seed length must be positive");
      auto ext = LinearSeededExtractor::random_linear(params.n, params.d, params.ell,
                                                      rng.split("seeded"));
      int k_req = params.n - tn - params.beta;
      certify_seeded(ext, std::max(0, k_req), budget);
      inst.hypothesis_.entries.push_back(
          {"linear strong seeded extractor entropy (n - tN/P - beta)", k_req, ext.cert.k});
      inst.seeded_ = std::move(ext);
      break;
    }
    case SchemeKind::AdaptiveLR: {
      check_beta(params.n - tn - params.ell,
                 "adaptive construction needs an affine extractor at entropy n - tN/P - beta - "
                 "ell >= 0");
      AffineExtractor ax(params.n, params.d);
      int k_a = params.n - tn - params.beta - params.ell;
      certify_affine_extractor(ax, std::max(0, k_a), budget);
      inst.hypothesis_.entries.push_back(
          {"affine extractor entropy (n - tN/P - beta - ell)", k_a, ax.cert.k});

      auto ext = LinearSeededExtractor::random_linear(params.n, params.d, params.ell,
                                                      rng.split("seeded"));
      int k_e = params.n - tn - params.beta - params.d;
      certify_seeded(ext, std::max(0, k_e), budget);
      inst.hypothesis_.entries.push_back(
          {"linear strong seeded extractor entropy (n - tN/P - beta - d)", k_e, ext.cert.k});
      inst.affine_ext_ = std::move(ax);
      inst.seeded_ = std::move(ext);
      break;
    }
    case SchemeKind::AffineNM: {
      if (params.d != 0) throw HypothesisViolation("affine-NM construction has no seed part");
      if (spec.secret_pad < 0 || spec.secret_pad >= params.ell)
        throw HypothesisViolation("affine-NM: secret padding must leave at least one secret bit");
      inst.secret_pad_ = spec.secret_pad;
      int k_anm = spec.anm_k >= 0 ? spec.anm_k : params.n - tn - params.beta;
      check_beta(params.n - tn - k_anm,
                 "affine-NM construction needs the affine non-malleable extractor to cover "
                 "sources of dimension n - tN/P - beta");
      auto family =
          AffineTamperFamily::standard(params.n, spec.anm_family_random, rng.split("anm-family"));
      auto search = search_affine_nm(params.n, params.ell, k_anm, spec.anm_eps_target,
                                     spec.anm_search_trials, rng.split("anm-search"), family,
                                     budget);
      if (!search.found) {
        std::ostringstream msg;
        msg << "affine non-malleable extractor search failed after " << search.trials_used
            << " trials (best eps " << search.best_eps << ")";
        throw Error(msg.str());
      }
      inst.hypothesis_.entries.push_back(
          {"affine NM extractor entropy (n - tN/P - beta)", params.n - tn - params.beta,
           search.found->cert.k});
      inst.nm_affine_ = std::move(*search.found);
      break;
    }
    case SchemeKind::BitNM: {
      AmdCode amd(spec.amd_u, spec.amd_dd);
      if (amd.message_bits() != params.ell)
        throw HypothesisViolation("bit-NM: ell must equal the AMD message length dd*u");
      const int payload = amd.codeword_bits();
      if (params.n % payload != 0)
        throw HypothesisViolation("bit-NM: AMD codeword length must divide n for the IP map");
      // seed side of the entropy chain: (n - tN/P - beta)/2 - d >= 0
      check_beta(params.n - tn - 2 * params.d,
                 "bit-NM construction needs (n - tN/P - beta)/2 >= d for the seeded NM extractor");

      AffineExtractor ax(params.n, params.d);
      int k_a = (params.n - tn - params.beta) / 2 - payload;
      certify_affine_extractor(ax, std::max(0, k_a), budget);
      inst.hypothesis_.entries.push_back(
          {"affine extractor entropy ((n - tN/P - beta)/2 - ell)", k_a, ax.cert.k});

      auto nm = SeededNmExtractor::ip_field(params.n, params.d, payload);
      int k_e = (params.n - tn - params.beta) / 2 - params.d;
      certify_seeded_nm_into(nm, std::max(0, k_e), budget);
      inst.hypothesis_.entries.push_back(
          {"linear seeded NM extractor entropy ((n - tN/P - beta)/2 - d)", k_e, nm.cert.k});
      inst.affine_ext_ = std::move(ax);
      inst.nm_seeded_ = std::move(nm);
      inst.amd_ = std::move(amd);
      break;
    }
  }

  inst.ecc_ = SaEcc::random_linear(mlen, params.N, rng.split("ecc"));
  inst.block_delta_ = inst.ecc_.block_delta(params.P, params.r);

  // rejection probability of rank-deficient seeds (resampled at sharing)
  if (inst.seeded_ || inst.nm_seeded_) {
    int deficient = 0;
    for (std::uint64_t z = 0; z < (std::uint64_t(1) << params.d); ++z) {
      BitString zz = BitString::from_u64(z, params.d);
      bool ok = inst.seeded_ ? inst.seeded_->seed_full_rank(zz) : inst.nm_seeded_->seed_full_rank(zz);
      if (!ok) ++deficient;
    }
    inst.seed_rejection_ = Rational(deficient, std::int64_t(1) << params.d);
  }
  return inst;
}

ShareVector SchemeInstance::share(const BitString& secret, Rng& rng) const {
  if (secret.size() != secret_bits()) throw DimensionError("share: secret length");
  BitString msg;
  switch (kind_) {
    case SchemeKind::NonAdaptiveLR: {
      BitString z;
      do {
        z = rng.bits(params_.d);
      } while (!seeded_->seed_full_rank(z));
      BitString x = seeded_->invert(z, secret, rng);
      msg = z.concat(x);
      break;
    }
    case SchemeKind::AdaptiveLR: {
      BitString z;
      do {
        z = rng.bits(params_.d);
      } while (!seeded_->seed_full_rank(z));
      BitString x = seeded_->invert(z, secret, rng);
      BitString sd = affine_ext_->extract(x) + z;
      msg = sd.concat(x);
      break;
    }
    case SchemeKind::AffineNM: {
      msg = nm_affine_->invert(secret.concat(rng.bits(secret_pad_)), rng);
      break;
    }
    case SchemeKind::BitNM: {
      BitString amdcw = amd_->encode(secret, rng);
      BitString z;
      do {
        z = rng.bits(params_.d);
      } while (!nm_seeded_->seed_full_rank(z));
      BitString x = nm_seeded_->invert(z, amdcw, rng);
      BitString sd = affine_ext_->extract(x) + z;
      msg = sd.concat(x);
      break;
    }
  }
  return ShareVector::split(ecc_.encode(msg), params_.P);
}

BitString SchemeInstance::payload_of_message(const BitString& msg) const {
  switch (kind_) {
    case SchemeKind::NonAdaptiveLR: {
      BitString z = msg.slice(0, params_.d);
      BitString x = msg.slice(params_.d, params_.n);
      return seeded_->extract(z, x);
    }
    case SchemeKind::AdaptiveLR: {
      BitString x = msg.slice(params_.d, params_.n);
      return seeded_->extract(seed_of_message(msg), x);
    }
    case SchemeKind::AffineNM:
      return nm_affine_->extract(msg);
    case SchemeKind::BitNM: {
      BitString x = msg.slice(params_.d, params_.n);
      return nm_seeded_->extract(seed_of_message(msg), x);
    }
  }
  throw Error("unreachable");
}

BitString SchemeInstance::seed_of_message(const BitString& msg) const {
  if (kind_ == SchemeKind::NonAdaptiveLR) return msg.slice(0, params_.d);
  if (kind_ == SchemeKind::AffineNM) throw Error("seed_of_message: seedless construction");
  BitString sd = msg.slice(0, params_.d);
  BitString x = msg.slice(params_.d, params_.n);
  return affine_ext_->extract(x) + sd;
}

ReconstructResult SchemeInstance::reconstruct_traced(
    const std::vector<std::pair<int, BitString>>& blocks) const {
  ReconstructResult res;
  std::vector<int> indices;
  for (auto& [i, b] : blocks) indices.push_back(i);
  std::sort(indices.begin(), indices.end());
  if (static_cast<int>(blocks.size()) != params_.r ||
      std::adjacent_find(indices.begin(), indices.end()) != indices.end()) {
    res.fail = ReconstructFail::WrongBlockCount;
    return res;
  }

  const int bb = params_.block_bits();
  BitString assembled(params_.N);
  for (auto& [i, b] : blocks) {
    if (i < 0 || i >= params_.P || b.size() != bb) {
      res.fail = ReconstructFail::WrongBlockCount;
      return res;
    }
    for (int j = 0; j < bb; ++j)
      if (b.get(j)) assembled.set(i * bb + j, true);
  }
  ErasurePattern pat = ErasurePattern::from_blocks(params_.N, bb, indices);
  auto msg = ecc_.decode(pat.project(assembled), pat);
  if (!msg) {
    res.fail = ReconstructFail::EccFail;
    return res;
  }
  BitString payload = payload_of_message(*msg);
  if (kind_ == SchemeKind::BitNM) {
    auto s = amd_->decode(payload);
    if (!s) {
      res.fail = ReconstructFail::AmdReject;
      return res;
    }
    res.secret = *s;
    return res;
  }
  res.secret = payload.slice(0, secret_bits());  // drop padding randomness
  return res;
}

std::optional<BitString> SchemeInstance::reconstruct(
    const std::vector<std::pair<int, BitString>>& blocks) const {
  return reconstruct_traced(blocks).secret;
}

std::vector<BitString> SchemeInstance::enumerate_codewords(const BitString& secret,
                                                           const Budget& budget) const {
  if (secret.size() != secret_bits()) throw DimensionError("enumerate: secret length");
  std::vector<BitString> out;
  auto seeds_of = [&](auto& ext) {
    std::vector<BitString> zs;
    for (std::uint64_t z = 0; z < (std::uint64_t(1) << params_.d); ++z) {
      BitString zz = BitString::from_u64(z, params_.d);
      if (ext.seed_full_rank(zz)) zs.push_back(zz);
    }
    return zs;
  };

  switch (kind_) {
    case SchemeKind::NonAdaptiveLR:
    case SchemeKind::AdaptiveLR: {
      auto zs = seeds_of(*seeded_);
      budget.charge(zs.size() << (params_.n - params_.ell));
      for (auto& z : zs) {
        auto coset = preimage_subspace(AffineMap::linear(seeded_->seed_matrix(z)), secret);
        for (auto& x : coset->points()) {
          BitString head =
              kind_ == SchemeKind::NonAdaptiveLR ? z : affine_ext_->extract(x) + z;
          out.push_back(ecc_.encode(head.concat(x)));
        }
      }
      break;
    }
    case SchemeKind::AffineNM: {
      budget.charge(std::uint64_t(1) << params_.n);
      for (std::uint64_t pad = 0; pad < (std::uint64_t(1) << secret_pad_); ++pad) {
        BitString padded = secret.concat(BitString::from_u64(pad, secret_pad_));
        for (auto& x : nm_affine_->preimage(padded)) out.push_back(ecc_.encode(x));
      }
      break;
    }
    case SchemeKind::BitNM: {
      auto zs = seeds_of(*nm_seeded_);
      const std::uint32_t xs = amd_->field().order();
      budget.charge(std::uint64_t(xs) * zs.size()
                    << (params_.n - amd_->codeword_bits()));
      for (std::uint32_t xr = 0; xr < xs; ++xr) {
        BitString amdcw = amd_->encode_with(secret, xr);
        for (auto& z : zs) {
          auto coset =
              preimage_subspace(AffineMap::linear(nm_seeded_->source_matrix(z)), amdcw);
          for (auto& x : coset->points()) {
            BitString sd = affine_ext_->extract(x) + z;
            out.push_back(ecc_.encode(sd.concat(x)));
          }
        }
      }
      break;
    }
  }
  return out;
}

std::vector<SchemeInstance::ErrorClaim> SchemeInstance::error_claims() const {
  std::vector<ErrorClaim> claims;
  switch (kind_) {
    case SchemeKind::NonAdaptiveLR: {
      claims.push_back({"privacy 8*eps_E", 8 * seeded_->cert.eps});
      break;
    }
    case SchemeKind::AdaptiveLR: {
      Rational bound = pow2(unsigned((params_.ell + 1) + (params_.d + 4) + 2)) *
                           affine_ext_->cert.eps +
                       8 * seeded_->cert.eps;
      claims.push_back({"privacy 2^{(l+1)+(d+4)+2} eps_A + 8 eps_E", bound});
      break;
    }
    case SchemeKind::AffineNM: {
      Rational eps_a = nm_affine_->cert_eps_nm;
      claims.push_back({"non-malleability mu + 2^l eps_A", pow2(unsigned(params_.ell)) * eps_a});
      claims.push_back({"privacy 2^{l+1} eps_A + 2 mu",
                        pow2(unsigned(params_.ell + 1)) * nm_affine_->cert.eps});
      break;
    }
    case SchemeKind::BitNM: {
      const int l = amd_->codeword_bits();
      Rational bound = pow2(unsigned(l + params_.d + 7)) * affine_ext_->cert.eps +
                       4 * nm_seeded_->cert.eps + amd_->delta();
      claims.push_back({"non-malleability 2^{l+d+7} eps_A + 4 eps_E + eps_AMD", bound});
      break;
    }
  }
  return claims;
}

}  // namespace afss
