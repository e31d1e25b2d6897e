#include "afss/manifest.hpp"

#include <json.hpp>

#include "afss/errors.hpp"

namespace afss {

using nlohmann::json;

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

Rational amd_tamper_detection_max(const AmdCode& amd, const BitString& msg, const Budget& budget) {
  const int bits = amd.codeword_bits();
  const std::uint32_t xs = amd.field().order();
  budget.charge(((std::uint64_t(1) << bits) - 1) * xs);
  std::vector<BitString> codewords(xs, BitString(0));
  for (std::uint32_t x = 0; x < xs; ++x) codewords[x] = amd.encode_with(msg, x);
  std::uint64_t worst = 0;
  for (std::uint64_t delta = 1; delta < (std::uint64_t(1) << bits); ++delta) {
    BitString offset = BitString::from_u64(delta, bits);
    std::uint64_t accepted = 0;
    for (std::uint32_t x = 0; x < xs; ++x)
      if (amd.decode(codewords[x] + offset)) ++accepted;
    worst = std::max(worst, accepted);
  }
  return Rational(worst, xs);
}

// ---- manifest ----

static std::vector<Manifest::CertRecord> collect_certs(const SchemeInstance& inst) {
  std::vector<Manifest::CertRecord> recs;
  auto push = [&](const std::string& type, int n, int d, int m, const ExtractorCert& cert,
                  const Rational& eps) {
    recs.push_back({type, n, d, m, cert.k, rational_str(eps), cert.family, cert.budget_used,
                    inst.rng_seed()});
  };
  switch (inst.kind()) {
    case SchemeKind::NonAdaptiveLR:
      push("linear-seeded", inst.seeded().n(), inst.seeded().d(), inst.seeded().m(),
           inst.seeded().cert, inst.seeded().cert.eps);
      break;
    case SchemeKind::AdaptiveLR:
      push("affine", inst.affine_ext().n(), 0, inst.affine_ext().m(), inst.affine_ext().cert,
           inst.affine_ext().cert.eps);
      push("linear-seeded", inst.seeded().n(), inst.seeded().d(), inst.seeded().m(),
           inst.seeded().cert, inst.seeded().cert.eps);
      break;
    case SchemeKind::AffineNM: {
      auto& anm = inst.nm_affine();
      recs.push_back({"affine-nm", anm.n(), 0, anm.m(), anm.cert.k,
                      rational_str(anm.cert_eps_nm), anm.cert_family, anm.cert.budget_used,
                      inst.rng_seed()});
      push("affine-extraction", anm.n(), 0, anm.m(), anm.cert, anm.cert.eps);
      break;
    }
    case SchemeKind::BitNM:
      push("affine", inst.affine_ext().n(), 0, inst.affine_ext().m(), inst.affine_ext().cert,
           inst.affine_ext().cert.eps);
      push("seeded-nm", inst.nm_seeded().n(), inst.nm_seeded().d(), inst.nm_seeded().m(),
           inst.nm_seeded().cert, inst.nm_seeded().cert.eps);
      break;
  }
  return recs;
}

Manifest Manifest::from_instance(const SchemeInstance& inst, std::uint64_t budget,
                                 const ComponentSpec& spec) {
  Manifest m;
  m.kind = inst.kind();
  m.params = inst.params();
  m.spec = spec;
  m.rng_seed = inst.rng_seed();
  m.budget = budget;
  m.certificates = collect_certs(inst);
  m.decode_failure_delta = rational_str(inst.block_delta());
  m.seed_rejection = rational_str(inst.seed_rejection());
  for (auto& claim : inst.error_claims())
    m.error_claims.emplace_back(claim.name, rational_str(claim.value));
  m.info_ratio = rational_str(afss::info_ratio(inst.params()));
  m.info_ratio_reference = rational_str(afss::info_ratio_reference(inst.params()));
  for (auto& e : inst.hypothesis().entries) m.hypothesis.push_back({e.name, e.required, e.certified});
  m.beta_max = inst.hypothesis().beta_max;
  if (inst.kind() == SchemeKind::BitNM) {
    m.amd_delta_bound = rational_str(inst.amd().delta());
    Budget b = Budget::with(std::uint64_t(1) << 24);
    m.amd_delta_measured =
        rational_str(amd_tamper_detection_max(inst.amd(), BitString(inst.amd().message_bits()), b));
  }
  return m;
}

std::string Manifest::to_json() const {
  json j;
  j["magic"] = "AFSS-MANIFEST";
  j["version"] = version;
  j["kind"] = scheme_kind_str(kind);
  j["params"] = {{"t", params.t}, {"r", params.r}, {"P", params.P},     {"N", params.N},
                 {"ell", params.ell}, {"beta", params.beta}, {"n", params.n}, {"d", params.d}};
  j["component_spec"] = {{"anm_k", spec.anm_k},
                         {"anm_eps_target", rational_str(spec.anm_eps_target)},
                         {"anm_search_trials", spec.anm_search_trials},
                         {"anm_family_random", spec.anm_family_random},
                         {"secret_pad", spec.secret_pad},
                         {"amd_u", spec.amd_u},
                         {"amd_dd", spec.amd_dd}};
  j["rng_seed"] = rng_seed;
  j["budget"] = budget;
  j["certificates"] = json::array();
  for (auto& c : certificates)
    j["certificates"].push_back({{"type", c.type},
                                 {"n", c.n},
                                 {"d", c.d},
                                 {"m", c.m},
                                 {"k", c.k},
                                 {"eps", c.eps},
                                 {"family", c.family},
                                 {"enumeration_budget", c.enumeration_budget},
                                 {"rng_seed", c.rng_seed}});
  j["decode_failure_delta"] = decode_failure_delta;
  j["seed_rejection"] = seed_rejection;
  j["error_claims"] = json::array();
  for (auto& [name, value] : error_claims)
    j["error_claims"].push_back({{"name", name}, {"value", value}});
  j["info_ratio"] = info_ratio;
  j["info_ratio_reference"] = info_ratio_reference;
  j["hypothesis"] = json::array();
  for (auto& h : hypothesis)
    j["hypothesis"].push_back(
        {{"name", h.name}, {"required", h.required}, {"certified", h.certified}});
  j["beta_max"] = beta_max;
  if (!amd_delta_bound.empty()) {
    j["amd"] = {{"delta_bound", amd_delta_bound}, {"delta_measured", amd_delta_measured}};
  }
  return j.dump(2);
}

Manifest Manifest::from_json(const std::string& text) {
  json j = json::parse(text);
  if (j.value("magic", "") != std::string("AFSS-MANIFEST"))
    throw Error("manifest: bad magic");
  Manifest m;
  m.version = j.at("version").get<int>();
  if (m.version != 1) throw Error("manifest: unsupported version");
  m.kind = scheme_kind_from_str(j.at("kind").get<std::string>());
  auto& p = j.at("params");
  m.params = RampParams{p.at("t"), p.at("r"), p.at("P"),    p.at("N"),
                        p.at("ell"), p.at("beta"), p.at("n"), p.at("d")};
  auto& cs = j.at("component_spec");
  m.spec.anm_k = cs.at("anm_k");
  m.spec.anm_eps_target = rational_from_str(cs.at("anm_eps_target").get<std::string>());
  m.spec.anm_search_trials = cs.at("anm_search_trials");
  m.spec.anm_family_random = cs.at("anm_family_random");
  m.spec.secret_pad = cs.value("secret_pad", 0);
  m.spec.amd_u = cs.at("amd_u");
  m.spec.amd_dd = cs.at("amd_dd");
  m.rng_seed = j.at("rng_seed").get<std::uint64_t>();
  m.budget = j.at("budget").get<std::uint64_t>();
  for (auto& c : j.at("certificates"))
    m.certificates.push_back({c.at("type"), c.at("n"), c.at("d"), c.at("m"), c.at("k"),
                              c.at("eps"), c.at("family"),
                              c.value("enumeration_budget", std::uint64_t(0)),
                              c.value("rng_seed", std::uint64_t(0))});
  m.decode_failure_delta = j.at("decode_failure_delta");
  m.seed_rejection = j.at("seed_rejection");
  for (auto& e : j.at("error_claims")) m.error_claims.emplace_back(e.at("name"), e.at("value"));
  m.info_ratio = j.at("info_ratio");
  m.info_ratio_reference = j.at("info_ratio_reference");
  for (auto& h : j.at("hypothesis"))
    m.hypothesis.push_back({h.at("name"), h.at("required"), h.at("certified")});
  m.beta_max = j.at("beta_max");
  if (j.contains("amd")) {
    m.amd_delta_bound = j["amd"].at("delta_bound");
    m.amd_delta_measured = j["amd"].at("delta_measured");
  }
  return m;
}

std::string Manifest::digest() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(to_json())));
  return buf;
}

SchemeInstance Manifest::instantiate_unchecked() const {
  return SchemeInstance::make(kind, params, rng_seed, Budget::with(budget), spec);
}

SchemeInstance Manifest::instantiate() const {
  SchemeInstance inst = instantiate_unchecked();
  Manifest rebuilt = from_instance(inst, budget, spec);
  if (rebuilt.certificates.size() != certificates.size())
    throw Error("manifest: certificate list mismatch");
  for (std::size_t i = 0; i < certificates.size(); ++i) {
    if (certificates[i].eps != rebuilt.certificates[i].eps ||
        certificates[i].k != rebuilt.certificates[i].k ||
        certificates[i].type != rebuilt.certificates[i].type)
      throw Error("manifest: recomputed certification disagrees with stored value for " +
                  certificates[i].type);
  }
  if (decode_failure_delta != rebuilt.decode_failure_delta)
    throw Error("manifest: recomputed decode_failure_delta disagrees with stored value");
  for (std::size_t i = 0; i < error_claims.size(); ++i)
    if (i < rebuilt.error_claims.size() && error_claims[i].second != rebuilt.error_claims[i].second)
      throw Error("manifest: recomputed error claim disagrees: " + error_claims[i].first);
  return inst;
}

// ---- share files ----

std::string ShareFileData::to_json() const {
  json j;
  j["magic"] = "AFSS";
  j["version"] = 1;
  j["scheme_id"] = scheme_id;
  j["params_digest"] = params_digest;
  j["block_index"] = block_index;
  j["payload_bits"] = payload.size();
  j["payload_hex"] = payload.to_hex();
  return j.dump(2);
}

ShareFileData ShareFileData::from_json(const std::string& text, int expected_bits) {
  json j = json::parse(text);
  if (j.value("magic", "") != std::string("AFSS")) throw Error("share file: bad magic");
  if (j.at("version").get<int>() != 1) throw Error("share file: unsupported version");
  ShareFileData s;
  s.scheme_id = j.at("scheme_id");
  s.params_digest = j.at("params_digest");
  s.block_index = j.at("block_index");
  int bits = j.at("payload_bits");
  if (expected_bits >= 0 && bits != expected_bits)
    throw Error("share file: payload length mismatch");
  s.payload = BitString::from_hex(j.at("payload_hex").get<std::string>(), bits);
  return s;
}

// ---- scenarios ----

static AffineMap parse_affine(const json& j, int in_dim, int out_dim) {
  BitMatrix mat(in_dim, out_dim);
  auto rows = j.at("rows");
  if (static_cast<int>(rows.size()) != in_dim) throw Error("scenario: affine map row count");
  for (int i = 0; i < in_dim; ++i)
    mat.row(i) = BitString::from_hex(rows[i].get<std::string>(), out_dim);
  BitString offset(out_dim);
  if (j.contains("offset")) offset = BitString::from_hex(j.at("offset").get<std::string>(), out_dim);
  return AffineMap(std::move(mat), std::move(offset));
}

static TamperStrategy parse_sigma(const json& j, const SchemeInstance& inst);

static TamperStrategy parse_bit_select(const json& j, const SchemeInstance& inst) {
  int bit = j.at("bit");
  TamperStrategy s0 = parse_sigma(j.at("sigma0"), inst);
  TamperStrategy s1 = parse_sigma(j.at("sigma1"), inst);
  TamperStrategy s;
  s.name = "bit_select";
  s.bitwise = false;
  s.choose_affine = [bit, s0, s1](const View& v) {
    BitString bits = v.answer_bits();
    bool b = bit < bits.size() && bits.get(bit);
    return (b ? s1 : s0).tamper_map(v);
  };
  return s;
}

static TamperStrategy parse_sigma(const json& j, const SchemeInstance& inst) {
  const int N = inst.params().N;
  if (j.contains("bit_actions")) {
    BitTamper f = BitTamper::parse(j.at("bit_actions").get<std::string>());
    if (f.size() != N) throw Error("scenario: bit_actions length != N");
    return TamperStrategy::constant_bit(std::move(f), "bit_actions");
  }
  if (j.contains("identity") && j.at("identity").get<bool>())
    return TamperStrategy::constant_affine(AffineMap::identity(N), "identity");
  if (j.contains("translate"))
    return TamperStrategy::constant_affine(
        AffineMap::translation(BitString::from_hex(j.at("translate").get<std::string>(), N)),
        "translate");
  if (j.contains("constant"))
    return TamperStrategy::constant_affine(
        AffineMap::constant(N, BitString::from_hex(j.at("constant").get<std::string>(), N)),
        "constant");
  if (j.contains("affine"))
    return TamperStrategy::constant_affine(parse_affine(j.at("affine"), N, N), "affine");
  if (j.value("builtin", "") == std::string("bit_select")) return parse_bit_select(j, inst);
  throw Error("scenario: unrecognized sigma");
}

static AdversaryProgram parse_adversary(const json& j, const SchemeInstance& inst) {
  const int N = inst.params().N;
  if (j.contains("queries")) {
    std::vector<LeakageQuery> queries;
    for (auto& q : j.at("queries")) {
      if (q.contains("read"))
        queries.push_back(ShareRead{q.at("read").get<int>()});
      else if (q.contains("leak_mask_hex")) {
        BitMatrix mat(N, 1);
        BitString mask = BitString::from_hex(q.at("leak_mask_hex").get<std::string>(), N);
        for (int i = 0; i < N; ++i) mat.set(i, 0, mask.get(i));
        BitString offset(1);
        if (q.contains("offset")) offset.set(0, q.at("offset").get<int>() != 0);
        queries.push_back(AffineLeak{AffineMap(std::move(mat), std::move(offset))});
      } else if (q.contains("leak_affine")) {
        int c = q.at("leak_affine").at("out").get<int>();
        queries.push_back(AffineLeak{parse_affine(q.at("leak_affine"), N, c)});
      } else
        throw Error("scenario: unrecognized query");
    }
    return AdversaryProgram::non_adaptive(std::move(queries));
  }
  if (j.value("builtin", "") == std::string("read_then_leak")) {
    int block = j.at("block");
    int bit = j.at("bit");
    BitString mask0 = BitString::from_hex(j.at("mask0_hex").get<std::string>(), N);
    BitString mask1 = BitString::from_hex(j.at("mask1_hex").get<std::string>(), N);
    return builtin_read_then_leak(N, block, bit, mask0, mask1);
  }
  if (j.value("builtin", "") == std::string("none") || j.empty()) return AdversaryProgram::empty();
  throw Error("scenario: unrecognized adversary");
}

Scenario parse_scenario(const std::string& text, const SchemeInstance& inst) {
  json j = json::parse(text);
  Scenario sc;
  sc.name = j.value("name", "scenario");
  if (j.contains("adversary")) sc.adversary = parse_adversary(j.at("adversary"), inst);
  if (j.contains("sigma")) {
    sc.sigma = parse_sigma(j.at("sigma"), inst);
    sc.has_sigma = true;
  }
  if (j.contains("R")) sc.reconstruction_set = j.at("R").get<std::vector<int>>();
  if (j.contains("secrets"))
    for (auto& s : j.at("secrets"))
      sc.secrets.push_back(BitString::from_string(s.get<std::string>()));
  return sc;
}

}  // namespace afss
