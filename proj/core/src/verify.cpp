#include "afss/verify.hpp"

#include <algorithm>
#include <map>

#include "afss/errors.hpp"
#include "afss/simplex.hpp"

namespace afss {

namespace {

// SD(uniform-histogram ; U_m) numerator over denominator 2^{dim+m+1}.
std::uint64_t histogram_sd_num(const std::vector<std::uint64_t>& counts, int dim) {
  const std::uint64_t points = std::uint64_t(1) << dim;
  const std::uint64_t m_size = counts.size();
  std::uint64_t num = 0;
  for (std::uint64_t v = 0; v < m_size; ++v) {
    std::int64_t diff = std::int64_t(counts[v] * m_size) - std::int64_t(points);
    num += std::uint64_t(diff < 0 ? -diff : diff);
  }
  return num;
}

}  // namespace

Rational certify_affine_function_dim(const std::function<BitString(const BitString&)>& f, int n,
                                     int m, int dim, const Budget& budget) {
  budget.charge(affine_subspace_count(n, dim) << dim);
  std::uint64_t worst = 0;
  enumerate_affine_subspaces(n, dim, [&](const AffineSubspace& s) {
    std::vector<std::uint64_t> counts(std::size_t(1) << m, 0);
    for (std::uint64_t c = 0; c < s.point_count(); ++c)
      ++counts[f(s.element(BitString::from_u64(c, dim))).as_u64()];
    worst = std::max(worst, histogram_sd_num(counts, dim));
  });
  return Rational(worst, BigInt(1) << (dim + m + 1));
}

namespace {

template <typename Ext>
void certify_affine_table(Ext& ax, int k,
                          const std::function<BitString(const BitString&)>& f,
                          const Budget& budget) {
  const int n = ax.n();
  ax.cert.eps_table.assign(n + 1, Rational(0));
  for (int j = 0; j <= n; ++j)
    ax.cert.eps_table[j] = certify_affine_function_dim(f, n, ax.m(), j, budget);
  ax.cert.k = k;
  ax.cert.eps = ax.cert.eps_from(k);
  ax.cert.family = "all affine subspaces, per dimension";
  ax.cert.budget_used = budget.used;
}

}  // namespace

void certify_affine_extractor(AffineExtractor& ax, int k, const Budget& budget) {
  certify_affine_table(ax, k, [&](const BitString& x) { return ax.extract(x); }, budget);
  // witness that the whole function is not affine
  const std::uint64_t size = std::uint64_t(1) << ax.n();
  BitString f0 = ax.extract(BitString(ax.n()));
  for (std::uint64_t a = 1; a < size && !ax.nonaffine_witness; ++a)
    for (std::uint64_t b = a + 1; b < size; ++b) {
      BitString xa = BitString::from_u64(a, ax.n());
      BitString xb = BitString::from_u64(b, ax.n());
      if (ax.extract(xa) + ax.extract(xb) + f0 != ax.extract(xa + xb)) {
        ax.nonaffine_witness = {xa, xb};
        break;
      }
    }
}

void certify_affine_extractor(AffineNmExtractor& anm, int k, const Budget& budget) {
  certify_affine_table(anm, k, [&](const BitString& x) { return anm.extract(x); }, budget);
}

void certify_seeded(LinearSeededExtractor& ext, int k, const Budget& budget) {
  const int n = ext.n(), m = ext.m(), d = ext.d();
  const std::uint64_t seeds = std::uint64_t(1) << d;
  std::vector<BitMatrix> mats;
  mats.reserve(seeds);
  for (std::uint64_t z = 0; z < seeds; ++z)
    mats.push_back(ext.seed_matrix(BitString::from_u64(z, d)));

  ext.cert.eps_table.assign(n + 1, Rational(0));
  for (int j = 0; j <= n; ++j) {
    budget.charge(affine_subspace_count(n, j) * seeds);
    std::uint64_t worst = 0;
    enumerate_affine_subspaces(n, j, [&](const AffineSubspace& s) {
      // SD((Z, ext(Z,X)); (Z,U_m)) = avg over z of 1 - 2^{rank-m}
      std::uint64_t num = 0;
      for (auto& mat : mats) {
        std::vector<BitString> rows;
        rows.reserve(j);
        for (auto& b : s.basis()) rows.push_back(mat.mul_left(b));
        int rank = gf2_rank(std::move(rows));
        num += (std::uint64_t(1) << m) - (std::uint64_t(1) << std::min(rank, m));
      }
      worst = std::max(worst, num);
    });
    ext.cert.eps_table[j] = Rational(worst, BigInt(1) << (d + m));
  }
  ext.cert.k = k;
  ext.cert.eps = ext.cert.eps_from(k);
  ext.cert.family = "all affine subspaces, per dimension (rank counting)";
  ext.cert.budget_used = budget.used;
}

Rational certify_seeded_nm(const SeededNmExtractor& e, int k, const Budget& budget) {
  const int n = e.n(), m = e.m(), d = e.d();
  const std::uint64_t seeds = std::uint64_t(1) << d;
  Rational worst = 0;
  for (int j = std::max(0, k); j <= n; ++j) {
    budget.charge(affine_subspace_count(n, j) * seeds << j);
    enumerate_affine_subspaces(n, j, [&](const AffineSubspace& s) {
      const std::uint64_t points = s.point_count();
      // extractor values per seed and point
      std::vector<std::vector<std::uint64_t>> vals(seeds, std::vector<std::uint64_t>(points));
      for (std::uint64_t z = 0; z < seeds; ++z) {
        BitString zz = BitString::from_u64(z, d);
        for (std::uint64_t p = 0; p < points; ++p)
          vals[z][p] = e.extract(zz, s.element(BitString::from_u64(p, j))).as_u64();
      }
      // The triple splits by seed value: the worst fixed-point-free map
      // picks, independently per z, the partner z' maximizing the slice
      // distance.
      BigInt total = 0;
      for (std::uint64_t z = 0; z < seeds; ++z) {
        std::uint64_t best = 0;
        for (std::uint64_t zp = 0; zp < seeds; ++zp) {
          if (zp == z) continue;
          // joint of (a = E(z',x), b = E(z,x)) versus (a, U_m)
          std::vector<std::pair<std::uint64_t, std::uint64_t>> cells(points);
          for (std::uint64_t p = 0; p < points; ++p) cells[p] = {vals[zp][p], vals[z][p]};
          std::sort(cells.begin(), cells.end());
          std::uint64_t num = 0;
          const std::uint64_t msize = std::uint64_t(1) << m;
          std::size_t i = 0;
          while (i < cells.size()) {
            std::uint64_t a = cells[i].first;
            // marginal count of a and its distinct-b row count
            std::size_t end = i;
            while (end < cells.size() && cells[end].first == a) ++end;
            std::uint64_t marg = end - i;
            std::uint64_t rows = 0;
            std::size_t t = i;
            while (t < end) {
              std::size_t u = t;
              while (u < end && cells[u].second == cells[t].second) ++u;
              std::uint64_t cnt = u - t;
              std::int64_t diff = std::int64_t(cnt * msize) - std::int64_t(marg);
              num += std::uint64_t(diff < 0 ? -diff : diff);
              ++rows;
              t = u;
            }
            num += marg * (msize - rows);
            i = end;
          }
          best = std::max(best, num);
        }
        total += best;
      }
      Rational eps(total, BigInt(1) << (d + j + m + 1));
      worst = std::max(worst, eps);
    });
  }
  return worst;
}

void certify_seeded_nm_into(SeededNmExtractor& e, int k, const Budget& budget) {
  e.cert.k = k;
  e.cert.eps = certify_seeded_nm(e, k, budget);
  e.cert.family = "all affine subspaces of dimension >= k x all fixed-point-free seed maps";
  e.cert.budget_used = budget.used;
}

// Best simulator for the joint (tampered, untampered) output pair:
// minimize SD(P(a,b); Q(a,b)) with Q(a,b) = 2^-m (D(a) + [a==b] D(same*)).
Rational joint_nm_fit(const std::vector<std::vector<Rational>>& p, int m) {
  const int msize = 1 << m;
  const int vars_d = msize + 1;  // D over outputs + same*
  const int var_e0 = vars_d;
  const int nv = vars_d + msize * msize;

  LinearProgram lp;
  lp.objective.assign(nv, 0);
  for (int c = var_e0; c < nv; ++c) lp.objective[c] = Rational(1, 2);

  lp.eq_lhs.emplace_back(nv, Rational(0));
  for (int c = 0; c < vars_d; ++c) lp.eq_lhs.back()[c] = 1;
  lp.eq_rhs.push_back(1);

  Rational inv = pow2_inv(unsigned(m));
  for (int a = 0; a < msize; ++a)
    for (int b = 0; b < msize; ++b) {
      int ev = var_e0 + a * msize + b;
      // e >= P - Q  and  e >= Q - P, with Q = inv*(D_a + [a==b]*D_same)
      lp.ub_lhs.emplace_back(nv, Rational(0));
      lp.ub_lhs.back()[ev] = -1;
      lp.ub_lhs.back()[a] = -inv;
      if (a == b) lp.ub_lhs.back()[msize] = -inv;
      lp.ub_rhs.push_back(-p[a][b]);

      lp.ub_lhs.emplace_back(nv, Rational(0));
      lp.ub_lhs.back()[ev] = -1;
      lp.ub_lhs.back()[a] = inv;
      if (a == b) lp.ub_lhs.back()[msize] = inv;
      lp.ub_rhs.push_back(p[a][b]);
    }
  auto sol = solve_lp(lp);
  if (!sol) throw Error("joint_nm_fit: infeasible");
  return sol->value;
}

Rational fit_binary_pair(const Rational& t0_flip, const Rational& t1_flip) {
  // With D = (a, b, 0, same*: c), a + b + c = 1, the two distances reduce
  // to |T_0(1) - b| and |T_1(0) - a|; both vanish unless a + b must
  // exceed 1.
  Rational excess = t0_flip + t1_flip - 1;
  return excess > 0 ? excess / 2 : Rational(0);
}

Rational joint_nm_fit_m1(const std::vector<std::vector<Rational>>& p) {
  // minimize over (D0, Ds) >= 0, D0 + Ds <= 1 the convex piecewise-linear
  //   f = 1/2 (|p00 - (D0+Ds)/2| + |p01 - D0/2| + |p10 - (1-D0-Ds)/2|
  //            + |p11 - (1-D0)/2|)
  // by evaluating every intersection of kink and boundary lines.
  struct Line {
    Rational a, b, c;  // a*D0 + b*Ds = c
  };
  std::vector<Line> lines = {
      {1, 1, 2 * p[0][0]},     {1, 0, 2 * p[0][1]}, {1, 1, 1 - 2 * p[1][0]},
      {1, 0, 1 - 2 * p[1][1]}, {1, 0, 0},           {0, 1, 0},
      {1, 1, 1}};
  auto eval = [&](const Rational& d0, const Rational& ds) -> Rational {
    Rational d1 = 1 - d0 - ds;
    auto dist = [](const Rational& x, const Rational& y) -> Rational {
      return x < y ? y - x : x - y;
    };
    return (dist(p[0][0], (d0 + ds) / 2) + dist(p[0][1], d0 / 2) +
            dist(p[1][0], d1 / 2) + dist(p[1][1], (d1 + ds) / 2)) /
           2;
  };
  Rational best = 2;
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      Rational det = lines[i].a * lines[j].b - lines[j].a * lines[i].b;
      if (det == 0) continue;
      Rational d0 = (lines[i].c * lines[j].b - lines[j].c * lines[i].b) / det;
      Rational ds = (lines[i].a * lines[j].c - lines[j].a * lines[i].c) / det;
      if (d0 < 0 || ds < 0 || d0 + ds > 1) continue;
      best = std::min(best, eval(d0, ds));
    }
  return best;
}

AffineNmCert certify_affine_nm(const AffineNmExtractor& anm, int k,
                               const AffineTamperFamily& family, const Budget& budget) {
  const int n = anm.n(), m = anm.m();
  const int msize = 1 << m;
  AffineNmCert cert;
  cert.eps_fit = 0;
  cert.eps_joint = 0;
  for (int j = std::max(0, k); j <= n; ++j) {
    budget.charge(affine_subspace_count(n, j) * family.maps.size() << j);
    enumerate_affine_subspaces(n, j, [&](const AffineSubspace& s) {
      auto points = s.points();
      std::vector<std::uint64_t> orig(points.size());
      for (std::size_t p = 0; p < points.size(); ++p) orig[p] = anm.extract(points[p]).as_u64();
      for (std::size_t fi = 0; fi < family.maps.size(); ++fi) {
        const AffineMap& g = family.maps[fi];
        // conditional tamper distributions per original output value
        std::vector<std::vector<std::uint64_t>> cnt(msize, std::vector<std::uint64_t>(msize, 0));
        std::vector<std::uint64_t> slice(msize, 0);
        for (std::size_t p = 0; p < points.size(); ++p) {
          std::uint64_t a = anm.extract(g.apply(points[p])).as_u64();
          ++cnt[orig[p]][a];
          ++slice[orig[p]];
        }
        Rational eps_fit;
        if (m == 1 && slice[0] && slice[1]) {
          eps_fit = fit_binary_pair(Rational(cnt[0][1], slice[0]), Rational(cnt[1][0], slice[1]));
        } else if (m == 1) {
          eps_fit = 0;  // single nonempty slice: D reproduces it exactly
        } else {
          std::map<BitString, FiniteDistribution> tampers;
          for (int b = 0; b < msize; ++b) {
            if (!slice[b]) continue;
            std::map<Outcome, std::uint64_t> counts;
            for (int a = 0; a < msize; ++a)
              if (cnt[b][a]) counts[BitString::from_u64(a, m)] = cnt[b][a];
            tampers[BitString::from_u64(b, m)] = FiniteDistribution::from_counts(counts);
          }
          eps_fit = fit_simulator(tampers).eps_star;
        }
        if (eps_fit > cert.eps_fit) {
          cert.eps_fit = eps_fit;
          cert.witness_map = static_cast<int>(fi);
          cert.witness_dim = j;
        }
        // joint output-pair distance with the best simulator
        std::vector<std::vector<Rational>> pj(msize, std::vector<Rational>(msize, 0));
        for (int b = 0; b < msize; ++b)
          for (int a = 0; a < msize; ++a)
            if (cnt[b][a]) pj[a][b] = Rational(cnt[b][a], points.size());
        cert.eps_joint =
            std::max(cert.eps_joint, m == 1 ? joint_nm_fit_m1(pj) : joint_nm_fit(pj, m));
      }
    });
  }
  return cert;
}

CompositionCheck check_composition_lemma(const AffineExtractor& inner,
                                         const LinearSeededExtractor& outer,
                                         const AffineSubspace& source, const Budget& budget) {
  const int d = outer.d();
  const std::uint64_t seeds = std::uint64_t(1) << d;
  budget.charge(source.point_count() * (seeds + 1));

  FiniteDistribution left, right;
  Rational wl(1, BigInt(source.point_count()));
  Rational wr(1, BigInt(source.point_count()) << d);
  for (std::uint64_t c = 0; c < source.point_count(); ++c) {
    BitString x = source.element(BitString::from_u64(c, source.dim()));
    BitString z = inner.extract(x);
    left.add_mass(z.concat(outer.extract(z, x)), wl);
    for (std::uint64_t zi = 0; zi < seeds; ++zi) {
      BitString zz = BitString::from_u64(zi, d);
      right.add_mass(zz.concat(outer.extract(zz, x)), wr);
    }
  }
  CompositionCheck check;
  check.measured = statistical_distance(left, right);
  int cond_dim = std::max(0, source.dim() - outer.m());
  check.bound = pow2(unsigned(d + 3)) * inner.cert.eps_from(cond_dim);
  return check;
}

Rational JointDistribution::event_mass(const std::vector<int>& w_event) const {
  Rational total = 0;
  for (auto& row : p)
    for (int w : w_event) total += row[w];
  return total;
}

bool JointDistribution::is_distribution() const {
  Rational total = 0;
  for (auto& row : p)
    for (auto& v : row) {
      if (v < 0) return false;
      total += v;
    }
  return total == 1;
}

ConditioningCheck check_conditioning(const JointDistribution& pj, const JointDistribution& qj,
                                     const std::vector<int>& w_event) {
  Rational pr_p = pj.event_mass(w_event);
  Rational pr_q = qj.event_mass(w_event);
  if (pr_p == 0 || pr_q == 0) throw DimensionError("check_conditioning: zero-probability event");

  // eps = SD of the joints
  Rational eps = 0;
  for (std::size_t v = 0; v < pj.p.size(); ++v)
    for (std::size_t w = 0; w < pj.p[v].size(); ++w) {
      Rational diff = pj.p[v][w] - qj.p[v][w];
      eps += diff < 0 ? -diff : diff;
    }
  eps /= 2;

  ConditioningCheck check;
  check.lhs = 0;
  for (std::size_t v = 0; v < pj.p.size(); ++v) {
    Rational pv = 0, qv = 0;
    for (int w : w_event) {
      pv += pj.p[v][w];
      qv += qj.p[v][w];
    }
    Rational diff = pv / pr_p - qv / pr_q;
    check.lhs += diff < 0 ? -diff : diff;
  }
  check.lhs /= 2;
  check.bound = 2 * eps / pr_q;
  return check;
}

FiniteDistribution exact_view_distribution(const SchemeInstance& inst, const BitString& secret,
                                           const AdversaryProgram& adv, const Budget& budget) {
  auto cws = inst.enumerate_codewords(secret, budget);
  GameLimits limits{inst.params().P, inst.params().block_bits(), inst.params().t,
                    inst.params().beta};
  std::map<Outcome, std::uint64_t> counts;
  for (auto& c : cws) ++counts[run_game(adv, c, limits).answer_bits()];
  return FiniteDistribution::from_counts(counts);
}

FiniteDistribution tamper_experiment(const SchemeInstance& inst, const BitString& secret,
                                     const AdversaryProgram& adv, const TamperStrategy& sigma,
                                     const std::vector<int>& R, const Budget& budget) {
  if (static_cast<int>(R.size()) != inst.params().r)
    throw DimensionError("tamper_experiment: |R| must be r");
  auto cws = inst.enumerate_codewords(secret, budget);
  GameLimits limits{inst.params().P, inst.params().block_bits(), inst.params().t,
                    inst.params().beta};
  const int bb = inst.params().block_bits();
  std::map<Outcome, std::uint64_t> counts;
  for (auto& c : cws) {
    View v = run_game(adv, c, limits);
    AffineMap f = sigma.tamper_map(v);
    BitString tampered = f.apply(c);
    std::vector<std::pair<int, BitString>> blocks;
    for (int i : R) blocks.emplace_back(i, tampered.slice(i * bb, bb));
    auto res = inst.reconstruct_traced(blocks);
    if (res.secret)
      ++counts[*res.secret];
    else
      ++counts[Bot{}];
  }
  return FiniteDistribution::from_counts(counts);
}

std::map<BitString, FiniteDistribution> tamper_experiment_all(
    const SchemeInstance& inst, const AdversaryProgram& adv, const TamperStrategy& sigma,
    const std::vector<int>& R, const Budget& budget) {
  std::map<BitString, FiniteDistribution> out;
  for (std::uint64_t s = 0; s < (std::uint64_t(1) << inst.secret_bits()); ++s) {
    BitString sec = BitString::from_u64(s, inst.secret_bits());
    out[sec] = tamper_experiment(inst, sec, adv, sigma, R, budget);
  }
  return out;
}

}  // namespace afss
