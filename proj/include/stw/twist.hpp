#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stw/stable.hpp"

namespace stw {

// Restriction to R = k[x]: the Jordan type of the x-action.  Size-1 blocks
// are trivial summands, size-m blocks are free ones; anything in between
// obstructs the twist hypotheses.
struct RestrictionReport {
  JordanReport jordan;
  std::size_t m = 0;
  std::size_t k_count = 0;      // size-1 blocks
  std::size_t free_count = 0;   // size-m blocks
  std::vector<std::size_t> intermediate;
  bool relatively_projective = false;
};

// Everything the twists need about R = k[x] inside A, plus the induced
// module T = k (x) A and (optionally) the commuting element y.
struct TwistContext {
  AlgebraPtr A;
  SubalgebraData sub;
  ModulePtr simple;
  ModulePtr T;
  Mat mu_T;                      // T -> k
  RestrictionReport t_restriction;
  std::optional<Vec> y;
  std::vector<Vec> y_coeff;      // y*a_j = sum_l P_lj(x) a_l, entry j*r+l
  uint64_t seed = 0;
};

struct Induced {
  ModulePtr mod;  // M (x)_R A on the underlying space M^r
  Mat mu;         // multiplication map down to M
};

inline RestrictionReport restriction_report_of(const Mat& xact, std::size_t m) {
  RestrictionReport rr;
  rr.m = m;
  rr.jordan = jordan_chains(xact, m);
  for (auto b : rr.jordan.block_sizes) {
    if (b == 1 && m > 1)
      ++rr.k_count;
    else if (b == m)
      ++rr.free_count;
    else
      rr.intermediate.push_back(b);
  }
  rr.relatively_projective = (rr.k_count == 0 && rr.intermediate.empty());
  return rr;
}

// (v (x) a_j) * b = sum_l (v * r_lj(b)(x)) (x) a_l, straight from the
// coefficient table of the subalgebra analysis.
inline Induced induce(const TwistContext& ctx, const ModulePtr& m) {
  const auto& A = *ctx.A;
  const std::size_t r = ctx.sub.r, mm = ctx.sub.m, n = m->dim, d = A.dim;
  Induced out;
  Mat xact = act_of(*m, ctx.sub.x);
  std::vector<Mat> xpow = {mat_identity(A.field.p, n)};
  for (std::size_t i = 1; i < mm; ++i) xpow.push_back(mat_mul(xpow.back(), xact));

  std::vector<Mat> act;
  act.reserve(d);
  for (std::size_t b = 0; b < d; ++b) {
    Mat mb(A.field.p, r * n, r * n);
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t l = 0; l < r; ++l) {
        const Vec& poly = ctx.sub.coeff[b][j * r + l];
        for (std::size_t i = 0; i < mm; ++i) {
          if (!poly[i]) continue;
          const Mat& xp = xpow[i];
          for (std::size_t rr = 0; rr < n; ++rr)
            for (std::size_t cc = 0; cc < n; ++cc) {
              uint32_t v = xp.at(rr, cc);
              if (v)
                mb.at(j * n + rr, l * n + cc) =
                    A.field.add(mb.at(j * n + rr, l * n + cc), A.field.mul(poly[i], v));
            }
        }
      }
    act.push_back(std::move(mb));
  }
  out.mod = make_module(m->A, std::move(act), Check::Auto);
  out.mu = Mat(A.field.p, r * n, n);
  for (std::size_t j = 0; j < r; ++j) {
    Mat aj = act_of(*m, ctx.sub.left_free.row(j));
    for (std::size_t rr = 0; rr < n; ++rr) out.mu.set_row(j * n + rr, aj.row(rr));
  }
  if (!is_module_hom(*out.mod, *m, out.mu))
    throw Error("InvalidModule", "internal: multiplication map does not intertwine");
  return out;
}

inline TwistContext make_twist_context(const AlgebraPtr& A, const Vec& x,
                                       std::optional<Vec> y = std::nullopt, uint64_t seed = 0) {
  TwistContext ctx;
  ctx.A = A;
  ctx.sub = analyze_subalgebra(*A, x);
  ctx.simple = simple_module(A);
  Induced ind = induce(ctx, ctx.simple);
  ctx.T = ind.mod;
  ctx.mu_T = ind.mu;
  ctx.t_restriction = restriction_report_of(act_of(*ctx.T, ctx.sub.x), ctx.sub.m);
  ctx.seed = seed;
  if (y) {
    ctx.y = *y;
    Solver chain(ctx.sub.chain_basis);
    const std::size_t r = ctx.sub.r, mm = ctx.sub.m;
    ctx.y_coeff.assign(r * r, Vec(mm, 0));
    for (std::size_t j = 0; j < r; ++j) {
      Vec ya = A->elem_mul(*y, ctx.sub.left_free.row(j));
      auto c = chain.solve(ya);
      if (!c) throw Error("FreenessFailed", "internal: chain basis does not span");
      for (std::size_t l = 0; l < r; ++l)
        for (std::size_t i = 0; i < mm; ++i) ctx.y_coeff[j * r + l][i] = (*c)[l * mm + i];
    }
  }
  return ctx;
}

inline RestrictionReport restriction_report(const TwistContext& ctx, const ModulePtr& m) {
  return restriction_report_of(act_of(*m, ctx.sub.x), ctx.sub.m);
}

// psi = left multiplication by y on T, in the induced basis
inline Mat psi_on_T(const TwistContext& ctx) {
  if (!ctx.y) throw Error("HypothesisFailed", "no element y in the context");
  const std::size_t r = ctx.sub.r;
  Mat psi(ctx.A->field.p, r, r);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t l = 0; l < r; ++l) psi.at(j, l) = ctx.y_coeff[j * r + l][0];
  return psi;
}

// ---------------------------------------------------------------------------
// relative syzygy (kernel of the minimized relative cover)
// ---------------------------------------------------------------------------

struct RelativeSyzygy {
  ModulePtr omega;
  MinimizedEpi cover;
  bool split_certified = false;  // x-Jordan types: kernel + target == source
};

inline RelativeSyzygy relative_syzygy(const TwistContext& ctx, const ModulePtr& m) {
  RelativeSyzygy rs;
  if (m->dim == 0) {
    rs.omega = zero_module(ctx.A);
    rs.cover.source = rs.omega;
    rs.split_certified = true;
    return rs;
  }
  Induced ind = induce(ctx, m);
  rs.cover = minimize_epi(ind.mod, ind.mu, m, ctx.seed);
  Mat K = left_kernel(rs.cover.epi);
  auto [ker, kincl] = submodule(*rs.cover.source, K);
  rs.omega = ker;
  auto type_of = [&](const ModulePtr& mod) {
    return jordan_chains(act_of(*mod, ctx.sub.x), ctx.sub.m).block_sizes;
  };
  std::vector<std::size_t> combined = type_of(rs.omega);
  for (auto b : type_of(m)) combined.push_back(b);
  std::sort(combined.begin(), combined.end(), std::greater<>());
  rs.split_certified = (combined == type_of(rs.cover.source));
  return rs;
}

// ---------------------------------------------------------------------------
// spherical stable twist  tau_R(M) = cosyzygy of ker(M (x)_R A -> M)
// ---------------------------------------------------------------------------

inline void require_spherical(const TwistContext& ctx) {
  const auto& rr = ctx.t_restriction;
  if (rr.k_count != 2 || !rr.intermediate.empty())
    throw Error("HypothesisFailed",
                "spherical hypothesis needs T_R = k^2 + free (got " + std::to_string(rr.k_count) +
                    " trivial blocks, " + std::to_string(rr.intermediate.size()) + " intermediate)");
}

struct KernelOfMu {
  ModulePtr W;
  Mat ker;  // RREF rows in induced coords
  std::vector<std::size_t> kpiv;
  Induced ind;
};

inline KernelOfMu mu_kernel(const TwistContext& ctx, const ModulePtr& core) {
  KernelOfMu km;
  km.ind = induce(ctx, core);
  Ech e = rref(left_kernel(km.ind.mu));
  km.ker = e.r;
  km.kpiv = e.pivots;
  auto [w, incl] = submodule(*km.ind.mod, km.ker);
  km.W = w;
  return km;
}

inline ModulePtr spherical_twist(const TwistContext& ctx, const ModulePtr& m) {
  require_spherical(ctx);
  auto st = strip_projectives(m);
  if (st.core->dim == 0) return zero_module(ctx.A);
  KernelOfMu km = mu_kernel(ctx, st.core);
  return cosyzygy(km.W);
}

// tau on a batch of maps M -> N (M, N projective-free)
struct TwistedMaps {
  ModulePtr tau_source, tau_target;
  std::vector<Mat> maps;
};

inline TwistedMaps spherical_twist_maps(const TwistContext& ctx, const ModulePtr& M,
                                        const ModulePtr& N, const std::vector<Mat>& fs) {
  require_spherical(ctx);
  TwistedMaps out;
  KernelOfMu kM = mu_kernel(ctx, M);
  KernelOfMu kN = mu_kernel(ctx, N);
  CosyzygyStep cM = cosyzygy_step(kM.W);
  CosyzygyStep cN = cosyzygy_step(kN.W);
  out.tau_source = cM.cosyz;
  out.tau_target = cN.cosyz;
  const std::size_t r = ctx.sub.r;
  for (const auto& f : fs) {
    // f (x) id on the induced modules is block-diagonal
    Mat fX(f.p, r * M->dim, r * N->dim);
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t a = 0; a < f.rows; ++a)
        for (std::size_t b = 0; b < f.cols; ++b)
          if (f.at(a, b)) fX.at(j * M->dim + a, j * N->dim + b) = f.at(a, b);
    Mat fW = select_cols(mat_mul(kM.ker, fX), kN.kpiv);
    out.maps.push_back(cosyzygy_transport(fW, cM, cN));
  }
  return out;
}

// ---------------------------------------------------------------------------
// P^n stable twist: double cone over H(v (x) a_j) = vy (x) a_j - v (x) y a_j
// ---------------------------------------------------------------------------

struct Envelope {
  ModulePtr I;
  Mat emb;  // X -> I, injective
};

// injective envelope via the dual projective cover (injectives = projectives
// for a symmetric algebra, realized here as duals of free opposite modules)
inline Envelope injective_envelope(const ModulePtr& X) {
  Envelope env;
  auto D = dual(*X);
  CoverData cov = projective_cover(D);
  env.I = dual(*cov.cover);
  env.emb = transpose(cov.epi);
  if (!is_module_hom(*X, *env.I, env.emb) || rank(env.emb) != X->dim)
    throw Error("InvalidModule", "internal: envelope embedding failed");
  return env;
}

struct ConeData {
  ModulePtr C;
  Mat q;                           // (Y + I) -> C quotient map
  std::vector<std::size_t> rest;   // complement columns (quotient basis reps)
  std::size_t nY = 0, nI = 0;
};

// cone of f : X -> Y as the pushout along the injective envelope of X:
// C = (Y + I(X)) / {(f(v), emb(v))}
inline ConeData cone_along_envelope(const ModulePtr& X, const ModulePtr& Y, const Mat& f) {
  Envelope env = injective_envelope(X);
  ConeData cd;
  cd.nY = Y->dim;
  cd.nI = env.I->dim;
  ModulePtr sum = direct_sum(*Y, *env.I);
  Mat J = hstack(f, env.emb);
  auto [C, proj] = quotient(*sum, J);
  cd.C = C;
  cd.q = proj;
  Ech e = rref(J);
  std::size_t pi = 0;
  for (std::size_t c = 0; c < sum->dim; ++c) {
    if (pi < e.pivots.size() && e.pivots[pi] == c) { ++pi; continue; }
    cd.rest.push_back(c);
  }
  return cd;
}

// induced map out of the cone: (g on the Y leg, 0 on the I leg)
inline Mat cone_out_map(const ConeData& cd, const Mat& g, std::size_t target_dim) {
  Mat stacked(g.p, cd.nY + cd.nI, target_dim);
  for (std::size_t i = 0; i < cd.nY; ++i) stacked.set_row(i, g.row(i));
  Mat out(g.p, cd.rest.size(), target_dim);
  for (std::size_t t = 0; t < cd.rest.size(); ++t) out.set_row(t, stacked.row(cd.rest[t]));
  if (!(mat_mul(cd.q, out) == stacked))
    throw Error("InvalidModule", "internal: map does not descend to the cone");
  return out;
}

inline void require_pn(const TwistContext& ctx) {
  if (!ctx.y) throw Error("HypothesisFailed", "P^n twist needs an element y");
  const auto& A = *ctx.A;
  Vec xy = A.elem_mul(ctx.sub.x, *ctx.y);
  Vec yx = A.elem_mul(*ctx.y, ctx.sub.x);
  if (xy != yx) throw Error("HypothesisFailed", "CommutationFailed: x*y != y*x");
  // left multiplication by y must preserve xA
  Mat lx = ctx.A->left_mult_by(ctx.sub.x);
  Mat ly = ctx.A->left_mult_by(*ctx.y);
  Ech xa = rref(lx);
  Mat img = mat_mul(lx, ly);
  for (std::size_t i = 0; i < img.rows; ++i)
    if (!ech_contains(xa, img.row(i)))
      throw Error("HypothesisFailed", "NotWellDefined: y*xA is not contained in xA");
}

// H on M (x)_R A; the second term expands y*a_j through the coefficient table
inline Mat pn_H(const TwistContext& ctx, const ModulePtr& core, const Induced& ind) {
  const std::size_t r = ctx.sub.r, n = core->dim, mm = ctx.sub.m;
  Mat xact = act_of(*core, ctx.sub.x);
  Mat yact = act_of(*core, *ctx.y);
  std::vector<Mat> xpow = {mat_identity(xact.p, n)};
  for (std::size_t i = 1; i < mm; ++i) xpow.push_back(mat_mul(xpow.back(), xact));
  Mat H(xact.p, r * n, r * n);
  Field f = ctx.A->field;
  for (std::size_t j = 0; j < r; ++j) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (yact.at(a, b)) H.at(j * n + a, j * n + b) = yact.at(a, b);
    for (std::size_t l = 0; l < r; ++l) {
      const Vec& poly = ctx.y_coeff[j * r + l];
      for (std::size_t i = 0; i < mm; ++i) {
        if (!poly[i]) continue;
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < n; ++b) {
            uint32_t v = xpow[i].at(a, b);
            if (v)
              H.at(j * n + a, l * n + b) = f.sub(H.at(j * n + a, l * n + b), f.mul(poly[i], v));
          }
      }
    }
  }
  if (!is_module_hom(*ind.mod, *ind.mod, H))
    throw Error("InvalidModule", "internal: H does not intertwine");
  if (!mat_mul(H, ind.mu).is_zero())
    throw Error("InvalidModule", "internal: mu o H != 0");
  return H;
}

// certified stable endomorphism structure with psi = class of left
// multiplication by y; throws EndoRingMismatch when it fails
inline StableEndoStructure pn_endo_certificate(const TwistContext& ctx) {
  if (!ctx.y) throw Error("HypothesisFailed", "P^n twist needs an element y");
  Mat psi = psi_on_T(ctx);
  StableEndoStructure se = stable_endo_structure(ctx.T, ctx.seed, &psi);
  if (!se.certified || se.n < 1)
    throw Error("HypothesisFailed",
                "EndoRingMismatch: stable End(T) is not k[psi]/(psi^{n+1}) with psi = L_y (stable dim " +
                    std::to_string(se.stable_dim) + ")");
  return se;
}

inline ModulePtr pn_twist(const TwistContext& ctx, const ModulePtr& m) {
  require_pn(ctx);
  pn_endo_certificate(ctx);
  auto st = strip_projectives(m);
  if (st.core->dim == 0) return zero_module(ctx.A);
  Induced ind = induce(ctx, st.core);
  Mat H = pn_H(ctx, st.core, ind);
  ConeData c1 = cone_along_envelope(ind.mod, ind.mod, H);
  Mat c = cone_out_map(c1, ind.mu, st.core->dim);
  if (!is_module_hom(*c1.C, *st.core, c))
    throw Error("InvalidModule", "internal: induced map C_H -> M does not intertwine");
  auto s1 = strip_projectives(c1.C);
  Mat c_stripped = mat_mul(s1.incl, c);
  ConeData c2 = cone_along_envelope(s1.core, st.core, c_stripped);
  return strip_projectives(c2.C).core;
}

// ---------------------------------------------------------------------------
// hypothesis and evidence reports
// ---------------------------------------------------------------------------

struct HypothesisReport {
  RestrictionReport t_restriction;
  std::size_t stable_end_dim = 0;
  std::size_t n = 0;
  bool endo_certified = false;
  std::size_t omega_hom_dim = 0;  // dim stable Hom(Omega T, T), must be n+1
  bool omega_hom_ok = false;
  bool has_y = false, y_commutes = false, y_well_defined = false, psi_is_left_y = false;
  bool spherical_ready = false, pn_ready = false;
  std::string note;
};

inline HypothesisReport hypothesis_report(const TwistContext& ctx) {
  HypothesisReport h;
  h.t_restriction = ctx.t_restriction;
  StableEndoStructure se;
  bool have_se = false;
  if (ctx.y) {
    Mat psi = psi_on_T(ctx);
    se = stable_endo_structure(ctx.T, ctx.seed, &psi);
    h.psi_is_left_y = se.certified;
    if (!se.certified) se = stable_endo_structure(ctx.T, ctx.seed);
    have_se = true;
  } else {
    se = stable_endo_structure(ctx.T, ctx.seed);
    have_se = true;
  }
  if (have_se) {
    h.stable_end_dim = se.stable_dim;
    h.n = se.n;
    h.endo_certified = se.certified;
  }
  auto om = syzygy(ctx.T);
  h.omega_hom_dim = stable_hom(om, ctx.T).stable_dim;
  h.omega_hom_ok = (h.omega_hom_dim == h.n + 1);
  h.spherical_ready = (ctx.t_restriction.k_count == 2 && ctx.t_restriction.intermediate.empty());
  if (ctx.y) {
    h.has_y = true;
    const auto& A = *ctx.A;
    h.y_commutes = (A.elem_mul(ctx.sub.x, *ctx.y) == A.elem_mul(*ctx.y, ctx.sub.x));
    if (h.y_commutes) {
      Mat lx = A.left_mult_by(ctx.sub.x);
      Ech xa = rref(lx);
      Mat img = mat_mul(lx, A.left_mult_by(*ctx.y));
      h.y_well_defined = true;
      for (std::size_t i = 0; i < img.rows && h.y_well_defined; ++i)
        h.y_well_defined = ech_contains(xa, img.row(i));
    }
    h.pn_ready = h.y_commutes && h.y_well_defined && h.psi_is_left_y && h.endo_certified && h.n >= 1;
  }
  return h;
}

struct EvidenceReport {
  std::size_t tau_k_end_dim = 0;   // must be 1
  std::size_t ext_dim = 0;         // dim Ext^1(k, k)
  std::size_t image_rank = 0;      // rank of the induced map on Ext^1
  bool pass = false;
};

// testable consequences of full faithfulness: the image of the simple is a
// stable brick, and tau is injective on Ext^1(k, k)
inline EvidenceReport equivalence_evidence(const TwistContext& ctx) {
  require_spherical(ctx);
  EvidenceReport ev;
  ModulePtr k = ctx.simple;
  ModulePtr tk = spherical_twist(ctx, k);
  ev.tau_k_end_dim = stable_hom(tk, tk).stable_dim;
  ModulePtr om = syzygy(k);
  StableHomSpace ex = stable_hom(om, k);
  ev.ext_dim = ex.stable_dim;
  std::vector<Mat> reps = ex.reps;
  TwistedMaps tm = spherical_twist_maps(ctx, om, k, reps);
  StableHomSpace target = stable_hom(tm.tau_source, tm.tau_target);
  Span img = target.proj_span;
  std::size_t base = img.dim();
  for (const auto& g : tm.maps) img.add(flatten(g));
  ev.image_rank = img.dim() - base;
  ev.pass = (ev.tau_k_end_dim == 1) && (ev.image_rank == ev.ext_dim);
  return ev;
}

}  // namespace stw
