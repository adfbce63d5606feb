#pragma once

#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "stw/algebra.hpp"

namespace stw {

// Right A-module: one action matrix per algebra basis element, rows act
// (v * b_i = v * action[i]).
struct Module {
  AlgebraPtr A;
  std::size_t dim = 0;
  std::vector<Mat> action;
};
using ModulePtr = std::shared_ptr<const Module>;

struct ModuleHom {
  ModulePtr source, target;
  Mat mat;  // dim(source) x dim(target)
};

enum class Check { Unit, Gens, Full, Auto };

inline Mat act_of(const Module& m, const Vec& elem) {
  Mat r(m.A->field.p, m.dim, m.dim);
  for (std::size_t b = 0; b < m.A->dim; ++b)
    if (elem[b]) r = mat_add(r, mat_scale(m.action[b], elem[b]));
  return r;
}

inline void check_module(const Module& m, Check level) {
  const auto& A = *m.A;
  const std::size_t d = A.dim;
  if (m.action.size() != d) throw Error("InvalidModule", "one action matrix per basis element required");
  for (const auto& mt : m.action)
    if (mt.rows != m.dim || mt.cols != m.dim || mt.p != A.field.p)
      throw Error("InvalidModule", "action matrix shape mismatch");
  if (!(m.action[0] == mat_identity(A.field.p, m.dim)))
    throw Error("InvalidModule", "unit must act as the identity");
  if (level == Check::Unit) return;
  auto relation = [&](std::size_t i, std::size_t j) {
    Mat lhs = mat_mul(m.action[i], m.action[j]);
    Mat rhs(A.field.p, m.dim, m.dim);
    const Vec& prod = A.table[i][j];
    for (std::size_t k = 0; k < d; ++k)
      if (prod[k]) rhs = mat_add(rhs, mat_scale(m.action[k], prod[k]));
    if (!(lhs == rhs))
      throw Error("InvalidModule", "structure constants violated at pair (" + A.basis_names[i] +
                                       ", " + A.basis_names[j] + ")");
  };
  if (level == Check::Gens) {
    for (std::size_t i = 0; i < d; ++i)
      for (auto g : A.generators) relation(i, g);
    return;
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) relation(i, j);
}

inline ModulePtr make_module(AlgebraPtr A, std::vector<Mat> action, Check level = Check::Auto) {
  auto m = std::make_shared<Module>();
  m->A = std::move(A);
  m->dim = action.empty() ? 0 : action[0].rows;
  m->action = std::move(action);
  if (level == Check::Auto) {
    const double n3 = (double)m->dim * m->dim * m->dim;
    const double d = (double)m->A->dim;
    if (d * d * n3 <= 2e8)
      level = Check::Full;
    else if (d * (double)m->A->generators.size() * n3 <= 2e8)
      level = Check::Gens;
    else
      level = Check::Unit;
  }
  check_module(*m, level);
  return m;
}

inline ModulePtr zero_module(AlgebraPtr A) {
  std::vector<Mat> act(A->dim, Mat(A->field.p, 0, 0));
  return make_module(std::move(A), std::move(act), Check::Unit);
}

// k = A/rad A: the unique simple module of a local algebra.
inline ModulePtr simple_module(AlgebraPtr A) {
  std::vector<Mat> act;
  for (std::size_t i = 0; i < A->dim; ++i) {
    Mat m(A->field.p, 1, 1);
    m.at(0, 0) = (i == 0) ? 1 : 0;
    act.push_back(m);
  }
  return make_module(std::move(A), std::move(act), Check::Full);
}

inline ModulePtr regular_module(AlgebraPtr A) {
  auto act = A->right_mult;
  return make_module(std::move(A), std::move(act), Check::Unit);
}

inline ModulePtr free_module(AlgebraPtr A, std::size_t g) {
  const std::size_t d = A->dim;
  std::vector<Mat> act;
  act.reserve(d);
  for (std::size_t b = 0; b < d; ++b) {
    Mat m(A->field.p, g * d, g * d);
    for (std::size_t i = 0; i < g; ++i)
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) m.at(i * d + r, i * d + c) = A->right_mult[b].at(r, c);
    act.push_back(std::move(m));
  }
  return make_module(std::move(A), std::move(act), Check::Unit);
}

inline ModulePtr direct_sum(const Module& x, const Module& y) {
  if (!same_algebra(*x.A, *y.A)) throw Error("AlgebraMismatch", "direct sum over different algebras");
  std::vector<Mat> act;
  for (std::size_t b = 0; b < x.A->dim; ++b) act.push_back(block_diag(x.action[b], y.action[b]));
  return make_module(x.A, std::move(act), Check::Unit);
}

// Restriction of the action to an invariant subspace.  `rows` need not be
// reduced; the result uses its RREF basis.  Returns the module and the
// inclusion matrix (core-coords -> ambient coords).
inline std::pair<ModulePtr, Mat> submodule(const Module& m, const Mat& rows) {
  Ech e = rref(rows);
  const Mat& S = e.r;
  std::vector<Mat> act;
  for (std::size_t b = 0; b < m.A->dim; ++b) {
    Mat img = mat_mul(S, m.action[b]);
    act.push_back(select_cols(img, e.pivots));
  }
  return {make_module(m.A, std::move(act), Check::Unit), S};
}

// Quotient by an invariant subspace; returns the module and the projection
// matrix (ambient -> quotient coords).  Quotient basis: standard vectors at
// the non-pivot columns of the subspace RREF.
inline std::pair<ModulePtr, Mat> quotient(const Module& m, const Mat& sub_rows) {
  Ech e = rref(sub_rows);
  std::vector<std::size_t> rest;
  {
    std::size_t pi = 0;
    for (std::size_t c = 0; c < m.dim; ++c) {
      if (pi < e.pivots.size() && e.pivots[pi] == c) { ++pi; continue; }
      rest.push_back(c);
    }
  }
  const std::size_t q = rest.size();
  std::vector<Mat> act;
  for (std::size_t b = 0; b < m.A->dim; ++b) {
    Mat r(m.A->field.p, q, q);
    for (std::size_t t = 0; t < q; ++t) {
      Vec v = ech_reduce(e, m.action[b].row(rest[t]));
      for (std::size_t j = 0; j < q; ++j) r.at(t, j) = v[rest[j]];
    }
    act.push_back(std::move(r));
  }
  Mat proj(m.A->field.p, m.dim, q);
  for (std::size_t i = 0; i < m.dim; ++i) {
    Vec v(m.dim, 0);
    v[i] = 1;
    v = ech_reduce(e, std::move(v));
    for (std::size_t j = 0; j < q; ++j) proj.at(i, j) = v[rest[j]];
  }
  return {make_module(m.A, std::move(act), Check::Unit), proj};
}

// D(M) = Hom_k(M, k), a module over the opposite algebra; actions transpose.
inline ModulePtr dual(const Module& m) {
  auto op = m.A->opposite_of(m.A);
  std::vector<Mat> act;
  for (const auto& a : m.action) act.push_back(transpose(a));
  return make_module(op, std::move(act), Check::Unit);
}

// change of basis, rows of P are the new basis (P invertible)
inline ModulePtr conjugate(const Module& m, const Mat& P) {
  auto Pi = inverse(P);
  if (!Pi) throw Error("BadParameter", "conjugation needs an invertible matrix");
  std::vector<Mat> act;
  for (const auto& a : m.action) act.push_back(mat_mul(mat_mul(P, a), *Pi));
  return make_module(m.A, std::move(act), Check::Unit);
}

inline bool is_module_hom(const Module& m, const Module& n, const Mat& f) {
  for (auto g : m.A->generators)
    if (!(mat_mul(m.action[g], f) == mat_mul(f, n.action[g]))) return false;
  return true;
}

// soc(M) = {v : v * rad = 0}; generators suffice since rad = sum g_i A.
inline Mat socle(const Module& m) {
  if (m.A->generators.empty()) return mat_identity(m.A->field.p, m.dim);
  Mat stacked(m.A->field.p, m.dim, 0);
  for (auto g : m.A->generators) stacked = hstack(stacked, m.action[g]);
  return left_kernel(stacked);
}

// M*rad as a subspace: closure of the generator images under the action.
inline Mat rad_subspace(const Module& m) {
  Span sp(m.A->field.p, m.dim);
  std::vector<Vec> frontier;
  for (auto g : m.A->generators)
    for (std::size_t i = 0; i < m.dim; ++i) {
      Vec v = m.action[g].row(i);
      if (sp.add(v)) frontier.push_back(std::move(v));
    }
  while (!frontier.empty()) {
    std::vector<Vec> next;
    for (const auto& v : frontier)
      for (auto g : m.A->generators) {
        Vec w = vec_mat(v, m.action[g]);
        if (sp.add(w)) next.push_back(std::move(w));
      }
    frontier = std::move(next);
  }
  return sp.to_mat();
}

inline std::size_t top_dim(const Module& m) { return m.dim - rad_subspace(m).rows; }

// lift of a basis of top(M): standard vectors at the non-pivot columns of
// the radical subspace RREF
inline Mat top_generators(const Module& m) {
  Ech e = rref(rad_subspace(m));
  std::vector<Vec> rows;
  std::size_t pi = 0;
  for (std::size_t c = 0; c < m.dim; ++c) {
    if (pi < e.pivots.size() && e.pivots[pi] == c) { ++pi; continue; }
    Vec v(m.dim, 0);
    v[c] = 1;
    rows.push_back(std::move(v));
  }
  return mat_from_rows(m.A->field.p, rows, m.dim);
}

// ---------------------------------------------------------------------------
// presentation A^s -> M and Hom computation
// ---------------------------------------------------------------------------

struct Presentation {
  Mat gens;                             // s x n, generator lifts of top(M)
  Mat epi;                              // (s*d) x n, (i,j) row = gens_i * b_j
  Mat lam;                              // n x (s*d), lam * epi = I_n
  std::vector<std::vector<Vec>> kergens;  // module generators of ker(epi), as s-tuples in A
};

// restriction of the free-module action to a subspace K (rows, RREF'd here)
inline ModulePtr submodule_of_free(const AlgebraPtr& A, std::size_t s, const Mat& K_in,
                                   Mat* K_out = nullptr) {
  Ech e = rref(K_in);
  const Mat& K = e.r;
  const std::size_t d = A->dim, kdim = K.rows;
  std::vector<Mat> act;
  for (std::size_t b = 0; b < d; ++b) {
    Mat img(A->field.p, kdim, s * d);
    for (std::size_t blk = 0; blk < s; ++blk) {
      // img block = K block * rho(b)
      for (std::size_t i = 0; i < kdim; ++i) {
        const uint32_t* kr = K.row_ptr(i) + blk * d;
        uint32_t* ir = img.row_ptr(i) + blk * d;
        for (std::size_t r = 0; r < d; ++r) {
          uint64_t kv = kr[r];
          if (!kv) continue;
          const uint32_t* rr = A->right_mult[b].row_ptr(r);
          for (std::size_t c = 0; c < d; ++c)
            ir[c] = (uint32_t)((ir[c] + kv * rr[c]) % A->field.p);
        }
      }
    }
    act.push_back(select_cols(img, e.pivots));
  }
  if (K_out) *K_out = K;
  return make_module(A, std::move(act), Check::Unit);
}

inline Presentation present(const Module& m) {
  Presentation P;
  const auto& A = *m.A;
  const std::size_t d = A.dim;
  P.gens = top_generators(m);
  const std::size_t s = P.gens.rows;
  P.epi = Mat(A.field.p, s * d, m.dim);
  for (std::size_t i = 0; i < s; ++i) {
    Vec u = P.gens.row(i);
    for (std::size_t j = 0; j < d; ++j) P.epi.set_row(i * d + j, vec_mat(u, m.action[j]));
  }
  if (m.dim > 0) {
    auto lam = solve_left(P.epi, mat_identity(A.field.p, m.dim));
    if (!lam) throw Error("InvalidModule", "top generators do not generate");
    P.lam = *lam;
  } else {
    P.lam = Mat(A.field.p, 0, 0);
  }
  Mat K = left_kernel(P.epi);
  if (K.rows > 0) {
    Mat Kred;
    auto ksub = submodule_of_free(m.A, s, K, &Kred);
    Mat kt = top_generators(*ksub);
    Mat kg = mat_mul(kt, Kred);  // back to A^s coordinates
    for (std::size_t t = 0; t < kg.rows; ++t) {
      std::vector<Vec> tuple(s);
      for (std::size_t i = 0; i < s; ++i) {
        tuple[i] = Vec(kg.row_ptr(t) + i * d, kg.row_ptr(t) + (i + 1) * d);
      }
      P.kergens.push_back(std::move(tuple));
    }
  }
  return P;
}

struct HomSpace {
  ModulePtr source, target;
  std::vector<Mat> basis;  // canonical (RREF of flattened mats)
  std::size_t dim() const { return basis.size(); }
};

// Hom_A(M, N) through a presentation of M: a hom is a tuple (w_i) in N^s
// annihilating the kernel generators.
inline HomSpace hom_space(const ModulePtr& M, const ModulePtr& N) {
  if (!same_algebra(*M->A, *N->A)) throw Error("AlgebraMismatch", "hom between different algebras");
  HomSpace H;
  H.source = M;
  H.target = N;
  if (M->dim == 0 || N->dim == 0) return H;
  const std::size_t d = M->A->dim, nN = N->dim;
  Presentation P = present(*M);
  const std::size_t s = P.gens.rows;
  const std::size_t t = P.kergens.size();

  Mat C(M->A->field.p, s * nN, t * nN);
  for (std::size_t kt = 0; kt < t; ++kt) {
    for (std::size_t i = 0; i < s; ++i) {
      Mat act = act_of(*N, P.kergens[kt][i]);
      for (std::size_t r = 0; r < nN; ++r)
        for (std::size_t c = 0; c < nN; ++c) {
          uint32_t v = act.at(r, c);
          if (v) C.at(i * nN + r, kt * nN + c) = v;
        }
    }
  }
  Mat W = left_kernel(C);

  Span canon(M->A->field.p, M->dim * nN);
  std::vector<Mat> raw;
  for (std::size_t w = 0; w < W.rows; ++w) {
    Mat G(M->A->field.p, s * d, nN);
    for (std::size_t i = 0; i < s; ++i) {
      Vec wi(W.row_ptr(w) + i * nN, W.row_ptr(w) + (i + 1) * nN);
      for (std::size_t j = 0; j < d; ++j) G.set_row(i * d + j, vec_mat(wi, N->action[j]));
    }
    Mat F = mat_mul(P.lam, G);
    canon.add(flatten(F));
  }
  for (const auto& row : canon.rows) H.basis.push_back(unflatten(M->A->field.p, M->dim, nN, row));
  return H;
}

// ---------------------------------------------------------------------------
// projective cover, stripping, isomorphism
// ---------------------------------------------------------------------------

struct CoverData {
  ModulePtr cover;  // A^g
  Mat epi;          // (g*d) x n
  Mat gens;         // g x n, images of the block units
};

inline CoverData projective_cover(const ModulePtr& m) {
  CoverData cd;
  const auto& A = *m->A;
  Mat gens = top_generators(*m);
  const std::size_t g = gens.rows, d = A.dim;
  cd.cover = free_module(m->A, g);
  cd.gens = gens;
  cd.epi = Mat(A.field.p, g * d, m->dim);
  for (std::size_t i = 0; i < g; ++i) {
    Vec u = gens.row(i);
    for (std::size_t j = 0; j < d; ++j) cd.epi.set_row(i * d + j, vec_mat(u, m->action[j]));
  }
  if (rank(cd.epi) != m->dim) throw Error("InvalidModule", "cover epi not surjective");
  return cd;
}

struct Stripped {
  ModulePtr core;
  std::size_t count = 0;  // free summands removed
  Mat incl;               // core -> original
  Mat proj;               // original -> core
};

// M ~ core + A^t with the core certified projective-free: the pairing
// beta(u, f) = unit-coefficient of f(u), f in Hom(M, A), vanishes on it.
inline Stripped strip_projectives(const ModulePtr& m) {
  Stripped st;
  st.core = m;
  st.incl = mat_identity(m->A->field.p, m->dim);
  st.proj = mat_identity(m->A->field.p, m->dim);
  const std::size_t d = m->A->dim;
  auto reg = regular_module(m->A);
  for (;;) {
    if (st.core->dim == 0) return st;
    HomSpace H = hom_space(st.core, reg);
    const Mat* found = nullptr;
    std::size_t urow = 0;
    for (const auto& F : H.basis) {
      for (std::size_t u = 0; u < F.rows; ++u)
        if (F.at(u, 0) != 0) { found = &F; urow = u; break; }
      if (found) break;
    }
    if (!found) return st;
    const Module& core = *st.core;
    Mat G(core.A->field.p, d, core.dim);
    for (std::size_t j = 0; j < d; ++j) G.set_row(j, core.action[j].row(urow));
    Mat GF = mat_mul(G, *found);
    auto GFi = inverse(GF);
    if (!GFi) throw Error("InvalidModule", "internal: split pairing degenerate");
    Mat e = mat_mul(mat_mul(*found, *GFi), G);  // idempotent with image = u*A
    Ech ek = rref(left_kernel(e));
    Mat K = ek.r;
    Mat Ie = mat_sub(mat_identity(core.A->field.p, core.dim), e);
    Mat proj_step = select_cols(Ie, ek.pivots);
    auto [sub, incl_step] = submodule(core, K);
    st.incl = mat_mul(incl_step, st.incl);
    st.proj = mat_mul(st.proj, proj_step);
    st.core = sub;
    st.count += 1;
  }
}

enum class Tri { Yes, No, Unknown };

struct IsoResult {
  Tri verdict = Tri::Unknown;
  std::optional<Mat> witness;
  std::string certificate;
};

inline std::vector<std::size_t> jordan_type_of(const Module& m, std::size_t g) {
  return jordan_chains(m.action[g]).block_sizes;
}

struct IsoOptions {
  uint64_t seed = 0;
  std::size_t random_cap = 2000;
  uint64_t exhaustive_bound = 4096;
};

inline IsoResult is_isomorphic(const ModulePtr& M, const ModulePtr& N, IsoOptions opt = {}) {
  if (!same_algebra(*M->A, *N->A)) throw Error("AlgebraMismatch", "iso test across algebras");
  IsoResult res;
  if (M->dim != N->dim) {
    res.verdict = Tri::No;
    res.certificate = "dimension " + std::to_string(M->dim) + " != " + std::to_string(N->dim);
    return res;
  }
  if (M->dim == 0) {
    res.verdict = Tri::Yes;
    res.witness = Mat(M->A->field.p, 0, 0);
    res.certificate = "zero";
    return res;
  }
  if (M->action == N->action) {
    res.verdict = Tri::Yes;
    res.witness = mat_identity(M->A->field.p, M->dim);
    res.certificate = "identical";
    return res;
  }
  if (top_dim(*M) != top_dim(*N)) {
    res.verdict = Tri::No;
    res.certificate = "top dimension mismatch";
    return res;
  }
  if (socle(*M).rows != socle(*N).rows) {
    res.verdict = Tri::No;
    res.certificate = "socle dimension mismatch";
    return res;
  }
  for (auto g : M->A->generators) {
    if (jordan_type_of(*M, g) != jordan_type_of(*N, g)) {
      res.verdict = Tri::No;
      res.certificate = "restriction Jordan type mismatch at generator " + M->A->basis_names[g];
      return res;
    }
  }
  HomSpace H = hom_space(M, N);
  const std::size_t h = H.dim();
  if (h == 0) {
    res.verdict = Tri::No;
    res.certificate = "Hom(M,N) = 0";
    return res;
  }
  auto try_mat = [&](const Mat& f) -> bool { return is_invertible(f); };
  for (const auto& f : H.basis)
    if (try_mat(f)) {
      res.verdict = Tri::Yes;
      res.witness = f;
      res.certificate = "basis witness";
      return res;
    }
  const uint32_t p = M->A->field.p;
  // full enumeration when the space is small enough: a negative is certified
  double total = 1;
  for (std::size_t i = 0; i < h && total <= (double)opt.exhaustive_bound; ++i) total *= p;
  if (total <= (double)opt.exhaustive_bound) {
    Vec coef(h, 0);
    for (;;) {
      std::size_t pos = 0;
      while (pos < h && coef[pos] + 1 == p) coef[pos++] = 0;
      if (pos == h) break;
      coef[pos] += 1;
      Mat f(p, M->dim, N->dim);
      for (std::size_t i = 0; i < h; ++i)
        if (coef[i]) f = mat_add(f, mat_scale(H.basis[i], coef[i]));
      if (try_mat(f)) {
        res.verdict = Tri::Yes;
        res.witness = f;
        res.certificate = "enumerated witness";
        return res;
      }
    }
    res.verdict = Tri::No;
    res.certificate = "exhausted Hom space (p^" + std::to_string(h) + " combinations)";
    return res;
  }
  std::mt19937_64 rng(opt.seed ^ 0x9e3779b97f4a7c15ull);
  for (std::size_t t = 0; t < opt.random_cap; ++t) {
    Mat f(p, M->dim, N->dim);
    bool nz = false;
    for (std::size_t i = 0; i < h; ++i) {
      uint32_t c = (uint32_t)(rng() % p);
      if (!c) continue;
      nz = true;
      f = mat_add(f, mat_scale(H.basis[i], c));
    }
    if (nz && try_mat(f)) {
      res.verdict = Tri::Yes;
      res.witness = f;
      res.certificate = "random witness";
      return res;
    }
  }
  res.verdict = Tri::Unknown;
  res.certificate = "search inconclusive";
  return res;
}

}  // namespace stw
