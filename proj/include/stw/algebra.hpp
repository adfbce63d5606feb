#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "stw/jordan.hpp"
#include "stw/mat.hpp"

namespace stw {

struct Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

// Raw structure-constant table, the input of validate_algebra.
// table[i][j] = coordinate vector of b_i * b_j.
struct RawAlgebra {
  uint32_t p = 2;
  std::size_t dim = 0;
  std::vector<std::string> basis_names;
  std::vector<std::size_t> generators;
  std::vector<std::vector<Vec>> table;
};

// A finite-dimensional elementary local algebra over GF(p), certified by
// validate_algebra: b_0 is a two-sided unit, the table is associative, and
// span(b_1..b_{d-1}) is a nilpotent two-sided ideal (the radical).
struct Algebra {
  Field field;
  std::size_t dim;
  std::vector<std::string> basis_names;
  std::vector<std::size_t> generators;       // basis indices generating A as an algebra
  std::vector<std::vector<Vec>> table;
  std::vector<Mat> right_mult;               // rho(b_i): v -> v*b_i on the regular module
  std::vector<Mat> left_mult;                // lambda(b_i): v -> b_i*v
  std::size_t loewy_length = 1;
  bool semisimple = false;
  std::map<std::string, Vec> named_elements; // catalog-supplied distinguished elements

  explicit Algebra(Field f) : field(f), dim(0) {}

  Vec elem(std::size_t i) const {
    Vec v(dim, 0);
    v[i] = 1;
    return v;
  }
  Vec zero_elem() const { return Vec(dim, 0); }
  Vec unit_elem() const { return elem(0); }

  Vec elem_mul(const Vec& u, const Vec& v) const {
    Vec out(dim, 0);
    Field f = field;
    for (std::size_t i = 0; i < dim; ++i) {
      if (!u[i]) continue;
      for (std::size_t j = 0; j < dim; ++j) {
        if (!v[j]) continue;
        uint32_t c = f.mul(u[i], v[j]);
        const Vec& t = table[i][j];
        for (std::size_t k = 0; k < dim; ++k)
          if (t[k]) out[k] = f.add(out[k], f.mul(c, t[k]));
      }
    }
    return out;
  }

  // matrix of left multiplication by an element, acting v -> coords(u * v)
  Mat left_mult_by(const Vec& u) const {
    Mat m(field.p, dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
      if (u[i]) m = mat_add(m, mat_scale(left_mult[i], u[i]));
    return m;
  }
  Mat right_mult_by(const Vec& u) const {
    Mat m(field.p, dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
      if (u[i]) m = mat_add(m, mat_scale(right_mult[i], u[i]));
    return m;
  }

  bool is_in_radical(const Vec& u) const { return u[0] == 0; }

  // --- lazy opposite algebra ----------------------------------------------
  AlgebraPtr opposite_of(const AlgebraPtr& self) const;

  // --- monomial expressions over the generators ---------------------------
  // Used to synthesize full action sets from generator matrices.
  struct MonomialData {
    std::vector<std::vector<std::size_t>> words;  // generator-index words
    std::vector<std::size_t> parent;              // words[i] = words[parent[i]] + last letter
    Mat values;                                    // row i = word i evaluated in A
    std::shared_ptr<Solver> express;               // writes elements as combos of word values
  };
  const MonomialData& monomials() const;

private:
  mutable std::mutex cache_mutex_;
  mutable std::shared_ptr<const Algebra> op_strong_;
  mutable std::weak_ptr<const Algebra> op_weak_;
  mutable std::shared_ptr<MonomialData> monomial_cache_;

  friend AlgebraPtr validate_algebra(const RawAlgebra& raw);
};

inline bool same_algebra(const Algebra& a, const Algebra& b) {
  if (&a == &b) return true;
  return a.field.p == b.field.p && a.dim == b.dim && a.table == b.table;
}

// Certify the standing hypotheses.  Throws NoUnit / NotAssociative /
// NotLocal (each with a witness); d = 1 passes with the semisimple flag set.
inline AlgebraPtr validate_algebra(const RawAlgebra& raw) {
  Field f(raw.p);
  const std::size_t d = raw.dim;
  if (d < 1) throw Error("BadParameter", "algebra dimension must be >= 1");
  if (raw.table.size() != d) throw Error("BadParameter", "table has wrong number of rows");
  auto A = std::make_shared<Algebra>(f);
  A->dim = d;
  A->basis_names = raw.basis_names;
  if (A->basis_names.size() != d) {
    A->basis_names.resize(d);
    for (std::size_t i = 0; i < d; ++i)
      if (A->basis_names[i].empty()) A->basis_names[i] = "b" + std::to_string(i);
  }
  A->generators = raw.generators;
  A->table.assign(d, std::vector<Vec>(d, Vec(d, 0)));
  for (std::size_t i = 0; i < d; ++i) {
    if (raw.table[i].size() != d) throw Error("BadParameter", "table row has wrong length");
    for (std::size_t j = 0; j < d; ++j) {
      if (raw.table[i][j].size() != d) throw Error("BadParameter", "table entry has wrong length");
      for (std::size_t k = 0; k < d; ++k) A->table[i][j][k] = raw.table[i][j][k] % raw.p;
    }
  }

  auto name = [&](std::size_t i) { return A->basis_names[i]; };

  // unit
  for (std::size_t j = 0; j < d; ++j) {
    if (A->table[0][j] != A->elem(j) || A->table[j][0] != A->elem(j))
      throw Error("NoUnit", "basis element 0 is not a two-sided unit (fails at " + name(j) + ")");
  }

  // multiplication matrices
  A->right_mult.assign(d, Mat(f.p, d, d));
  A->left_mult.assign(d, Mat(f.p, d, d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      A->right_mult[j].set_row(i, A->table[i][j]);
      A->left_mult[i].set_row(j, A->table[i][j]);
    }

  // associativity: rho(b_j) * rho(b_k) == rho of the expansion of b_j*b_k
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k) {
      Mat lhs = mat_mul(A->right_mult[j], A->right_mult[k]);
      Mat rhs(f.p, d, d);
      const Vec& prod = A->table[j][k];
      for (std::size_t l = 0; l < d; ++l)
        if (prod[l]) rhs = mat_add(rhs, mat_scale(A->right_mult[l], prod[l]));
      if (!(lhs == rhs)) {
        std::size_t i = 0;
        for (; i < d; ++i)
          if (lhs.row(i) != rhs.row(i)) break;
        throw Error("NotAssociative", "witness (" + name(i) + ")*(" + name(j) + ")*(" + name(k) +
                                          "): (ab)c != a(bc)");
      }
    }

  // locality: span(b_1..b_{d-1}) must be a two-sided ideal...
  for (std::size_t i = 1; i < d; ++i)
    for (std::size_t j = 1; j < d; ++j)
      if (A->table[i][j][0] != 0)
        throw Error("NotLocal", "product (" + name(i) + ")*(" + name(j) +
                                    ") has a unit component; radical span is not an ideal");
  // ...and nilpotent
  {
    Span rad(f.p, d);
    for (std::size_t i = 1; i < d; ++i) rad.add(A->elem(i));
    std::size_t prev = rad.dim(), steps = 1;
    Span cur = rad;
    while (cur.dim() > 0) {
      Span next(f.p, d);
      for (const auto& v : cur.rows)
        for (std::size_t j = 1; j < d; ++j) next.add(vec_mat(v, A->right_mult[j]));
      ++steps;
      if (next.dim() >= prev && next.dim() > 0)
        throw Error("NotLocal", "radical span is not nilpotent (stabilizes at dim " +
                                    std::to_string(next.dim()) + ")");
      prev = next.dim();
      cur = std::move(next);
      if (cur.dim() == 0) break;
    }
    A->loewy_length = steps;
  }
  A->semisimple = (d == 1);

  // generators must generate: their images have to span rad/rad^2
  if (d > 1) {
    if (A->generators.empty())
      throw Error("BadParameter", "a nontrivial algebra needs a generator list");
    Span radsq(f.p, d);
    for (std::size_t i = 1; i < d; ++i)
      for (std::size_t j = 1; j < d; ++j) radsq.add(A->table[i][j]);
    Span gen_span = radsq;
    for (auto g : A->generators) {
      if (g == 0 || g >= d) throw Error("BadParameter", "generator index out of range");
      gen_span.add(A->elem(g));
    }
    if (gen_span.dim() != d - 1)
      throw Error("BadParameter", "generators do not span rad/rad^2; they cannot generate the algebra");
  }

  return A;
}

inline AlgebraPtr opposite(const AlgebraPtr& a) { return a->opposite_of(a); }

inline AlgebraPtr Algebra::opposite_of(const AlgebraPtr& self) const {
  {
    std::lock_guard<std::mutex> lk(cache_mutex_);
    if (op_strong_) return op_strong_;
    if (auto w = op_weak_.lock()) return w;
  }
  RawAlgebra raw;
  raw.p = field.p;
  raw.dim = dim;
  raw.basis_names = basis_names;
  raw.generators = generators;
  raw.table.assign(dim, std::vector<Vec>(dim));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) raw.table[i][j] = table[j][i];
  auto op = validate_algebra(raw);
  const_cast<Algebra&>(*op).named_elements = named_elements;
  {
    std::lock_guard<std::mutex> lk(cache_mutex_);
    if (!op_strong_ && !op_weak_.lock()) {
      op_strong_ = op;
      std::lock_guard<std::mutex> lk2(op->cache_mutex_);
      op->op_weak_ = self;
    }
    return op_strong_ ? op_strong_ : op;
  }
}

// Symmetric form: a functional with lambda(ab) = lambda(ba) and invertible
// Gram matrix G_ij = lambda(b_i b_j).
struct SymmetricForm {
  Vec lambda;
};

// Solve the symmetry constraints, then sweep basis functionals of the
// solution space followed by seeded pseudorandom combinations (cap 1000)
// for a nondegenerate one.  Returns nullopt when the sweep finds none
// ("not certified symmetric").
inline std::optional<SymmetricForm> find_symmetric_form(const Algebra& a, uint64_t seed = 0) {
  const std::size_t d = a.dim;
  Field f = a.field;
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      Vec r(d, 0);
      bool nz = false;
      for (std::size_t k = 0; k < d; ++k) {
        r[k] = f.sub(a.table[i][j][k], a.table[j][i][k]);
        nz |= (r[k] != 0);
      }
      if (nz) rows.push_back(std::move(r));
    }
  // lambda must kill every commutator: solutions = left kernel of the transpose
  Mat sol = rows.empty() ? mat_identity(f.p, d) : left_kernel(transpose(mat_from_rows(f.p, rows, d)));

  auto gram_ok = [&](const Vec& lam) {
    Mat g(f.p, d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        uint64_t acc = 0;
        for (std::size_t k = 0; k < d; ++k) acc += (uint64_t)a.table[i][j][k] * lam[k] % f.p;
        g.at(i, j) = (uint32_t)(acc % f.p);
      }
    return rank(g) == d;
  };

  for (std::size_t i = 0; i < sol.rows; ++i) {
    Vec lam = sol.row(i);
    if (gram_ok(lam)) return SymmetricForm{lam};
  }
  std::mt19937_64 rng(seed ^ 0x5f3759df9e3779b9ull);
  for (int t = 0; t < 1000; ++t) {
    Vec lam(d, 0);
    bool nz = false;
    for (std::size_t i = 0; i < sol.rows; ++i) {
      uint32_t c = (uint32_t)(rng() % f.p);
      if (!c) continue;
      nz = true;
      for (std::size_t k = 0; k < d; ++k) lam[k] = f.add(lam[k], f.mul(c, sol.at(i, k)));
    }
    if (nz && gram_ok(lam)) return SymmetricForm{lam};
  }
  return std::nullopt;
}

// The nilpotent subalgebra R = k[x] and the data making A a two-sided free
// R-module: free bases from the Jordan chains of L_x / R_x, and the
// expansion of a_j * b in the basis {x^i a_l} as coefficient polynomials.
struct SubalgebraData {
  Vec x;
  std::size_t m = 0;          // nilpotency index of x
  std::size_t r = 0;          // d / m
  Mat left_free;              // r x d, rows a_j with {x^i a_j} a basis
  Mat right_free;             // r x d, rows a_j with {a_j x^i} a basis
  Mat chain_basis;            // d x d, row (l*m + i) = coords of x^i * a_l
  // coeff[b][j * r + l] = poly of degree < m with a_j*b = sum_l r_lj(b)(x) * a_l
  std::vector<std::vector<Vec>> coeff;
  Mat left_x;                 // L_x on A
};

inline SubalgebraData analyze_subalgebra(const Algebra& a, const Vec& x_in) {
  const std::size_t d = a.dim;
  Field f = a.field;
  Vec x(d, 0);
  for (std::size_t i = 0; i < d && i < x_in.size(); ++i) x[i] = x_in[i] % f.p;
  bool zero = std::all_of(x.begin(), x.end(), [](uint32_t c) { return c == 0; });
  if (zero) throw Error("NotNilpotentElement", "x = 0");
  if (!a.is_in_radical(x)) throw Error("NotNilpotentElement", "x has a unit component");

  SubalgebraData sd;
  sd.x = x;
  // nilpotency index by repeated multiplication
  Vec pw = x;
  std::size_t m = 1;
  while (m <= d) {
    bool z = std::all_of(pw.begin(), pw.end(), [](uint32_t c) { return c == 0; });
    if (z) break;
    pw = a.elem_mul(pw, x);
    ++m;
  }
  if (m > d) throw Error("NotNilpotentElement", "x is not nilpotent");
  sd.m = m;
  if (d % m != 0)
    throw Error("FreenessFailed", "dim " + std::to_string(d) + " not divisible by m = " + std::to_string(m));
  sd.r = d / m;

  Mat lx = a.left_mult_by(x), rx = a.right_mult_by(x);
  sd.left_x = lx;
  auto check_side = [&](const Mat& mx, const char* side) {
    Mat p = mat_identity(f.p, d);
    for (std::size_t i = 0; i <= m; ++i) {
      std::size_t want = d * (m - i) / m;
      if (rank(p) != want)
        throw Error("FreenessFailed", std::string(side) + " rank of power " + std::to_string(i) +
                                          " is " + std::to_string(rank(p)) + ", expected " +
                                          std::to_string(want));
      p = mat_mul(p, mx);
    }
  };
  check_side(lx, "left");
  check_side(rx, "right");

  JordanReport jl = jordan_chains(lx, m);
  JordanReport jr = jordan_chains(rx, m);
  sd.left_free = jl.chain_tops;   // all blocks have size m by the rank certificate
  sd.right_free = jr.chain_tops;

  // chain basis rows: (l, i) -> x^i * a_l
  sd.chain_basis = Mat(f.p, d, d);
  for (std::size_t l = 0; l < sd.r; ++l) {
    Vec v = sd.left_free.row(l);
    for (std::size_t i = 0; i < m; ++i) {
      sd.chain_basis.set_row(l * m + i, v);
      v = vec_mat(v, lx);
    }
  }
  Solver chain_solver(sd.chain_basis);

  sd.coeff.assign(d, std::vector<Vec>(sd.r * sd.r, Vec(m, 0)));
  for (std::size_t b = 0; b < d; ++b) {
    for (std::size_t j = 0; j < sd.r; ++j) {
      Vec target = vec_mat(sd.left_free.row(j), a.right_mult[b]);
      auto c = chain_solver.solve(target);
      if (!c) throw Error("FreenessFailed", "internal: chain basis does not span");
      for (std::size_t l = 0; l < sd.r; ++l)
        for (std::size_t i = 0; i < m; ++i) sd.coeff[b][j * sd.r + l][i] = (*c)[l * m + i];
    }
  }
  return sd;
}

inline const Algebra::MonomialData& Algebra::monomials() const {
  std::lock_guard<std::mutex> lk(cache_mutex_);
  if (monomial_cache_) return *monomial_cache_;
  auto md = std::make_shared<MonomialData>();
  Span seen(field.p, dim);
  std::vector<Vec> vals;
  md->words.push_back({});
  md->parent.push_back(0);
  vals.push_back(unit_elem());
  seen.add(unit_elem());
  for (std::size_t head = 0; head < md->words.size() && seen.dim() < dim; ++head) {
    for (auto g : generators) {
      Vec v = vec_mat(vals[head], right_mult[g]);
      if (seen.add(v)) {
        auto w = md->words[head];
        w.push_back(g);
        md->words.push_back(std::move(w));
        md->parent.push_back(head);
        vals.push_back(std::move(v));
        if (seen.dim() == dim) break;
      }
    }
  }
  if (seen.dim() != dim)
    throw Error("BadParameter", "generators do not generate the algebra");
  md->values = mat_from_rows(field.p, vals, dim);
  md->express = std::make_shared<Solver>(md->values);
  monomial_cache_ = md;
  return *monomial_cache_;
}

}  // namespace stw
