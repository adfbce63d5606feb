#pragma once

#include <array>
#include <cctype>
#include <map>
#include <string>
#include <vector>

#include "stw/module.hpp"

namespace stw {

struct CatalogAlgebra {
  AlgebraPtr A;
  std::string name;
};

namespace detail {

// alternating monomial basis shared by the dihedral and semidihedral families:
// unit, both words of each length 1..2q-1, and the single socle class of
// length 2q.  Index 0 is the unit.
struct BiserialBasis {
  std::size_t q;
  std::vector<std::string> words;            // words[i] = normal form of basis element i
  std::map<std::string, std::size_t> index;  // includes both length-2q words -> socle

  explicit BiserialBasis(std::size_t q_) : q(q_) {
    words.push_back("");
    auto alt = [](char first, std::size_t len) {
      std::string w;
      for (std::size_t i = 0; i < len; ++i) w += (i % 2 == 0) ? first : (first == 'x' ? 'y' : 'x');
      return w;
    };
    for (std::size_t len = 1; len < 2 * q; ++len) {
      words.push_back(alt('x', len));
      words.push_back(alt('y', len));
    }
    words.push_back(alt('x', 2 * q));  // socle representative (xy)^q
    for (std::size_t i = 0; i < words.size(); ++i) index[words[i]] = i;
    index[alt('y', 2 * q)] = words.size() - 1;  // (yx)^q is the same class
  }
  std::size_t dim() const { return words.size(); }
  std::size_t socle_index() const { return words.size() - 1; }
};

inline bool alternating(const std::string& w) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i] == w[i + 1]) return false;
  return true;
}

// semidihedral normal form: rewrite xx -> 0, yy -> (xy)^{q-1}x + delta*(yx)^q,
// kill words longer than 2q, identify the two length-2q words.  Iterated to a
// fixed point with a hard step cap.
struct Rewriter {
  const BiserialBasis& basis;
  uint32_t delta;
  Field f;
  std::size_t steps = 0, cap;
  std::map<std::string, Vec> memo;

  Rewriter(const BiserialBasis& b, uint32_t d, Field fld)
      : basis(b), delta(d % fld.p), f(fld), cap(64 * b.q + 64) {}

  Vec reduce(const std::string& w) {
    auto it = memo.find(w);
    if (it != memo.end()) return it->second;
    Vec out(basis.dim(), 0);
    std::size_t bad = w.size();
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      if (w[i] == w[i + 1]) { bad = i; break; }
    if (bad == w.size()) {
      if (w.size() < 2 * basis.q) {
        out[basis.index.at(w)] = 1;
      } else if (w.size() == 2 * basis.q) {
        out[basis.socle_index()] = 1;
      }
      // longer alternating words are zero
    } else if (w[bad] == 'x') {
      // x^2 = 0
    } else {
      if (++steps > cap) throw Error("RewriteDiverged", "rewrite cap exceeded");
      std::string head = w.substr(0, bad), tail = w.substr(bad + 2);
      std::string sub1;
      for (std::size_t i = 0; i + 1 < 2 * basis.q; ++i) sub1 += (i % 2 == 0) ? 'x' : 'y';
      Vec a = reduce(head + sub1 + tail);
      for (std::size_t k = 0; k < out.size(); ++k) out[k] = f.add(out[k], a[k]);
      if (delta) {
        std::string sub2;
        for (std::size_t i = 0; i < 2 * basis.q; ++i) sub2 += (i % 2 == 0) ? 'y' : 'x';
        Vec b = reduce(head + sub2 + tail);
        for (std::size_t k = 0; k < out.size(); ++k) out[k] = f.add(out[k], f.mul(delta, b[k]));
      }
    }
    memo[w] = out;
    return out;
  }
};

}  // namespace detail

// A = k<x,y> / (x^2, y^2, (xy)^q - (yx)^q), dimension 4q.
inline CatalogAlgebra dihedral_algebra(std::size_t q, uint32_t p) {
  if (q < 2) throw Error("BadParameter", "dihedral family needs q >= 2");
  detail::BiserialBasis B(q);
  RawAlgebra raw;
  raw.p = p;
  raw.dim = B.dim();
  for (auto& w : B.words) raw.basis_names.push_back(w.empty() ? "1" : w);
  raw.generators = {B.index.at("x"), B.index.at("y")};
  raw.table.assign(raw.dim, std::vector<Vec>(raw.dim, Vec(raw.dim, 0)));
  for (std::size_t i = 0; i < raw.dim; ++i)
    for (std::size_t j = 0; j < raw.dim; ++j) {
      const std::string &u = B.words[i], &v = B.words[j];
      if (u.empty()) { raw.table[i][j][j] = 1; continue; }
      if (v.empty()) { raw.table[i][j][i] = 1; continue; }
      if (u.back() == v.front()) continue;               // xx or yy factor
      std::string w = u + v;
      if (w.size() > 2 * q) continue;                    // beyond the socle
      raw.table[i][j][w.size() == 2 * q ? B.socle_index() : B.index.at(w)] = 1;
    }
  auto A = validate_algebra(raw);
  const_cast<Algebra&>(*A).named_elements = {{"x", A->elem(B.index.at("x"))},
                                             {"y", A->elem(B.index.at("y"))}};
  return {A, "dihedral:q=" + std::to_string(q) + ":p=" + std::to_string(p)};
}

// A = k<x,y> / (x^2, y^4, y^2 - (xy)^{q-1}x - delta*(yx)^q, (xy)^q - (yx)^q).
inline CatalogAlgebra semidihedral_algebra(std::size_t q, uint32_t delta, uint32_t p) {
  if (q < 2) throw Error("BadParameter", "semidihedral family needs q >= 2");
  detail::BiserialBasis B(q);
  Field f(p);
  detail::Rewriter rw(B, delta, f);
  RawAlgebra raw;
  raw.p = p;
  raw.dim = B.dim();
  for (auto& w : B.words) raw.basis_names.push_back(w.empty() ? "1" : w);
  raw.generators = {B.index.at("x"), B.index.at("y")};
  raw.table.assign(raw.dim, std::vector<Vec>(raw.dim, Vec(raw.dim, 0)));
  for (std::size_t i = 0; i < raw.dim; ++i)
    for (std::size_t j = 0; j < raw.dim; ++j) raw.table[i][j] = rw.reduce(B.words[i] + B.words[j]);
  auto A = validate_algebra(raw);  // associativity failure here would be a rewriting bug
  const_cast<Algebra&>(*A).named_elements = {{"x", A->elem(B.index.at("x"))},
                                             {"y", A->elem(B.index.at("y"))}};
  return {A, "semidihedral:q=" + std::to_string(q) + ":p=" + std::to_string(p) +
                 ":delta=" + std::to_string(delta % p)};
}

// k[x,y]/(x^2, y^2): basis 1, x, y, xy.
inline CatalogAlgebra klein_commutative_algebra(uint32_t p) {
  RawAlgebra raw;
  raw.p = p;
  raw.dim = 4;
  raw.basis_names = {"1", "x", "y", "xy"};
  raw.generators = {1, 2};
  raw.table.assign(4, std::vector<Vec>(4, Vec(4, 0)));
  auto set = [&](std::size_t i, std::size_t j, std::size_t k) { raw.table[i][j][k] = 1; };
  for (std::size_t j = 0; j < 4; ++j) { set(0, j, j); if (j) set(j, 0, j); }
  set(1, 2, 3);
  set(2, 1, 3);
  // x*x = y*y = x*xy = xy*x = y*xy = xy*y = xy*xy = 0
  auto A = validate_algebra(raw);
  const_cast<Algebra&>(*A).named_elements = {{"x", A->elem(1)}, {"y", A->elem(2)}};
  return {A, "klein:p=" + std::to_string(p)};
}

namespace detail {

// Heisenberg presentation of the extraspecial group of order p^3, exponent p:
// triples over Z/p with (a,b,c)(a',b',c') = (a+a', b+b', c+c'+b*a').
struct ExtraspecialGroup {
  uint32_t p;
  explicit ExtraspecialGroup(uint32_t p_) : p(p_) {}
  using El = std::array<uint32_t, 3>;

  El e() const { return {0, 0, 0}; }
  El mul(El u, El v) const {
    return {(u[0] + v[0]) % p, (u[1] + v[1]) % p, (u[2] + v[2] + u[1] * v[0]) % p};
  }
  El inv(El u) const {
    // solve u*v = e
    uint32_t a = (p - u[0]) % p, b = (p - u[1]) % p;
    uint32_t c = (p - (u[2] + u[1] * a) % p) % p;
    return {a, b, c};
  }
  std::size_t code(El u) const { return (std::size_t)u[0] * p * p + u[1] * p + u[2]; }
  El decode(std::size_t i) const {
    return {(uint32_t)(i / (p * p)), (uint32_t)(i / p % p), (uint32_t)(i % p)};
  }

  // exhaustive certification of the presentation before it is used
  void certify() const {
    const std::size_t n = (std::size_t)p * p * p;
    for (std::size_t i = 0; i < n; ++i) {
      El u = decode(i);
      if (code(mul(u, e())) != i || code(mul(e(), u)) != i)
        throw Error("BadParameter", "extraspecial: identity axiom failed");
      if (code(mul(u, inv(u))) != 0 || code(mul(inv(u), u)) != 0)
        throw Error("BadParameter", "extraspecial: inverse axiom failed");
      // exponent p
      El pw = e();
      for (uint32_t t = 0; t < p; ++t) pw = mul(pw, u);
      if (code(pw) != 0) throw Error("BadParameter", "extraspecial: exponent is not p");
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          El u = decode(i), v = decode(j), w = decode(k);
          if (code(mul(mul(u, v), w)) != code(mul(u, mul(v, w))))
            throw Error("BadParameter", "extraspecial: associativity failed");
        }
    // center is exactly <z>
    std::size_t central = 0;
    for (std::size_t i = 0; i < n; ++i) {
      El u = decode(i);
      bool cent = true;
      for (std::size_t j = 0; j < n && cent; ++j) {
        El v = decode(j);
        cent = code(mul(u, v)) == code(mul(v, u));
      }
      if (cent) {
        ++central;
        if (u[0] != 0 || u[1] != 0) throw Error("BadParameter", "extraspecial: center too big");
      }
    }
    if (central != p) throw Error("BadParameter", "extraspecial: center has wrong order");
    // z spans the commutator: g h z = h g
    El g{1, 0, 0}, h{0, 1, 0}, z{0, 0, 1};
    if (code(mul(mul(g, h), z)) != code(mul(h, g)))
      throw Error("BadParameter", "extraspecial: [g,h] is not z");
  }
};

}  // namespace detail

// Group algebra kG for the extraspecial group of order p^3 and exponent p,
// in the basis {1} and {u - 1 : u != 1} so the radical is spanned by the
// non-unit basis elements.  Distinguished elements: x_i = 1 - g^i h for
// i = 1..p, x_{p+1} = 1 - g, y = 1 - z.
inline CatalogAlgebra extraspecial_group_algebra(uint32_t p) {
  if (p == 2 || !Field::is_prime(p)) throw Error("BadParameter", "extraspecial family needs an odd prime");
  detail::ExtraspecialGroup G(p);
  G.certify();
  const std::size_t n = (std::size_t)p * p * p;
  RawAlgebra raw;
  raw.p = p;
  raw.dim = n;
  raw.basis_names.resize(n);
  raw.basis_names[0] = "1";
  for (std::size_t i = 1; i < n; ++i) {
    auto u = G.decode(i);
    raw.basis_names[i] = "g" + std::to_string(u[0]) + "h" + std::to_string(u[1]) + "z" +
                         std::to_string(u[2]) + "-1";
  }
  raw.generators = {G.code({1, 0, 0}), G.code({0, 1, 0})};
  raw.table.assign(n, std::vector<Vec>(n, Vec(n, 0)));
  Field f(p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec& t = raw.table[i][j];
      if (i == 0) { t[j] = 1; continue; }
      if (j == 0) { t[i] = 1; continue; }
      // (u-1)(v-1) = (uv-1) - (u-1) - (v-1)
      std::size_t ij = G.code(G.mul(G.decode(i), G.decode(j)));
      if (ij != 0) t[ij] = f.add(t[ij], 1);
      t[i] = f.sub(t[i], 1);
      t[j] = f.sub(t[j], 1);
    }
  auto A = validate_algebra(raw);
  std::map<std::string, Vec> named;
  auto minus_one_of = [&](detail::ExtraspecialGroup::El u) {
    Vec v(n, 0);
    v[G.code(u)] = p - 1;  // 1 - u = -(u - 1)
    return v;
  };
  for (uint32_t i = 1; i <= p; ++i)
    named["x" + std::to_string(i)] = minus_one_of({i % p, 1, 0});  // 1 - g^i h
  named["x" + std::to_string(p + 1)] = minus_one_of({1, 0, 0});    // 1 - g
  named["y"] = minus_one_of({0, 0, 1});                            // 1 - z
  const_cast<Algebra&>(*A).named_elements = std::move(named);
  return {A, "extraspecial:p=" + std::to_string(p)};
}

// ---------------------------------------------------------------------------
// string modules for the dihedral / semidihedral families
// ---------------------------------------------------------------------------

// Letters: 'x', 'y' direct, 'X', 'Y' inverse.  Direct letters act from the
// higher to the lower basis index; inverse letters the other way.
struct StringWord {
  std::string letters;
};

// word x(xy)^{1-q}y^{-1} and its powers, the tau-images of the simple module
inline StringWord tau_word(std::size_t q, std::size_t power = 1) {
  std::string w;
  for (std::size_t t = 0; t < power; ++t) {
    w += 'x';
    for (std::size_t i = 0; i + 1 < q; ++i) w += "YX";
    w += 'Y';
  }
  return {w};
}

inline ModulePtr from_generator_actions(const AlgebraPtr& A, const std::map<std::size_t, Mat>& gen_acts,
                                        std::size_t dim) {
  const auto& md = A->monomials();
  std::vector<Mat> prods(md.words.size());
  prods[0] = mat_identity(A->field.p, dim);
  for (std::size_t i = 1; i < md.words.size(); ++i)
    prods[i] = mat_mul(prods[md.parent[i]], gen_acts.at(md.words[i].back()));
  std::vector<Mat> act;
  for (std::size_t b = 0; b < A->dim; ++b) {
    auto c = md.express->solve(A->elem(b));
    if (!c) throw Error("InvalidModule", "basis element not expressible in generator monomials");
    Mat m(A->field.p, dim, dim);
    for (std::size_t w = 0; w < prods.size(); ++w)
      if ((*c)[w]) m = mat_add(m, mat_scale(prods[w], (*c)[w]));
    act.push_back(std::move(m));
  }
  return make_module(A, std::move(act), Check::Auto);
}

inline ModulePtr string_module(const AlgebraPtr& A, const StringWord& word) {
  auto xg = A->named_elements.find("x");
  auto yg = A->named_elements.find("y");
  if (xg == A->named_elements.end() || yg == A->named_elements.end())
    throw Error("InvalidWord", "string modules need an algebra with named arrows x, y");
  std::size_t xi = 0, yi = 0;
  for (std::size_t i = 0; i < A->dim; ++i) {
    if (xg->second[i]) xi = i;
    if (yg->second[i]) yi = i;
  }
  const std::string& w = word.letters;
  for (char c : w)
    if (c != 'x' && c != 'y' && c != 'X' && c != 'Y')
      throw Error("InvalidWord", std::string("unknown letter '") + c + "'");
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    char a = (char)std::tolower(w[i]), b = (char)std::tolower(w[i + 1]);
    if (a == b)
      throw Error("InvalidWord", "consecutive letters on the same arrow at position " + std::to_string(i));
  }
  const std::size_t n = w.size() + 1;
  Mat ax(A->field.p, n, n), ay(A->field.p, n, n);
  for (std::size_t i = 1; i <= w.size(); ++i) {
    char c = w[i - 1];
    Mat& m = (std::tolower(c) == 'x') ? ax : ay;
    if (std::islower(c))
      m.at(i, i - 1) = 1;  // direct: v_i -> v_{i-1}
    else
      m.at(i - 1, i) = 1;  // inverse: v_{i-1} -> v_i
  }
  return from_generator_actions(A, {{xi, ax}, {yi, ay}}, n);
}

}  // namespace stw
