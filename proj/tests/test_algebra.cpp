#include <catch_amalgamated.hpp>

#include "stw/algebra.hpp"
#include "stw/catalog.hpp"

using namespace stw;

TEST_CASE("dihedral q=2 p=2 validates with d=8") {
  auto cat = dihedral_algebra(2, 2);
  REQUIRE(cat.A->dim == 8);
  REQUIRE(cat.A->basis_names[0] == "1");
  REQUIRE_FALSE(cat.A->semisimple);
  REQUIRE(cat.A->loewy_length >= 3);
  // socle monomial (xy)^2 = (yx)^2
  Vec x = cat.A->named_elements.at("x"), y = cat.A->named_elements.at("y");
  Vec xy = cat.A->elem_mul(x, y);
  Vec s1 = cat.A->elem_mul(xy, xy);
  Vec yx = cat.A->elem_mul(y, x);
  Vec s2 = cat.A->elem_mul(yx, yx);
  REQUIRE(s1 == s2);
  REQUIRE_FALSE(std::all_of(s1.begin(), s1.end(), [](uint32_t c) { return c == 0; }));
  // x^2 = 0
  REQUIRE(cat.A->elem_mul(x, x) == cat.A->zero_elem());
}

TEST_CASE("the field itself validates with a semisimple flag") {
  RawAlgebra raw;
  raw.p = 5;
  raw.dim = 1;
  raw.basis_names = {"1"};
  raw.table = {{Vec{1}}};
  auto A = validate_algebra(raw);
  REQUIRE(A->semisimple);
  auto sf = find_symmetric_form(*A);
  REQUIRE(sf.has_value());
  REQUIRE(sf->lambda == Vec{1});
}

TEST_CASE("broken associativity is rejected with a witness") {
  auto cat = dihedral_algebra(2, 2);
  RawAlgebra raw;
  raw.p = 2;
  raw.dim = cat.A->dim;
  raw.basis_names = cat.A->basis_names;
  raw.generators = cat.A->generators;
  raw.table = cat.A->table;
  // alter one constant (x*y gains a yx term) so (x*y)*y != x*(y*y)
  std::size_t xi = 1, yi = 2, yxi = 4;
  raw.table[xi][yi][yxi] ^= 1;
  try {
    validate_algebra(raw);
    FAIL("expected NotAssociative");
  } catch (const Error& e) {
    REQUIRE(e.code() == "NotAssociative");
    REQUIRE(std::string(e.what()).find("witness") != std::string::npos);
  }
}

TEST_CASE("unit and locality violations are rejected") {
  RawAlgebra raw;
  raw.p = 2;
  raw.dim = 2;
  raw.basis_names = {"1", "r"};
  raw.generators = {1};
  raw.table.assign(2, std::vector<Vec>(2, Vec(2, 0)));
  raw.table[0][0] = {1, 0};
  raw.table[0][1] = {0, 1};
  raw.table[1][0] = {0, 1};
  raw.table[1][1] = {1, 0};  // r^2 = 1: radical span is not an ideal
  REQUIRE_THROWS_WITH(validate_algebra(raw), Catch::Matchers::ContainsSubstring("NotLocal"));
  raw.table[1][1] = {0, 1};  // r^2 = r: idempotent, not nilpotent
  REQUIRE_THROWS_WITH(validate_algebra(raw), Catch::Matchers::ContainsSubstring("NotLocal"));
  raw.table[1][1] = {0, 0};  // r^2 = 0: fine (k[r]/(r^2))
  REQUIRE_NOTHROW(validate_algebra(raw));
  raw.table[0][1] = {1, 0};  // broken unit row
  REQUIRE_THROWS_WITH(validate_algebra(raw), Catch::Matchers::ContainsSubstring("NoUnit"));
}

TEST_CASE("symmetric forms on the catalog") {
  for (uint32_t p : {2u, 3u, 5u}) {
    auto klein = klein_commutative_algebra(p);
    auto sf = find_symmetric_form(*klein.A);
    REQUIRE(sf.has_value());
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        const Vec& ab = klein.A->table[i][j];
        const Vec& ba = klein.A->table[j][i];
        uint64_t va = 0, vb = 0;
        for (std::size_t k = 0; k < 4; ++k) {
          va += (uint64_t)ab[k] * sf->lambda[k];
          vb += (uint64_t)ba[k] * sf->lambda[k];
        }
        REQUIRE(va % p == vb % p);
      }
  }
  auto dih = dihedral_algebra(2, 2);
  auto sf = find_symmetric_form(*dih.A);
  REQUIRE(sf.has_value());
  Field f(2);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) {
      uint32_t va = 0, vb = 0;
      for (std::size_t k = 0; k < 8; ++k) {
        va = f.add(va, f.mul(dih.A->table[i][j][k], sf->lambda[k]));
        vb = f.add(vb, f.mul(dih.A->table[j][i][k], sf->lambda[k]));
      }
      REQUIRE(va == vb);
    }
}

TEST_CASE("opposite algebra") {
  auto klein = klein_commutative_algebra(3);
  auto op = opposite(klein.A);
  REQUIRE(op->table == klein.A->table);  // commutative

  auto dih = dihedral_algebra(2, 2);
  auto dop = opposite(dih.A);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) REQUIRE(dop->table[i][j] == dih.A->table[j][i]);
  auto dopop = opposite(dop);
  REQUIRE(dopop.get() == dih.A.get());  // involution returns the original object
}

TEST_CASE("analyze_subalgebra: dihedral x has m=2, r=4") {
  auto cat = dihedral_algebra(2, 2);
  auto sd = analyze_subalgebra(*cat.A, cat.A->named_elements.at("x"));
  REQUIRE(sd.m == 2);
  REQUIRE(sd.r == 4);
  REQUIRE(sd.left_free.rows == 4);
  REQUIRE(sd.right_free.rows == 4);
  // recorded expansions reproduce a_j * b exactly
  for (std::size_t b = 0; b < 8; ++b)
    for (std::size_t j = 0; j < 4; ++j) {
      Vec expect = vec_mat(sd.left_free.row(j), cat.A->right_mult[b]);
      Vec got(8, 0);
      Field f(2);
      for (std::size_t l = 0; l < 4; ++l)
        for (std::size_t i = 0; i < 2; ++i) {
          uint32_t c = sd.coeff[b][j * 4 + l][i];
          if (!c) continue;
          Vec chain = sd.chain_basis.row(l * 2 + i);
          for (std::size_t k = 0; k < 8; ++k) got[k] = f.add(got[k], f.mul(c, chain[k]));
        }
      REQUIRE(got == expect);
    }
  // m matches the minimal power with x^m = 0 computed independently
  Vec x = cat.A->named_elements.at("x");
  REQUIRE(cat.A->elem_mul(x, x) == cat.A->zero_elem());
}

TEST_CASE("analyze_subalgebra: socle element fails freeness") {
  auto cat = dihedral_algebra(2, 2);
  Vec x = cat.A->named_elements.at("x"), y = cat.A->named_elements.at("y");
  Vec s = cat.A->elem_mul(cat.A->elem_mul(x, y), cat.A->elem_mul(x, y));
  try {
    analyze_subalgebra(*cat.A, s);
    FAIL("expected FreenessFailed");
  } catch (const Error& e) {
    REQUIRE(e.code() == "FreenessFailed");
  }
}

TEST_CASE("analyze_subalgebra rejects non-radical and zero elements") {
  auto cat = klein_commutative_algebra(2);
  REQUIRE_THROWS_AS(analyze_subalgebra(*cat.A, cat.A->unit_elem()), Error);
  REQUIRE_THROWS_AS(analyze_subalgebra(*cat.A, cat.A->zero_elem()), Error);
}

TEST_CASE("extraspecial p=3: construction and subalgebra ranks") {
  auto cat = extraspecial_group_algebra(3);
  REQUIRE(cat.A->dim == 27);
  // y = 1-z commutes with every x_i
  Vec y = cat.A->named_elements.at("y");
  for (int i = 1; i <= 4; ++i) {
    Vec xi = cat.A->named_elements.at("x" + std::to_string(i));
    REQUIRE(cat.A->elem_mul(xi, y) == cat.A->elem_mul(y, xi));
  }
  // 1-h generates a subalgebra with m=3, r=9 (ranks 27, 18, 9, 0)
  auto sd = analyze_subalgebra(*cat.A, cat.A->named_elements.at("x3"));  // x_p = 1 - g^3 h = 1 - h
  REQUIRE(sd.m == 3);
  REQUIRE(sd.r == 9);
  Mat lx = cat.A->left_mult_by(sd.x);
  Mat pw = mat_identity(3, 27);
  std::vector<std::size_t> ranks;
  for (int i = 0; i <= 3; ++i) {
    ranks.push_back(rank(pw));
    pw = mat_mul(pw, lx);
  }
  REQUIRE(ranks == std::vector<std::size_t>{27, 18, 9, 0});
  auto sf = find_symmetric_form(*cat.A);
  REQUIRE(sf.has_value());
}

TEST_CASE("extraspecial p=2 is rejected") {
  REQUIRE_THROWS_AS(extraspecial_group_algebra(2), Error);
}

TEST_CASE("dihedral q=1 is rejected") {
  REQUIRE_THROWS_AS(dihedral_algebra(1, 2), Error);
}

TEST_CASE("semidihedral family") {
  auto c1 = semidihedral_algebra(2, 1, 2);
  REQUIRE(c1.A->dim == 8);
  auto c2 = semidihedral_algebra(2, 0, 3);
  REQUIRE(c2.A->dim == 8);
  for (auto* c : {&c1, &c2}) {
    // y^4 reduces to 0 via the rules
    Vec y = c->A->named_elements.at("y");
    Vec y2 = c->A->elem_mul(y, y);
    Vec y4 = c->A->elem_mul(y2, y2);
    REQUIRE(y4 == c->A->zero_elem());
    // y^2 = (xy)^{q-1}x + delta (yx)^q
    Vec x = c->A->named_elements.at("x");
    Vec xyx = c->A->elem_mul(c->A->elem_mul(x, y), x);
    Vec yx = c->A->elem_mul(y, x);
    Vec s = c->A->elem_mul(yx, yx);
    Field f(c->A->field.p);
    uint32_t delta = (c == &c1) ? 1u : 0u;
    Vec expect(8, 0);
    for (std::size_t k = 0; k < 8; ++k) expect[k] = f.add(xyx[k], f.mul(delta, s[k]));
    REQUIRE(y2 == expect);
  }
  REQUIRE(semidihedral_algebra(3, 1, 2).A->dim == 12);
  REQUIRE(semidihedral_algebra(3, 0, 3).A->dim == 12);
  // q = 4, p = 2, delta = 1 is a group algebra (order 16); also constructible
  REQUIRE(semidihedral_algebra(4, 1, 2).A->dim == 16);
  REQUIRE_THROWS_AS(semidihedral_algebra(1, 1, 2), Error);
}

TEST_CASE("dihedral q=3 p=3 validates") {
  auto cat = dihedral_algebra(3, 3);
  REQUIRE(cat.A->dim == 12);
  auto sd = analyze_subalgebra(*cat.A, cat.A->named_elements.at("x"));
  REQUIRE(sd.m == 2);
  REQUIRE(sd.r == 6);
}

TEST_CASE("loewy length certificate") {
  for (auto cat : {dihedral_algebra(2, 2), klein_commutative_algebra(3)}) {
    REQUIRE(cat.A->loewy_length <= cat.A->dim);
    Span rad(cat.A->field.p, cat.A->dim);
    for (std::size_t i = 1; i < cat.A->dim; ++i) rad.add(cat.A->elem(i));
    Span cur = rad;
    for (std::size_t t = 1; t < cat.A->loewy_length; ++t) {
      Span next(cat.A->field.p, cat.A->dim);
      for (const auto& v : cur.rows)
        for (std::size_t j = 1; j < cat.A->dim; ++j) next.add(vec_mat(v, cat.A->right_mult[j]));
      cur = std::move(next);
    }
    REQUIRE(cur.dim() == 0);
  }
}
