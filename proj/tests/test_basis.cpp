#include "doctest.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include "nhsym/basis.hpp"
#include "quadrature.hpp"

using namespace nhsym;

TEST_CASE("box matrix element closed form") {
  const auto box = ModeFamily::box();
  CHECK(std::abs(me_1d(box, 1, 2, Observable::q(1))) == doctest::Approx(32.0 / (9 * std::numbers::pi * std::numbers::pi)).epsilon(1e-14));
  CHECK(me_1d(box, 1, 1, Observable::q(1)) == 0.0);
  CHECK(me_1d(box, 3, 3, Observable::p2()) == doctest::Approx(std::pow(1.5 * std::numbers::pi, 2)));
  CHECK_THROWS(me_1d(box, 0, 1, Observable::q(1)));
  CHECK_THROWS(me_1d(box, 1, 1, Observable::q(9)));
}

TEST_CASE("harmonic matrix elements") {
  const auto ho = ModeFamily::harmonic();
  CHECK(me_1d(ho, 0, 1, Observable::q(1)) == doctest::Approx(std::sqrt(0.5)));
  CHECK(me_1d(ho, 3, 3, Observable::p2()) == doctest::Approx(3.5));
  CHECK(me_1d(ho, 1, 3, Observable::p2()) == doctest::Approx(-std::sqrt(6.0) / 2));
  CHECK(me_1d(ho, 0, 0, Observable::q(4)) == doctest::Approx(0.75));
  // q -> q/s: <q^a> scales as s^a, <p^2> as 1/s^2.
  const auto hs = ModeFamily::harmonic(0.5);
  CHECK(me_1d(hs, 0, 0, Observable::q(4)) == doctest::Approx(0.75 / 16));
  CHECK(me_1d(hs, 2, 2, Observable::p2()) == doctest::Approx(2.5 * 4));
}

TEST_CASE("matrix elements agree with quadrature") {
  for (const auto& fam : {ModeFamily::harmonic(), ModeFamily::harmonic(0.7), ModeFamily::box(),
                          ModeFamily::anharmonic(1), ModeFamily::anharmonic(Rational(3, 2))}) {
    CAPTURE(fam.describe());
    const int first = fam.first_index();
    for (int a = 0; a <= 4; ++a)
      for (int n = first; n < first + 7; ++n)
        for (int m = first; m < first + 7; ++m) {
          const double exact = me_1d(fam, n, m, Observable::q(a));
          const double quad = test::quadrature_element(fam, n, m, a, false);
          CHECK(std::abs(exact - quad) <= 1e-11 * std::max(1.0, std::abs(quad)));
        }
    for (int n = first; n < first + 5; ++n)
      for (int m = first; m < first + 5; ++m) {
        const double exact = me_1d(fam, n, m, Observable::p2());
        const double quad = test::quadrature_element(fam, n, m, 0, true);
        CHECK(std::abs(exact - quad) <= 1e-9 * std::max(1.0, std::abs(quad)));
      }
  }
}

TEST_CASE("matrix elements agree with quadrature up to index 40") {
  for (const auto& fam : {ModeFamily::harmonic(), ModeFamily::harmonic(0.55), ModeFamily::box()}) {
    CAPTURE(fam.describe());
    const int count = 41;
    for (int a = 0; a <= 4; ++a) {
      CAPTURE(a);
      const Eigen::MatrixXd quad = test::quadrature_matrix(fam, count, a, false);
      double worst = 0;
      for (int n = 0; n < count; ++n)
        for (int m = 0; m < count; ++m) {
          const double exact = me_1d(fam, n + fam.first_index(), m + fam.first_index(), Observable::q(a));
          worst = std::max(worst, std::abs(exact - quad(n, m)) / std::max(1.0, std::abs(quad(n, m))));
        }
      CHECK(worst <= 1e-11);
    }
    const Eigen::MatrixXd quad = test::quadrature_matrix(fam, count, 0, true);
    double worst = 0;
    for (int n = 0; n < count; ++n)
      for (int m = 0; m < count; ++m) {
        const double exact = me_1d(fam, n + fam.first_index(), m + fam.first_index(), Observable::p2());
        worst = std::max(worst, std::abs(exact - quad(n, m)) / std::max(1.0, std::abs(quad(n, m))));
      }
    CHECK(worst <= 1e-11);
  }
  // The DVR oracle resolves the quartic family only for its low states.
  for (const auto& fam : {ModeFamily::anharmonic(1), ModeFamily::anharmonic(2)}) {
    CAPTURE(fam.describe());
    for (int a = 0; a <= 4; ++a) {
      const Eigen::MatrixXd quad = test::quadrature_matrix(fam, 10, a, false);
      for (int n = 0; n < 10; ++n)
        for (int m = 0; m < 10; ++m)
          CHECK(std::abs(me_1d(fam, n, m, Observable::q(a)) - quad(n, m)) <= 1e-11 * std::max(1.0, std::abs(quad(n, m))));
    }
  }
}

TEST_CASE("mode matrices are symmetric and match single elements") {
  for (const auto& fam : {ModeFamily::harmonic(0.55), ModeFamily::box(), ModeFamily::anharmonic(2)}) {
    const int cutoff = 12;
    for (int a = 0; a <= 8; ++a) {
      const auto m = fam.matrix(Observable::q(a), cutoff);
      CHECK((m - m.transpose()).norm() == 0.0);
      const int f = fam.first_index();
      CHECK(m(3, 5) == doctest::Approx(me_1d(fam, 3 + f, 5 + f, Observable::q(a))).epsilon(1e-12));
      // Parity zeros are exact.
      for (int i = 0; i <= cutoff - f; ++i)
        for (int j = 0; j <= cutoff - f; ++j)
          if ((i + j + a) % 2) CHECK(m(i, j) == 0.0);
    }
  }
}

TEST_CASE("anharmonic family is diagonal for its own Hamiltonian") {
  const auto fam = ModeFamily::anharmonic(1);
  const Eigen::MatrixXd h = fam.matrix(Observable::p2(), 20) + fam.matrix(Observable::q(4), 20);
  const auto e = fam.energies(20);
  CHECK(e(0) == doctest::Approx(1.06036209048418).epsilon(1e-12));
  CHECK(e(1) == doctest::Approx(3.79967302980234).epsilon(1e-12));
  CHECK(e(4) == doctest::Approx(16.26182601885023).epsilon(1e-12));
  for (int i = 0; i <= 20; ++i)
    for (int j = 0; j <= 20; ++j) CHECK(std::abs(h(i, j) - (i == j ? e(i) : 0.0)) < 1e-9 * std::max(1.0, e(i)));
  CHECK_THROWS(fam.matrix(Observable::q(1), 80));
}

TEST_CASE("product basis") {
  CHECK(product_basis(ModeKind::harmonic, 2, 1) == std::vector<MultiIndex>{{0, 0, 0}, {0, 1, 0}, {1, 0, 0}, {1, 1, 0}});
  CHECK(product_basis(ModeKind::harmonic, 2, 0).size() == 1);
  CHECK(product_basis(ModeKind::box, 3, 3).size() == 27);
  CHECK(product_basis(ModeKind::box, 2, 2).front() == MultiIndex{1, 1, 0});
  CHECK_THROWS(product_basis(ModeKind::box, 2, 0));
  CHECK_THROWS(product_basis(ModeKind::harmonic, 2, -1));
}

TEST_CASE("symmetry adaptation examples in C4v") {
  const auto t = builtin_table("C4v");
  const std::vector<MultiIndex> pair{{0, 2, 0}, {2, 0, 0}};
  const auto b1 = symmetry_adapt(pair, ModeKind::harmonic, 2, 2, t, "B1");
  REQUIRE(b1.size() == 1);
  const auto& f = b1.functions[0];
  CHECK(f.exact);
  REQUIRE(f.terms.size() == 2);
  CHECK(f.terms[0].first == MultiIndex{0, 2, 0});
  CHECK(f.terms[0].second == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(f.terms[1].second == doctest::Approx(-1 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(f.norm2 == 2 * f.numerators[0] * f.numerators[0]);
  CHECK(symmetry_adapt(pair, ModeKind::harmonic, 2, 2, t, "A1").size() == 1);
  CHECK(symmetry_adapt(pair, ModeKind::harmonic, 2, 2, t, "E").size() == 0);

  const auto a1 = symmetry_adapt({{0, 0, 0}}, ModeKind::harmonic, 2, 0, t, "A1");
  REQUIRE(a1.size() == 1);
  CHECK(a1.functions[0].terms == SparseFunction{{{0, 0, 0}, 1.0}});

  const auto e = symmetry_adapt({{0, 1, 0}, {1, 0, 0}}, ModeKind::harmonic, 2, 1, t, "E");
  REQUIRE(e.size() == 2);
  CHECK(e.functions[0].terms == SparseFunction{{{0, 1, 0}, 1.0}});
  CHECK(e.functions[1].terms == SparseFunction{{{1, 0, 0}, 1.0}});

  // The image of a seed must stay inside the basis.
  CHECK_THROWS(symmetry_adapt({{0, 1, 0}}, ModeKind::harmonic, 2, 1, t, "E"));
}

TEST_CASE("adapted blocks are complete and orthonormal") {
  struct Case { const char* table; ModeKind kind; int dim; int cutoff; };
  for (const Case& c : {Case{"C4v", ModeKind::harmonic, 2, 6}, Case{"C2v_modified", ModeKind::box, 2, 7},
                        Case{"C2", ModeKind::anharmonic, 2, 5}, Case{"Cs", ModeKind::box, 2, 5},
                        Case{"Oh", ModeKind::harmonic, 3, 3}, Case{"C2h", ModeKind::box, 3, 4},
                        Case{"D2h", ModeKind::harmonic, 3, 3}, Case{"Ci", ModeKind::harmonic, 3, 2}}) {
    CAPTURE(c.table);
    const auto t = builtin_table(c.table);
    const auto basis = product_basis(c.kind, c.dim, c.cutoff);
    std::size_t total = 0;
    std::vector<BasisBlock> blocks;
    for (const auto& irrep : t.irreps) {
      blocks.push_back(symmetry_adapt(basis, c.kind, c.dim, c.cutoff, t, irrep));
      total += blocks.back().functions.size();
    }
    CHECK(total == basis.size());
    // Orthonormal within and across blocks.
    std::vector<const AdaptedFunction*> all;
    for (const auto& b : blocks)
      for (const auto& f : b.functions) all.push_back(&f);
    auto dot = [](const AdaptedFunction& a, const AdaptedFunction& b) {
      double s = 0;
      std::size_t i = 0, j = 0;
      while (i < a.terms.size() && j < b.terms.size()) {
        if (a.terms[i].first < b.terms[j].first) ++i;
        else if (b.terms[j].first < a.terms[i].first) ++j;
        else s += a.terms[i++].second * b.terms[j++].second;
      }
      return s;
    };
    double worst = 0;
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = i; j < all.size(); ++j)
        worst = std::max(worst, std::abs(dot(*all[i], *all[j]) - (i == j ? 1.0 : 0.0)));
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("H0 level classification") {
  const auto c4v = builtin_table("C4v");
  CHECK(format_multiset(classify_h0_level(ModeKind::harmonic, {0, 1}, c4v)) == "E");
  CHECK(format_multiset(classify_h0_level(ModeKind::harmonic, {0, 2}, c4v)) == "A1+B1");
  CHECK(format_multiset(classify_h0_level(ModeKind::harmonic, {1, 1}, c4v)) == "B2");
  CHECK(format_multiset(classify_h0_level(ModeKind::box, {1, 2}, c4v)) == "E");
  CHECK(format_multiset(classify_h0_level(ModeKind::box, {1, 3}, c4v)) == "A1+B1");
  const auto oh = builtin_table("Oh");
  CHECK(format_multiset(classify_h0_level(ModeKind::harmonic, {0, 0, 1}, oh)) == "T1u");
  CHECK(format_multiset(classify_h0_level(ModeKind::harmonic, {0, 1, 1}, oh)) == "T2g");
  CHECK(format_multiset(classify_h0_level(ModeKind::harmonic, {0, 0, 2}, oh)) == "A1g+Eg");
  CHECK(format_multiset(classify_h0_level(ModeKind::harmonic, {1, 1, 1}, oh)) == "A2u");
  CHECK(format_multiset(classify_h0_level(ModeKind::harmonic, {0, 1, 2}, oh)) == "T1u+T2u");
  CHECK_THROWS(classify_h0_level(ModeKind::harmonic, {0, 1}, oh));
}

TEST_CASE("block serialization round-trips") {
  const auto t = builtin_table("C4v");
  const auto basis = product_basis(ModeKind::harmonic, 2, 4);
  const auto block = symmetry_adapt(basis, ModeKind::harmonic, 2, 4, t, "E");
  std::stringstream ss;
  write_block(ss, block);
  const auto back = read_block(ss);
  CHECK(back.irrep == "E");
  CHECK(back.table == "C4v");
  CHECK(back.cutoff == 4);
  REQUIRE(back.functions.size() == block.functions.size());
  for (std::size_t i = 0; i < block.functions.size(); ++i) CHECK(back.functions[i].terms == block.functions[i].terms);
  std::istringstream bad("irrep A1\n(0.5,(0,x))\n");
  CHECK_THROWS(read_block(bad));
}
