#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "grouprep/char_table.hpp"
#include "grouprep/group.hpp"
#include "grouprep/types.hpp"

#include <cmath>
#include <complex>
#include <vector>

using namespace grouprep;
using doctest::Approx;

namespace {

std::vector<GroupPtr> corpus() {
  std::vector<GroupPtr> gs;
  for (int n = 2; n <= 8; ++n) gs.push_back(builtin_group(BuiltinKind::Cyclic, n));
  gs.push_back(builtin_group(BuiltinKind::Symmetric, 3));
  gs.push_back(builtin_group(BuiltinKind::Symmetric, 4));
  gs.push_back(builtin_group(BuiltinKind::Dihedral, 4));
  gs.push_back(builtin_group(BuiltinKind::Dihedral, 5));
  gs.push_back(builtin_group(BuiltinKind::Quaternion, 8));
  return gs;
}

// Character of the left regular representation from its closed form: the
// trace of left translation counts fixed points, |G| at the identity and 0
// everywhere else.
std::vector<cplx> regular_character(const FiniteGroup& g) {
  std::vector<cplx> phi(g.order(), cplx(0.0, 0.0));
  phi[g.identity] = cplx(static_cast<double>(g.order()), 0.0);
  return phi;
}

}  // namespace

TEST_CASE("Z_2 table is the sign/trivial pair with degrees (1,1)") {
  TablePtr t = character_table(builtin_group(BuiltinKind::Cyclic, 2));
  REQUIRE(t->k() == 2);
  CHECK(t->degrees == std::vector<int>({1, 1}));
  // Canonical row order sorts (1,-1) before (1,1).
  CHECK(t->chi(0, 0).real() == Approx(1.0).epsilon(1e-10));
  CHECK(t->chi(0, 1).real() == Approx(-1.0).epsilon(1e-10));
  CHECK(t->chi(1, 0).real() == Approx(1.0).epsilon(1e-10));
  CHECK(t->chi(1, 1).real() == Approx(1.0).epsilon(1e-10));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(std::abs(t->chi(i, j).imag()) < 1e-10);
}

TEST_CASE("S_3 has degrees (1,1,2) and contains the trivial row") {
  TablePtr t = character_table(builtin_group(BuiltinKind::Symmetric, 3));
  REQUIRE(t->k() == 3);
  CHECK(t->degrees == std::vector<int>({1, 1, 2}));
  bool has_trivial = false;
  for (int i = 0; i < 3; ++i) {
    bool all_one = true;
    for (int j = 0; j < 3; ++j) all_one = all_one && std::abs(t->chi(i, j) - cplx(1.0, 0.0)) < 1e-9;
    has_trivial = has_trivial || all_one;
  }
  CHECK(has_trivial);
}

TEST_CASE("Q_8 has degrees (1,1,1,1,2)") {
  TablePtr t = character_table(builtin_group(BuiltinKind::Quaternion, 8));
  CHECK(t->degrees == std::vector<int>({1, 1, 1, 1, 2}));
}

TEST_CASE("degree squares sum to the group order on the whole corpus") {
  for (GroupPtr g : corpus()) {
    TablePtr t = character_table(g);
    CHECK(t->k() == static_cast<int>(t->partition.classes.size()));
    int sum = 0;
    for (int n : t->degrees) {
      CHECK(n >= 1);
      sum += n * n;
      // Degrees are the identity-class column before rounding.
    }
    CHECK(sum == g->order());
    for (int i = 0; i < t->k(); ++i)
      CHECK(std::abs(t->chi(i, 0) - cplx(static_cast<double>(t->degrees[i]), 0.0)) < 1e-8);
  }
}

TEST_CASE("row orthogonality holds within 1e-10") {
  for (GroupPtr g : corpus()) {
    TablePtr t = character_table(g);
    const double order = static_cast<double>(g->order());
    for (int i = 0; i < t->k(); ++i)
      for (int i2 = 0; i2 < t->k(); ++i2) {
        cplx acc = 0.0;
        for (int j = 0; j < t->k(); ++j)
          acc += static_cast<double>(t->partition.class_sizes[j]) * t->chi(i, j) * std::conj(t->chi(i2, j));
        acc /= order;
        const cplx want = i == i2 ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
        CHECK(std::abs(acc - want) < 1e-10);
      }
  }
}

TEST_CASE("column orthogonality holds within 1e-9") {
  for (GroupPtr g : corpus()) {
    TablePtr t = character_table(g);
    for (int j = 0; j < t->k(); ++j)
      for (int j2 = 0; j2 < t->k(); ++j2) {
        cplx acc = 0.0;
        for (int i = 0; i < t->k(); ++i) acc += t->chi(i, j) * std::conj(t->chi(i, j2));
        const double want =
            j == j2 ? static_cast<double>(g->order()) / static_cast<double>(t->partition.class_sizes[j]) : 0.0;
        CHECK(std::abs(acc - cplx(want, 0.0)) < 1e-9);
      }
  }
}

TEST_CASE("table construction is deterministic across repeated runs") {
  for (GroupPtr g : {builtin_group(BuiltinKind::Symmetric, 4), builtin_group(BuiltinKind::Quaternion, 8)}) {
    TablePtr a = character_table(g);
    TablePtr b = character_table(g);
    REQUIRE(a->k() == b->k());
    CHECK((a->chi - b->chi).norm() == 0.0);
    CHECK(a->degrees == b->degrees);
  }
}

TEST_CASE("value(i, element) agrees with the class entry") {
  GroupPtr g = builtin_group(BuiltinKind::Symmetric, 3);
  TablePtr t = character_table(g);
  for (int i = 0; i < t->k(); ++i)
    for (int x = 0; x < g->order(); ++x)
      CHECK(std::abs(t->value(i, x) - t->chi(i, t->partition.class_of[x])) == 0.0);
}

TEST_CASE("decompose_character inverts single rows") {
  for (GroupPtr g : {builtin_group(BuiltinKind::Symmetric, 3), builtin_group(BuiltinKind::Dihedral, 4)}) {
    TablePtr t = character_table(g);
    for (int i = 0; i < t->k(); ++i) {
      std::vector<cplx> phi(g->order());
      for (int x = 0; x < g->order(); ++x) phi[x] = t->value(i, x);
      std::vector<int> want(t->k(), 0);
      want[i] = 1;
      CHECK(decompose_character(phi, *t) == want);
    }
  }
}

TEST_CASE("the regular character decomposes into the degrees") {
  for (GroupPtr g : corpus()) {
    TablePtr t = character_table(g);
    CHECK(decompose_character(regular_character(*g), *t) == t->degrees);
  }
}

TEST_CASE("decompose_character is linear: 2*chi_0 + chi_1 on Z_2") {
  GroupPtr g = builtin_group(BuiltinKind::Cyclic, 2);
  TablePtr t = character_table(g);
  std::vector<cplx> phi(2);
  for (int x = 0; x < 2; ++x) phi[x] = 2.0 * t->value(0, x) + t->value(1, x);
  CHECK(decompose_character(phi, *t) == std::vector<int>({2, 1}));
}

TEST_CASE("decompose_character accepts per-class values") {
  GroupPtr g = builtin_group(BuiltinKind::Symmetric, 3);
  TablePtr t = character_table(g);
  // Regular character on the canonical classes (identity, 3-cycles,
  // transpositions) is (6, 0, 0).
  CHECK(decompose_character({cplx(6, 0), cplx(0, 0), cplx(0, 0)}, *t) == t->degrees);
}

TEST_CASE("non class functions and non-representation characters are rejected") {
  GroupPtr g = builtin_group(BuiltinKind::Symmetric, 3);
  TablePtr t = character_table(g);
  std::vector<cplx> phi(6, cplx(0.0, 0.0));
  phi[g->identity] = 6.0;
  phi[t->partition.classes[2][0]] = 1.0;  // breaks constancy on the transposition class
  try {
    decompose_character(phi, *t);
    FAIL("accepted a non class function");
  } catch (const Error& e) {
    CHECK(e.kind() == Err::NotClassFunction);
  }

  std::vector<cplx> half(6);
  for (int x = 0; x < 6; ++x) half[x] = 0.5 * t->value(2, x);
  try {
    decompose_character(half, *t);
    FAIL("accepted a non-integral multiplicity");
  } catch (const Error& e) {
    CHECK(e.kind() == Err::NonIntegralMultiplicity);
  }
}

TEST_CASE("oversized groups are rejected") {
  // A cyclic group over the 2048 cap, built directly to skip builtin caps.
  const int n = 2049;
  std::vector<std::vector<int>> cayley(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) cayley[a][b] = (a + b) % n;
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back("c" + std::to_string(i));
  GroupPtr g = build_group(labels, cayley);
  CHECK_THROWS_AS(character_table(g), Error);
}
