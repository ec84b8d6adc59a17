#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "grouprep/char_table.hpp"
#include "grouprep/group.hpp"
#include "grouprep/linalg.hpp"
#include "grouprep/rep.hpp"
#include "grouprep/types.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

using namespace grouprep;
using doctest::Approx;

namespace {

// Rank-1 projection onto the normalized all-ones vector.
Mat averaging_projector(int d) {
  Mat p(d, d);
  p.setConstant(cplx(1.0 / d, 0.0));
  return p;
}

UnitaryRep identity_rep(GroupPtr g, int d) {
  UnitaryRep rep;
  rep.group = g;
  rep.dim = d;
  rep.mats.assign(static_cast<std::size_t>(g->order()), Mat::Identity(d, d));
  return rep;
}

}  // namespace

TEST_CASE("left regular representation is the permutation action") {
  GroupPtr z2 = builtin_group(BuiltinKind::Cyclic, 2);
  UnitaryRep rep = left_regular(z2);
  REQUIRE(rep.dim == 2);
  Mat swap(2, 2);
  swap << cplx(0, 0), cplx(1, 0), cplx(1, 0), cplx(0, 0);
  CHECK((rep.at(1) - swap).norm() == 0.0);

  GroupPtr t = builtin_group(BuiltinKind::Cyclic, 1);
  CHECK((left_regular(t).at(0) - Mat::Identity(1, 1)).norm() == 0.0);

  GroupPtr s3 = builtin_group(BuiltinKind::Symmetric, 3);
  UnitaryRep reg = left_regular(s3);
  const std::vector<cplx> chi = rep_character(reg);
  for (int x = 0; x < 6; ++x) {
    const double want = x == s3->identity ? 6.0 : 0.0;
    CHECK(std::abs(chi[static_cast<std::size_t>(x)] - cplx(want, 0.0)) < 1e-12);
  }
  // Left translation by g sends e_h to e_{gh}.
  for (int g = 0; g < 6; ++g)
    for (int h = 0; h < 6; ++h)
      CHECK(std::abs(reg.at(g)(s3->mul(g, h), h) - cplx(1.0, 0.0)) < 1e-15);
}

TEST_CASE("verify_rep passes exact reps and scales defects as expected") {
  GroupPtr s3 = builtin_group(BuiltinKind::Symmetric, 3);
  UnitaryRep reg = left_regular(s3);
  RepVerification v = verify_rep(reg, 1e-7);
  CHECK(v.pass);
  CHECK(v.unitarity_defect < 1e-12);
  CHECK(v.homomorphism_defect < 1e-12);
  CHECK(v.identity_defect < 1e-12);

  // Scaling one non-identity matrix by 1.01 breaks unitarity by |1.01^2 - 1|.
  UnitaryRep bad = reg;
  bad.mats[1] *= 1.01;
  RepVerification w = verify_rep(bad, 1e-7);
  CHECK_FALSE(w.pass);
  CHECK(w.unitarity_defect == Approx(1.01 * 1.01 - 1.0).epsilon(1e-10));

  UnitaryRep empty;
  empty.group = s3;
  empty.dim = 0;
  empty.mats.assign(6, Mat::Zero(0, 0));
  CHECK(verify_rep(empty, 1e-7).pass);
}

TEST_CASE("rep_character is additive over direct sums") {
  GroupPtr s3 = builtin_group(BuiltinKind::Symmetric, 3);
  UnitaryRep reg = left_regular(s3);
  UnitaryRep two = direct_sum({reg, reg});
  CHECK(two.dim == 12);
  const std::vector<cplx> one_chi = rep_character(reg);
  const std::vector<cplx> two_chi = rep_character(two);
  for (int x = 0; x < 6; ++x)
    CHECK(std::abs(two_chi[static_cast<std::size_t>(x)] - 2.0 * one_chi[static_cast<std::size_t>(x)]) <
          1e-12);

  const std::vector<cplx> id_chi = rep_character(identity_rep(s3, 4));
  for (const cplx& c : id_chi) CHECK(std::abs(c - cplx(4.0, 0.0)) < 1e-12);

  GroupPtr z2 = builtin_group(BuiltinKind::Cyclic, 2);
  CHECK_THROWS_AS(direct_sum({reg, left_regular(z2)}), Error);
}

TEST_CASE("direct sum of one rep is the rep itself") {
  GroupPtr q8 = builtin_group(BuiltinKind::Quaternion, 8);
  UnitaryRep reg = left_regular(q8);
  UnitaryRep same = direct_sum({reg});
  REQUIRE(same.dim == reg.dim);
  for (int g = 0; g < 8; ++g) CHECK((same.at(g) - reg.at(g)).norm() == 0.0);
}

TEST_CASE("trivial-character projection on the regular rep averages over G") {
  for (GroupPtr g : {builtin_group(BuiltinKind::Symmetric, 3), builtin_group(BuiltinKind::Cyclic, 5)}) {
    TablePtr t = character_table(g);
    UnitaryRep reg = left_regular(g);
    int trivial = -1;
    for (int i = 0; i < t->k(); ++i) {
      bool all_one = true;
      for (int j = 0; j < t->k(); ++j) all_one = all_one && std::abs(t->chi(i, j) - cplx(1, 0)) < 1e-9;
      if (all_one) trivial = i;
    }
    REQUIRE(trivial >= 0);
    Mat p = isotypic_projection(reg, trivial, *t);
    CHECK((p - averaging_projector(g->order())).norm() == Approx(0.0).epsilon(1e-10));
  }
}

TEST_CASE("projections resolve the identity and commute with the action") {
  GroupPtr d4 = builtin_group(BuiltinKind::Dihedral, 4);
  TablePtr t = character_table(d4);
  UnitaryRep reg = left_regular(d4);
  Mat sum = Mat::Zero(8, 8);
  for (int i = 0; i < t->k(); ++i) {
    Mat p = isotypic_projection(reg, i, *t);
    sum += p;
    CHECK(linalg::op_norm(p * p - p) < 1e-9);
    CHECK(linalg::op_norm(p - p.adjoint()) < 1e-9);
    for (int g = 0; g < 8; ++g) CHECK(linalg::op_norm(p * reg.at(g) - reg.at(g) * p) < 1e-9);
    for (int j = 0; j < i; ++j)
      CHECK(linalg::op_norm(p * isotypic_projection(reg, j, *t)) < 1e-9);
  }
  CHECK(linalg::op_norm(sum - Mat::Identity(8, 8)) < 1e-9);
}

TEST_CASE("projection of an absent irreducible is zero") {
  GroupPtr z2 = builtin_group(BuiltinKind::Cyclic, 2);
  TablePtr t = character_table(z2);
  // identity_rep contains only the trivial irreducible; row 0 is the sign row.
  Mat p = isotypic_projection(identity_rep(z2, 3), 0, *t);
  CHECK(linalg::op_norm(p) < 1e-12);
}

TEST_CASE("decompose recovers regular and stacked multiplicities") {
  GroupPtr s3 = builtin_group(BuiltinKind::Symmetric, 3);
  TablePtr t = character_table(s3);
  UnitaryRep reg = left_regular(s3);

  IsotypicDecomposition dec = decompose(reg, t);
  CHECK(dec.mult == std::vector<int>({1, 1, 2}));
  CHECK(dec.residual_norm < 1e-9);

  IsotypicDecomposition dec2 = decompose(direct_sum({reg, reg}), t);
  CHECK(dec2.mult == std::vector<int>({2, 2, 4}));

  GroupPtr z2 = builtin_group(BuiltinKind::Cyclic, 2);
  IsotypicDecomposition dec3 = decompose(identity_rep(z2, 3), character_table(z2));
  CHECK(dec3.mult == std::vector<int>({0, 3}));

  // Block basis invariants: orthonormal, mutually orthogonal, invariant.
  int filled = 0;
  for (int i = 0; i < t->k(); ++i) {
    const Mat& q = dec.blocks[static_cast<std::size_t>(i)];
    REQUIRE(static_cast<int>(q.cols()) == t->degrees[i] * dec.mult[i]);
    filled += static_cast<int>(q.cols());
    CHECK((q.adjoint() * q - Mat::Identity(q.cols(), q.cols())).norm() < 1e-8);
    for (int j = 0; j < i; ++j)
      CHECK((q.adjoint() * dec.blocks[static_cast<std::size_t>(j)]).norm() < 1e-8);
    for (int g = 0; g < 6; ++g) {
      Mat img = reg.at(g) * q;
      CHECK(linalg::op_norm(img - q * (q.adjoint() * img)) < 1e-7);
    }
  }
  CHECK(filled == 6);
}

TEST_CASE("multiplicities are invariant under unitary conjugation") {
  GroupPtr q8 = builtin_group(BuiltinKind::Quaternion, 8);
  TablePtr t = character_table(q8);
  UnitaryRep reg = left_regular(q8);
  Rng rng(31);
  UnitaryRep twisted = conjugated(reg, linalg::random_unitary(8, rng));
  CHECK(decompose(twisted, t).mult == decompose(reg, t).mult);
}

TEST_CASE("split of the cyclic shift finds the eigenvector lines") {
  GroupPtr z3 = builtin_group(BuiltinKind::Cyclic, 3);
  TablePtr t = character_table(z3);
  UnitaryRep reg = left_regular(z3);
  IsotypicDecomposition dec = decompose(reg, t);
  CHECK(dec.mult == std::vector<int>({1, 1, 1}));
  for (int i = 0; i < 3; ++i) {
    IrreducibleCopyList copies = split_isotypic(reg, dec, i, 7);
    REQUIRE(copies.count() == 1);
    const Mat& c = copies.copies[0];
    REQUIRE(c.cols() == 1);
    // The copy is an eigenvector of the shift; its eigenvalue is the
    // character value on the generator (a cube root of unity).
    Vec shifted = reg.at(1) * c.col(0);
    const cplx lambda = t->chi(i, t->partition.class_of[1]);
    CHECK((shifted - lambda * c.col(0)).norm() < 1e-9);
    CHECK(std::abs(lambda * lambda * lambda - cplx(1.0, 0.0)) < 1e-9);
  }
}

TEST_CASE("two identical blocks split with an identity-up-to-phase intertwiner") {
  GroupPtr s3 = builtin_group(BuiltinKind::Symmetric, 3);
  TablePtr t = character_table(s3);
  std::vector<UnitaryRep> models = irreducible_models(t);
  const UnitaryRep& w = models[2];
  REQUIRE(w.dim == 2);
  UnitaryRep two = direct_sum({w, w});
  IsotypicDecomposition dec = decompose(two, t);
  CHECK(dec.mult == std::vector<int>({0, 0, 2}));

  IrreducibleCopyList copies = split_isotypic(two, dec, 2, 5);
  REQUIRE(copies.count() == 2);
  for (int s = 0; s < 2; ++s) {
    const Mat& c = copies.copies[static_cast<std::size_t>(s)];
    REQUIRE(c.cols() == 2);
    CHECK((c.adjoint() * c - Mat::Identity(2, 2)).norm() < 1e-9);
    for (int g = 0; g < 6; ++g) {
      Mat img = two.at(g) * c;
      CHECK(linalg::op_norm(img - c * (c.adjoint() * img)) < 1e-7);
    }
  }
  // Restrictions on the two copies are intertwined by intertwiner(0, 1); by
  // Schur it is unique up to phase, so it must match an independently
  // computed least-squares intertwiner up to a single phase factor.
  Mat t01 = copies.intertwiner(0, 1);
  std::vector<Mat> rho0, rho1;
  for (int g = 0; g < 6; ++g) {
    rho0.push_back(copies.copies[0].adjoint() * two.at(g) * copies.copies[0]);
    rho1.push_back(copies.copies[1].adjoint() * two.at(g) * copies.copies[1]);
    CHECK((t01 * rho0.back() - rho1.back() * t01).norm() < 1e-7);
  }
  double residual = 0.0;
  Mat s01 = unitary_intertwiner(rho0, rho1, &residual);
  CHECK(residual < 1e-8);
  Mat ratio = s01.adjoint() * t01;
  const cplx phase = ratio(0, 0) / std::abs(ratio(0, 0));
  CHECK((ratio - phase * Mat::Identity(2, 2)).norm() < 1e-6);
}

TEST_CASE("irreducible models carry the table characters") {
  for (GroupPtr g : {builtin_group(BuiltinKind::Symmetric, 3), builtin_group(BuiltinKind::Quaternion, 8),
                     builtin_group(BuiltinKind::Dihedral, 4)}) {
    TablePtr t = character_table(g);
    std::vector<UnitaryRep> models = irreducible_models(t);
    REQUIRE(static_cast<int>(models.size()) == t->k());
    for (int i = 0; i < t->k(); ++i) {
      CHECK(models[static_cast<std::size_t>(i)].dim == t->degrees[i]);
      CHECK(verify_rep(models[static_cast<std::size_t>(i)], 1e-8).pass);
      const std::vector<cplx> chi = rep_character(models[static_cast<std::size_t>(i)]);
      for (int x = 0; x < g->order(); ++x)
        CHECK(std::abs(chi[static_cast<std::size_t>(x)] - t->value(i, x)) < 1e-7);
    }
  }
}

TEST_CASE("random_rep realizes requested multiplicities deterministically") {
  GroupPtr s3 = builtin_group(BuiltinKind::Symmetric, 3);
  TablePtr t = character_table(s3);
  std::vector<UnitaryRep> models = irreducible_models(t);
  const std::vector<int> mult = {2, 1, 1};
  UnitaryRep r1 = random_rep(t, models, mult, 99);
  UnitaryRep r2 = random_rep(t, models, mult, 99);
  UnitaryRep r3 = random_rep(t, models, mult, 100);
  CHECK(r1.dim == 2 * 1 + 1 * 1 + 1 * 2);
  CHECK(verify_rep(r1, 1e-8).pass);
  CHECK(decompose(r1, t).mult == mult);
  for (int g = 0; g < 6; ++g) CHECK((r1.at(g) - r2.at(g)).norm() == 0.0);
  double diff = 0.0;
  for (int g = 0; g < 6; ++g) diff += (r1.at(g) - r3.at(g)).norm();
  CHECK(diff > 1e-3);
}

TEST_CASE("frame coefficients reproduce vectors and the reference action") {
  GroupPtr s3 = builtin_group(BuiltinKind::Symmetric, 3);
  TablePtr t = character_table(s3);
  std::vector<UnitaryRep> models = irreducible_models(t);
  UnitaryRep rep = random_rep(t, models, {1, 2, 2}, 17);
  IsotypicFrame frame = frame_of(rep, t, models, 3);
  REQUIRE(frame.mult == std::vector<int>({1, 2, 2}));

  Rng rng(8);
  Vec x = linalg::random_vector(rep.dim, rng);
  // The frame blocks are orthonormal and exhaustive: coefficients rebuild x.
  Vec rebuilt = Vec::Zero(rep.dim);
  for (int i = 0; i < t->k(); ++i) rebuilt += frame.basis[static_cast<std::size_t>(i)] *
                                              (frame.basis[static_cast<std::size_t>(i)].adjoint() * x);
  CHECK((rebuilt - x).norm() < 1e-9);

  // pi(g) in frame coordinates multiplies coefficients by the model matrix.
  for (int g = 0; g < 6; ++g)
    for (int i = 0; i < t->k(); ++i) {
      Mat lhs = frame.coeff(Vec(rep.at(g) * x), i);
      Mat rhs = models[static_cast<std::size_t>(i)].at(g) * frame.coeff(x, i);
      CHECK((lhs - rhs).norm() < 1e-8);
    }
}

TEST_CASE("unitary_intertwiner conjugates one rep onto another") {
  GroupPtr z4 = builtin_group(BuiltinKind::Cyclic, 4);
  UnitaryRep reg = left_regular(z4);
  Rng rng(55);
  Mat u0 = linalg::random_unitary(4, rng);
  UnitaryRep twisted = conjugated(reg, u0);
  double residual = 0.0;
  Mat u = unitary_intertwiner(reg.mats, twisted.mats, &residual);
  CHECK(residual < 1e-9);
  for (int g = 0; g < 4; ++g) CHECK((u * reg.at(g) - twisted.at(g) * u).norm() < 1e-8);
  CHECK((u.adjoint() * u - Mat::Identity(4, 4)).norm() < 1e-9);
}
