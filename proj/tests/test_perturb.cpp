#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "grouprep/char_table.hpp"
#include "grouprep/group.hpp"
#include "grouprep/linalg.hpp"
#include "grouprep/model.hpp"
#include "grouprep/perturb.hpp"
#include "grouprep/rep.hpp"
#include "grouprep/types.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

using namespace grouprep;
using doctest::Approx;

namespace {

AlgebraWord single(const std::vector<std::string>& product, cplx coeff = cplx(1.0, 0.0)) {
  AlgebraWord w;
  w.coeffs = {coeff};
  w.products = {product};
  return w;
}

AlgebraWord averaging_word(const FiniteGroup& g) {
  AlgebraWord w;
  for (const std::string& label : g.labels) {
    w.coeffs.push_back(cplx(1.0 / g.order(), 0.0));
    w.products.push_back({label});
  }
  return w;
}

}  // namespace

TEST_CASE("eval_word realizes products, adjoints and linear combinations") {
  GroupPtr s3 = builtin_group(BuiltinKind::Symmetric, 3);
  UnitaryRep reg = left_regular(s3);
  const std::string& a = s3->labels[3];  // a 3-cycle

  // g * g^-1 = identity, written with the adjoint marker.
  Mat gg = eval_word(reg, single({a, a + "*"}));
  CHECK((gg - Mat::Identity(6, 6)).norm() < 1e-12);

  // The averaging word is the rank-1 projection onto the ones vector.
  Mat avg = eval_word(reg, averaging_word(*s3));
  Mat want(6, 6);
  want.setConstant(cplx(1.0 / 6.0, 0.0));
  CHECK((avg - want).norm() < 1e-12);

  // Banach-algebra norm bound: ||sum c_t prod_t|| <= sum |c_t| on unitaries.
  AlgebraWord mix;
  mix.coeffs = {cplx(0.3, 0.4), cplx(-1.0, 0.25)};
  mix.products = {{a, a}, {a + "*"}};
  double bound = 0.0;
  for (const cplx& c : mix.coeffs) bound += std::abs(c);
  CHECK(linalg::op_norm(eval_word(reg, mix)) <= bound + 1e-12);

  // The empty product is the identity.
  CHECK((eval_word(reg, identity_word()) - Mat::Identity(6, 6)).norm() == 0.0);

  CHECK_THROWS_AS(eval_word(reg, single({"nope"})), Error);
  try {
    eval_word(reg, single({"nope"}));
  } catch (const Error& e) {
    CHECK(e.kind() == Err::UnknownGenerator);
  }
}

TEST_CASE("projection words evaluate to the isotypic projections") {
  GroupPtr s3 = builtin_group(BuiltinKind::Symmetric, 3);
  TablePtr t = character_table(s3);
  UnitaryRep reg = left_regular(s3);
  for (int i = 0; i < t->k(); ++i) {
    Mat from_word = eval_word(reg, projection_word(*t, i));
    CHECK((from_word - isotypic_projection(reg, i, *t)).norm() < 1e-12);
  }
}

TEST_CASE("word keys are canonical and order-sensitive") {
  AlgebraWord a = single({"x", "y*"});
  AlgebraWord b = single({"x", "y*"});
  AlgebraWord c = single({"y*", "x"});
  CHECK(word_key(a) == word_key(b));
  CHECK(word_key(a) != word_key(c));
  CHECK(word_key(identity_word()) != word_key(a));
}

TEST_CASE("rank signatures separate finite from infinite multiplicities") {
  GroupPtr s3 = builtin_group(BuiltinKind::Symmetric, 3);
  TablePtr t = character_table(s3);
  std::vector<UnitaryRep> models = irreducible_models(t);
  SymbolicModel m = make_symbolic(t, {2, kOmega, 1});
  RepFamily fam = truncation_family(m, models, {2, 3, 5});

  std::vector<AlgebraWord> words;
  for (int i = 0; i < 3; ++i) words.push_back(projection_word(*t, i));
  AlgebraWord zero;
  zero.coeffs = {cplx(0.0, 0.0)};
  zero.products = {{}};
  words.push_back(zero);
  words.push_back(identity_word());

  RankSignature sig = rank_signature(fam, words, 1e-7);
  REQUIRE(sig.ranks.size() == 5);
  // Label 0 (degree 1, mult 2): stable rank 2 at every size.
  CHECK(sig.ranks[0] == std::vector<int>({2, 2, 2}));
  CHECK(sig.verdicts[0] == RankVerdict::Stable);
  CHECK(sig.stable_ranks[0] == 2);
  // Label 1 (degree 1, omega): rank t, growing.
  CHECK(sig.ranks[1] == std::vector<int>({2, 3, 5}));
  CHECK(sig.verdicts[1] == RankVerdict::Growing);
  CHECK(sig.stable_ranks[1] == -1);
  // Label 2 (degree 2, mult 1): stable rank 2.
  CHECK(sig.ranks[2] == std::vector<int>({2, 2, 2}));
  CHECK(sig.verdicts[2] == RankVerdict::Stable);
  // Zero word: stable rank 0.
  CHECK(sig.ranks[3] == std::vector<int>({0, 0, 0}));
  CHECK(sig.stable_ranks[3] == 0);
  // Identity word: rank = dim = 2 + t + 2, growing.
  CHECK(sig.ranks[4] == std::vector<int>({6, 7, 9}));
  CHECK(sig.verdicts[4] == RankVerdict::Growing);
}

TEST_CASE("rank signatures are invariant under unitary conjugation") {
  GroupPtr z4 = builtin_group(BuiltinKind::Cyclic, 4);
  TablePtr t = character_table(z4);
  std::vector<UnitaryRep> models = irreducible_models(t);
  SymbolicModel m = make_symbolic(t, {1, kOmega, 0, kOmega});
  RepFamily fam = truncation_family(m, models, {2, 4, 6});

  RepFamily twisted = fam;
  Rng rng(40);
  for (std::size_t s = 0; s < twisted.gens.size(); ++s) {
    Mat u = linalg::random_unitary(twisted.dim_at(static_cast<int>(s)), rng);
    for (Mat& g : twisted.gens[s]) g = u * g * u.adjoint();
  }

  std::vector<AlgebraWord> words;
  for (int i = 0; i < 4; ++i) words.push_back(projection_word(*t, i));
  RankSignature a = rank_signature(fam, words, 1e-7);
  RankSignature b = rank_signature(twisted, words, 1e-7);
  CHECK(a.ranks == b.ranks);
  CHECK(aue_equivalent(a, b));
}

TEST_CASE("borderline singular values raise RankAmbiguous with context") {
  GroupPtr z2 = builtin_group(BuiltinKind::Cyclic, 2);
  TablePtr t = character_table(z2);
  std::vector<UnitaryRep> models = irreducible_models(t);
  SymbolicModel m = make_symbolic(t, {kOmega, 1});
  RepFamily fam = truncation_family(m, models, {2, 3});

  // P_1 + 5e-7 P_0 has singular values 1 and 5e-7; at tol 1e-7 the small one
  // sits inside the undecidable band [tol, 10 tol).
  AlgebraWord w = projection_word(*t, 1);
  const AlgebraWord p0 = projection_word(*t, 0);
  for (std::size_t i = 0; i < p0.coeffs.size(); ++i) {
    w.coeffs.push_back(5e-7 * p0.coeffs[i]);
    w.products.push_back(p0.products[i]);
  }
  try {
    rank_signature(fam, {w}, 1e-7);
    FAIL("expected RankAmbiguous");
  } catch (const Error& e) {
    CHECK(e.kind() == Err::RankAmbiguous);
  }
}

TEST_CASE("aue equivalence compares verdicts and stable ranks per word") {
  GroupPtr s3 = builtin_group(BuiltinKind::Symmetric, 3);
  TablePtr t = character_table(s3);
  std::vector<UnitaryRep> models = irreducible_models(t);
  const std::vector<int> sizes = {4, 8, 16};
  std::vector<AlgebraWord> words;
  for (int i = 0; i < 3; ++i) words.push_back(projection_word(*t, i));
  words.push_back(identity_word());

  auto sig = [&](std::vector<int> mult) {
    return rank_signature(truncation_family(make_symbolic(t, std::move(mult)), models, sizes), words, 1e-7);
  };

  RankSignature base = sig({1, 2, kOmega});
  CHECK(aue_equivalent(base, base));
  CHECK(aue_equivalent(base, sig({1, 2, kOmega})));           // equal multiplicities
  CHECK_FALSE(aue_equivalent(base, sig({1, 3, kOmega})));     // finite entry differs
  CHECK_FALSE(aue_equivalent(base, sig({kOmega, 2, kOmega})));  // finite became omega

  RankSignature other = rank_signature(truncation_family(make_symbolic(t, {1, 2, kOmega}), models, sizes),
                                       {identity_word()}, 1e-7);
  CHECK_THROWS_AS(aue_equivalent(base, other), Error);
  try {
    aue_equivalent(base, other);
  } catch (const Error& e) {
    CHECK(e.kind() == Err::WordListMismatch);
  }
}

TEST_CASE("perturbation distance is zero precisely at exact conjugations") {
  GroupPtr q8 = builtin_group(BuiltinKind::Quaternion, 8);
  UnitaryRep reg = left_regular(q8);
  Rng rng(2);
  Mat u0 = linalg::random_unitary(8, rng);
  UnitaryRep twisted = conjugated(reg, u0);

  PerturbationReport at_u0 = perturbation_distance(reg, twisted, u0);
  CHECK(at_u0.distance < 1e-12);
  for (double n : at_u0.element_norms) CHECK(n < 1e-12);

  PerturbationReport self = perturbation_distance(reg, reg, Mat::Identity(8, 8));
  CHECK(self.distance == 0.0);

  // Weighted sum: norms are bounded by 2, weights 2^-n, so distance <= 4.
  PerturbationReport at_i = perturbation_distance(reg, twisted, Mat::Identity(8, 8));
  CHECK(at_i.distance >= 0.0);
  CHECK(at_i.distance <= 4.0 + 1e-12);

  CHECK_THROWS_AS(perturbation_distance(reg, twisted, Mat::Identity(7, 7)), Error);
  try {
    perturbation_distance(reg, twisted, 1.5 * Mat::Identity(8, 8));
    FAIL("accepted a non-unitary");
  } catch (const Error& e) {
    CHECK(e.kind() == Err::NotUnitary);
  }
  GroupPtr d4 = builtin_group(BuiltinKind::Dihedral, 4);
  try {
    perturbation_distance(reg, left_regular(d4), Mat::Identity(8, 8));
    FAIL("accepted mismatched groups");
  } catch (const Error& e) {
    CHECK(e.kind() == Err::GroupMismatch);
  }
  CHECK_THROWS_AS(perturbation_distance(reg, twisted, u0, {1.0, 0.5}), Error);
}

TEST_CASE("custom enumeration weights rescale the distance") {
  GroupPtr z2 = builtin_group(BuiltinKind::Cyclic, 2);
  UnitaryRep reg = left_regular(z2);
  UnitaryRep triv;
  triv.group = z2;
  triv.dim = 2;
  triv.mats = {Mat::Identity(2, 2), Mat::Identity(2, 2)};
  // ||I - swap||_op = 2 at the non-identity element, 0 at the identity.
  PerturbationReport dflt = perturbation_distance(triv, reg, Mat::Identity(2, 2));
  CHECK(dflt.distance == Approx(1.0).epsilon(1e-12));
  PerturbationReport scaled = perturbation_distance(triv, reg, Mat::Identity(2, 2), {1.0, 3.0});
  CHECK(scaled.distance == Approx(6.0).epsilon(1e-12));
}

TEST_CASE("character twist distance matches the closed form") {
  GroupPtr z4 = builtin_group(BuiltinKind::Cyclic, 4);
  TablePtr t = character_table(z4);
  UnitaryRep reg = left_regular(z4);

  // Pick a character with chi(generator) = i, twist every matrix by it.
  int row = -1;
  for (int i = 0; i < 4; ++i)
    if (std::abs(t->value(i, 1) - cplx(0.0, 1.0)) < 1e-9) row = i;
  REQUIRE(row >= 0);
  UnitaryRep twisted = reg;
  for (int g = 0; g < 4; ++g) twisted.mats[static_cast<std::size_t>(g)] *= t->value(row, g);

  PerturbationReport rep = perturbation_distance(reg, twisted, Mat::Identity(4, 4));
  double want = 0.0;
  for (int g = 0; g < 4; ++g) want += std::pow(2.0, -g) * std::abs(t->value(row, g) - cplx(1.0, 0.0));
  CHECK(rep.distance == Approx(want).epsilon(1e-10));
  for (int g = 0; g < 4; ++g)
    CHECK(rep.element_norms[static_cast<std::size_t>(g)] ==
          Approx(std::abs(t->value(row, g) - cplx(1.0, 0.0))).epsilon(1e-10));
}

TEST_CASE("triangle-type bound holds on random triples") {
  GroupPtr s3 = builtin_group(BuiltinKind::Symmetric, 3);
  UnitaryRep base = left_regular(s3);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(300 + seed);
    UnitaryRep r2 = conjugated(base, linalg::random_unitary(6, rng));
    UnitaryRep r3 = conjugated(base, linalg::random_unitary(6, rng));
    Mat u1 = linalg::random_unitary(6, rng);
    Mat u2 = linalg::random_unitary(6, rng);
    const double d12 = perturbation_distance(base, r2, u1).distance;
    const double d23 = perturbation_distance(r2, r3, u2).distance;
    const double d13 = perturbation_distance(base, r3, u2 * u1).distance;
    CHECK(d13 <= d12 + d23 + 1e-9);
  }
}

TEST_CASE("minimize_perturbation recovers exact conjugations") {
  GroupPtr d4 = builtin_group(BuiltinKind::Dihedral, 4);
  UnitaryRep reg = left_regular(d4);
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    Rng rng(seed);
    UnitaryRep twisted = conjugated(reg, linalg::random_unitary(8, rng));
    PerturbationReport rep = minimize_perturbation(reg, twisted, 200, seed);
    CHECK(rep.distance <= 1e-6);
    CHECK((rep.u.adjoint() * rep.u - Mat::Identity(8, 8)).norm() < 1e-9);
  }

  PerturbationReport self = minimize_perturbation(reg, reg, 50, 0);
  CHECK(self.distance <= 1e-10);
}

TEST_CASE("minimize_perturbation never reports false convergence to zero") {
  GroupPtr z2 = builtin_group(BuiltinKind::Cyclic, 2);
  UnitaryRep reg = left_regular(z2);  // multiplicities (1,1)
  UnitaryRep triv;
  triv.group = z2;
  triv.dim = 2;
  triv.mats = {Mat::Identity(2, 2), Mat::Identity(2, 2)};  // multiplicities (0,2)
  // pi2(g1) = I has rank(P_sign) = 0; reg has 1. No unitary gets closer than
  // the norm gap ||U I U* - swap|| = 2 at weight 1/2.
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    PerturbationReport rep = minimize_perturbation(triv, reg, 100, seed);
    CHECK(rep.distance >= 0.5);
  }
}

TEST_CASE("minimization is deterministic and never worse than identity") {
  GroupPtr s3 = builtin_group(BuiltinKind::Symmetric, 3);
  UnitaryRep reg = left_regular(s3);
  Rng rng(123);
  UnitaryRep other = conjugated(reg, linalg::random_unitary(6, rng));
  PerturbationReport a = minimize_perturbation(reg, other, 60, 9);
  PerturbationReport b = minimize_perturbation(reg, other, 60, 9);
  CHECK(a.distance == b.distance);
  CHECK((a.u - b.u).norm() == 0.0);
  const double at_identity = perturbation_distance(reg, other, Mat::Identity(6, 6)).distance;
  CHECK(a.distance <= at_identity + 1e-12);
}

TEST_CASE("bfs word enumeration starts empty and deduplicates") {
  const std::vector<std::vector<std::string>> words = bfs_words({"a", "b"}, 10);
  REQUIRE(words.size() == 10);
  CHECK(words[0].empty());
  CHECK(words[1] == std::vector<std::string>{"a"});
  CHECK(words[2] == std::vector<std::string>{"a*"});
  CHECK(words[3] == std::vector<std::string>{"b"});
  CHECK(words[4] == std::vector<std::string>{"b*"});
  for (std::size_t i = 0; i < words.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) CHECK(words[i] != words[j]);
}

TEST_CASE("word-family distance vanishes on identical families") {
  RepFamily fam = shift_family({8});
  PerturbationReport rep = perturbation_distance_words(fam.labels, fam.gens[0], fam.gens[0],
                                                       Mat::Identity(8, 8), 6);
  CHECK(rep.distance < 1e-12);
}

TEST_CASE("identity family spectrum is a punctual 1") {
  RepFamily fam;
  fam.labels = {"e"};
  fam.sizes = {2, 4};
  fam.gens = {{Mat::Identity(2, 2)}, {Mat::Identity(4, 4)}};
  SpectrumEstimate est = approx_spectrum(fam, "e", 0.1);
  REQUIRE(est.candidates.size() == 1);
  CHECK(std::abs(est.candidates[0].lambda - cplx(1.0, 0.0)) < 1e-12);
  CHECK(est.candidates[0].cls == SpectrumClass::Punctual);
}

TEST_CASE("shift spectrum fills the circle with approximate eigenvalues") {
  RepFamily fam = shift_family({4, 8, 16});
  SpectrumEstimate est = approx_spectrum(fam, "s", 2.0 * std::numbers::pi / 16.0);
  // Eigenvalues at size t are exactly the t-th roots of unity.
  for (std::size_t s = 0; s < est.sizes.size(); ++s) {
    const int t = est.sizes[s];
    REQUIRE(static_cast<int>(est.eigenvalues[s].size()) == t);
    for (const cplx& ev : est.eigenvalues[s]) {
      CHECK(std::abs(std::abs(ev) - 1.0) < 1e-9);
      CHECK(std::abs(std::pow(ev, t) - cplx(1.0, 0.0)) < 1e-7);
    }
  }
  int punctual = 0, approximate = 0, absent = 0;
  for (const SpectrumCandidate& c : est.candidates) {
    if (c.cls == SpectrumClass::Punctual) ++punctual;
    else if (c.cls == SpectrumClass::Approximate) ++approximate;
    else ++absent;
    CHECK(std::abs(std::abs(c.lambda) - 1.0) < 1e-9);
  }
  // 4th roots of unity persist at every size; the finer 16th-root grid is
  // approximate only.
  CHECK(punctual == 4);
  CHECK(punctual + approximate == 16);
  CHECK(absent == 0);
}

TEST_CASE("block of identity and shift mixes punctual and approximate") {
  RepFamily fam;
  fam.labels = {"m"};
  fam.sizes = {4, 8, 16};
  for (int t : fam.sizes) {
    Mat shift = Mat::Zero(t, t);
    for (int j = 0; j < t; ++j) shift((j + 1) % t, j) = 1.0;
    Mat block = Mat::Zero(t + 2, t + 2);
    block.topLeftCorner(2, 2).setIdentity();
    block.bottomRightCorner(t, t) = shift;
    fam.gens.push_back({block});
  }
  SpectrumEstimate est = approx_spectrum(fam, "m", 2.0 * std::numbers::pi / 16.0);
  bool one_punctual = false;
  int approximate = 0;
  for (const SpectrumCandidate& c : est.candidates) {
    if (std::abs(c.lambda - cplx(1.0, 0.0)) < 1e-9 && c.cls == SpectrumClass::Punctual)
      one_punctual = true;
    if (c.cls == SpectrumClass::Approximate) ++approximate;
  }
  CHECK(one_punctual);
  CHECK(approximate > 0);
}

TEST_CASE("non-unitary symbols are rejected by approx_spectrum") {
  RepFamily fam;
  fam.labels = {"x"};
  fam.sizes = {2, 3};
  fam.gens = {{2.0 * Mat::Identity(2, 2)}, {2.0 * Mat::Identity(3, 3)}};
  CHECK_THROWS_AS(approx_spectrum(fam, "x", 0.1), Error);
  try {
    approx_spectrum(fam, "x", 0.1);
  } catch (const Error& e) {
    CHECK(e.kind() == Err::NotUnitary);
  }
}

TEST_CASE("compact split separates stable from growing words") {
  GroupPtr s3 = builtin_group(BuiltinKind::Symmetric, 3);
  TablePtr t = character_table(s3);
  std::vector<UnitaryRep> models = irreducible_models(t);
  SymbolicModel m = make_symbolic(t, {2, kOmega, kOmega});
  RepFamily fam = truncation_family(m, models, {2, 3, 4});

  std::vector<AlgebraWord> words = {projection_word(*t, 0), projection_word(*t, 1), identity_word()};
  std::vector<SplitVerdict> verdicts = compact_split_estimate(fam, words);
  REQUIRE(verdicts.size() == 3);
  CHECK(verdicts[0] == SplitVerdict::Compact);     // finite rank 2 everywhere
  CHECK(verdicts[1] == SplitVerdict::Noncompact);  // rank t
  CHECK(verdicts[2] == SplitVerdict::Noncompact);  // rank = dim

  RepFamily two = truncation_family(m, models, {2, 3});
  CHECK_THROWS_AS(compact_split_estimate(two, words), Error);
}
