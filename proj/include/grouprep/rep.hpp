#pragma once

#include "grouprep/char_table.hpp"
#include "grouprep/group.hpp"
#include "grouprep/types.hpp"

#include <vector>

namespace grouprep {

struct UnitaryRep {
  GroupPtr group;
  int dim = 0;
  std::vector<Mat> mats;  // one matrix per element, element order

  const Mat& at(int g) const { return mats[static_cast<std::size_t>(g)]; }
};

struct RepVerification {
  double unitarity_defect = 0.0;
  double homomorphism_defect = 0.0;
  double identity_defect = 0.0;
  double tol = 0.0;
  bool pass = false;
};

struct IsotypicDecomposition {
  TablePtr table;
  std::vector<Mat> blocks;  // Q_i: dim x (n_i * m_i), orthonormal columns
  std::vector<int> mult;
  double residual_norm = 0.0;  // max_i op_norm(P_i - Q_i Q_i^H)
};

// The m_i irreducible copies of one isotypic block. copies[s] has orthonormal
// columns spanning a pi-invariant subspace; align[s] is the unitary
// intertwiner from the restriction on copies[0] to the restriction on
// copies[s], so intertwiner(s, t) = align[t] * align[s]^H maps copy s to t.
struct IrreducibleCopyList {
  int label = 0;
  std::vector<Mat> copies;
  std::vector<Mat> align;

  Mat intertwiner(int s, int t) const { return align[t] * align[s].adjoint(); }
  int count() const { return static_cast<int>(copies.size()); }
};

// Aligned isotypic frame: for each label i with multiplicity m_i, an
// orthonormal basis (column s*n_i + v = vector v of copy s) in which every
// pi(g) acts as rho_i(g) on each copy, rho_i being the fixed reference model.
// A vector's component in block i is described by the n_i x m_i coefficient
// matrix returned by coeff().
struct IsotypicFrame {
  TablePtr table;
  int dim = 0;
  std::vector<Mat> basis;
  std::vector<int> mult;

  Mat coeff(const Vec& x, int i) const {
    const int n = table->degrees[i];
    const Vec c = basis[i].adjoint() * x;
    return Eigen::Map<const Mat>(c.data(), n, mult[i]);
  }
};

UnitaryRep left_regular(GroupPtr g);

UnitaryRep direct_sum(const std::vector<UnitaryRep>& reps);

// Defect report; never throws. Homomorphism pairs are exhaustive for
// |G| <= 16, otherwise all generator-involving pairs plus 10*|G| seeded
// random pairs.
RepVerification verify_rep(const UnitaryRep& rep, double tol);

// Traces per element, verified constant on conjugacy classes within 1e-8.
std::vector<cplx> rep_character(const UnitaryRep& rep);

// P_i = (n_i/|G|) sum_g conj(chi_i(g)) pi(g).
Mat isotypic_projection(const UnitaryRep& rep, int i, const CharacterTable& table);

IsotypicDecomposition decompose(const UnitaryRep& rep, TablePtr table, double tol = 1e-7);

// Randomized-commutant split: average a random Hermitian matrix over the
// restricted representation to get a generic commutant element, whose
// eigenspaces (eigenvalues come in groups of n_i) are the irreducible copies.
// Retries with fresh randomness on degenerate spectra; SplitDegenerate after
// 8 attempts.
IrreducibleCopyList split_isotypic(const UnitaryRep& rep, const IsotypicDecomposition& dec, int i,
                                   std::uint64_t seed);

// One explicit model W_i per irreducible, extracted from the left regular
// representation; the character of models[i] is row i of the table.
std::vector<UnitaryRep> irreducible_models(TablePtr table);

// Frame aligned to the given reference models (normally irreducible_models).
IsotypicFrame frame_of(const UnitaryRep& rep, TablePtr table, const std::vector<UnitaryRep>& models,
                       std::uint64_t seed, double tol = 1e-7);

UnitaryRep conjugated(const UnitaryRep& rep, const Mat& u);

// Direct sum with mult[i] copies of models[i], conjugated by a random
// unitary.
UnitaryRep random_rep(TablePtr table, const std::vector<UnitaryRep>& models, const std::vector<int>& mult,
                      std::uint64_t seed);

// Least-squares intertwiner T with T * a(g) = b(g) * T over the given
// matrix pairs, projected to the nearest unitary. Returns the residual of the
// least-squares system through *residual when non-null.
Mat unitary_intertwiner(const std::vector<Mat>& a, const std::vector<Mat>& b, double* residual = nullptr);

}  // namespace grouprep
