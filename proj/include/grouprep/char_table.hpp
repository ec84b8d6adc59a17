#pragma once

#include "grouprep/group.hpp"
#include "grouprep/types.hpp"

#include <memory>
#include <vector>

namespace grouprep {

// Complete list of irreducible characters of a finite group. Row order is
// canonical (degree ascending, ties by lexicographic comparison of the value
// sequence by (re, im), snapped to a 1e-9 grid), so irreducible labels are
// reproducible across runs and machines. The identity's class is column 0.
struct CharacterTable {
  GroupPtr group;
  ConjugacyClassPartition partition;
  Mat chi;                   // k x k, chi(i, j) = value of character i on class j
  std::vector<int> degrees;  // chi(i, 0) rounded

  int k() const { return static_cast<int>(degrees.size()); }
  cplx value(int i, int element) const { return chi(i, partition.class_of[element]); }
};

using TablePtr = std::shared_ptr<const CharacterTable>;

// Class-sum eigenvector method: assemble the class-algebra multiplication
// matrix for a random real weighting of the class sums, eigendecompose, and
// read each character off its common eigenvector. Retries with fresh weights
// (fixed internal seed sequence, at most 8 attempts) when eigenvalue gaps
// fall under 1e-7 or the orthogonality checks miss; the result does not
// depend on which attempt succeeds.
TablePtr character_table(GroupPtr g);

// Multiplicities of each irreducible inside the class function phi (given per
// element): m_i = (1/|G|) sum_g phi(g) * conj(chi_i(g)).
std::vector<int> decompose_character(const std::vector<cplx>& phi, const CharacterTable& table);

}  // namespace grouprep
