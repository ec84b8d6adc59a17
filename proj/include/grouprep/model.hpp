#pragma once

#include "grouprep/char_table.hpp"
#include "grouprep/rep.hpp"
#include "grouprep/types.hpp"

#include <vector>

namespace grouprep {

// Multiplicity value for an infinite (omega) component.
constexpr int kOmega = -1;

inline bool is_omega(int m) { return m == kOmega; }

// Separable model of the theory, described by its complete isomorphism
// invariant: the multiplicity of each irreducible, a natural number or
// omega. At least one entry must be omega.
struct SymbolicModel {
  TablePtr table;
  std::vector<int> mult;
};

SymbolicModel make_symbolic(TablePtr table, std::vector<int> mult);

struct BlockTag {
  int label = 0;
  int copy = 0;
  bool infinite_origin = false;
};

// Finite stand-in for a symbolic model: every omega entry is replaced by t
// explicit copies. Blocks are laid out label-major, each block carrying the
// reference model matrices verbatim, so the isotypic frame is exact by
// construction. Tags record which blocks stand in for infinite components.
struct Truncation {
  SymbolicModel model;
  int t = 1;
  UnitaryRep rep;
  std::vector<BlockTag> tags;
  std::vector<int> offsets;  // row offset of each block
  IsotypicFrame frame;

  // Orthonormal basis (identity columns) of all finite-origin blocks.
  Mat finite_basis() const;
};

Truncation truncate(const SymbolicModel& model, int t, const std::vector<UnitaryRep>& models);

// Gram tensor of the orbit of a tuple: gamma[(g,i),(h,j)] = <pi(g)a_i,
// pi(h)a_j> with flat index g*n + i (conjugate-linear in the first slot).
struct OrbitGram {
  int n = 0;
  Mat gamma;
};

OrbitGram orbit_gram(const UnitaryRep& rep, const std::vector<Vec>& tuple);

// Quantifier-free type equality over the empty set: entrywise agreement of
// the two orbit Gram tensors within tol.
bool qftp_equal(const UnitaryRep& rep, const std::vector<Vec>& a, const std::vector<Vec>& b, double tol,
                double* defect = nullptr);

SymbolicModel symbolic_of(const UnitaryRep& rep, TablePtr table, const std::vector<int>& infinite_labels);

bool elementarily_equivalent(const SymbolicModel& m1, const SymbolicModel& m2);

// Entrywise multiplicity comparison in the omega-absorbing order.
bool embeds(const SymbolicModel& m1, const SymbolicModel& m2);

bool is_companion_model(const SymbolicModel& m);

// Unitary U with U a_j ~ b_j and U pi(g) ~ pi(g) U, built blockwise in the
// frame: inside each isotypic block the stacked coefficient matrices of the
// two tuples are matched by a multiplicity-space unitary obtained from a
// shared Gram-Schmidt recipe (pivot drop 1e-8), extended by pairing the
// orthogonal complements. TypesDiffer when the orbit Grams disagree at tol;
// InsufficientRoom when the pivot patterns cannot be matched.
Mat build_intertwiner(const UnitaryRep& rep, const IsotypicFrame& frame, const std::vector<Vec>& a,
                      const std::vector<Vec>& b, double tol);

Mat build_intertwiner(const Truncation& tr, const std::vector<Vec>& a, const std::vector<Vec>& b, double tol);

enum class ClosureMode { Dcl, Acl };

// Orthonormal basis of the orbit span of A (Gram-Schmidt over pi(g)a columns,
// drop tolerance 1e-10); acl mode appends the finite-origin block bases.
// The plain-rep overload rejects acl (no origin tags).
Mat closure_basis(const UnitaryRep& rep, const std::vector<Vec>& a, ClosureMode mode);
Mat closure_basis(const Truncation& tr, const std::vector<Vec>& a, ClosureMode mode);

// True when projecting each a_j onto acl(B u C) agrees with projecting onto
// acl(C) within tol. The plain-rep overload treats the finite part as empty.
bool is_independent(const UnitaryRep& rep, const std::vector<Vec>& a, const std::vector<Vec>& b,
                    const std::vector<Vec>& c, double tol, double* defect = nullptr);
bool is_independent(const Truncation& tr, const std::vector<Vec>& a, const std::vector<Vec>& b,
                    const std::vector<Vec>& c, double tol, double* defect = nullptr);

// Componentwise variant comparing the projections of every P_i a_j.
bool is_independent_components(const Truncation& tr, const std::vector<Vec>& a, const std::vector<Vec>& b,
                               const std::vector<Vec>& c, double tol, double* defect = nullptr);

// Extension of the type of v over C that does not fork over C: keeps the
// projection onto acl(C) and relocates the remainder into fresh multiplicity
// directions orthogonal to acl(C u B), chosen from the seed. InsufficientRoom
// when some omega block lacks enough unused copies.
Vec nonforking_extension(const Truncation& tr, const Vec& v, const std::vector<Vec>& c,
                         const std::vector<Vec>& b, std::uint64_t seed);

struct PairModel {
  SymbolicModel big;
  SymbolicModel small;
};

// Validates the belle-paire constraints: same group, small <= big entrywise
// in the omega-absorbing order, and equality on every finite entry of big.
PairModel make_pair(SymbolicModel big, SymbolicModel small);

bool pair_isomorphic(const PairModel& p1, const PairModel& p2);

}  // namespace grouprep
