#pragma once

#include "grouprep/char_table.hpp"
#include "grouprep/model.hpp"
#include "grouprep/rep.hpp"
#include "grouprep/types.hpp"

#include <string>
#include <vector>

namespace grouprep {

// Star-polynomial over generator symbols: sum of coeffs[t] times the product
// of the factors in products[t]. A factor is a symbol label, with a trailing
// '*' selecting the adjoint; the empty product is the identity.
struct AlgebraWord {
  std::vector<cplx> coeffs;
  std::vector<std::vector<std::string>> products;
};

// Canonical printable form; equal strings mean textually equal words.
std::string word_key(const AlgebraWord& word);

AlgebraWord identity_word();

// Word with coefficient (n_i/|G|) * conj(chi_i(g)) on each element label, so
// its evaluation is the isotypic projection P_i.
AlgebraWord projection_word(const CharacterTable& table, int i);

Mat eval_word_on(const std::vector<std::string>& labels, const std::vector<Mat>& mats, int dim,
                 const AlgebraWord& word);

// Evaluation over a representation: symbols are group element labels.
Mat eval_word(const UnitaryRep& rep, const AlgebraWord& word);

// Family of labelled unitary matrices over increasing truncation sizes, the
// finite window a spectral or rank question is asked through. gens[s][j] is
// the matrix of symbol labels[j] at sizes[s].
struct RepFamily {
  std::vector<std::string> labels;
  std::vector<int> sizes;
  std::vector<std::vector<Mat>> gens;

  int dim_at(int s) const { return static_cast<int>(gens[static_cast<std::size_t>(s)][0].rows()); }
};

// Truncations of a symbolic model at each size; symbols are element labels.
RepFamily truncation_family(const SymbolicModel& model, const std::vector<UnitaryRep>& models,
                            const std::vector<int>& sizes);

// Cyclic shift on C^t at each size t, symbol "s": the finite window onto the
// bilateral shift generating the regular representation of Z.
RepFamily shift_family(const std::vector<int>& sizes);

enum class RankVerdict { Stable, Growing };

struct RankSignature {
  std::vector<std::string> word_keys;
  std::vector<int> sizes;
  std::vector<std::vector<int>> ranks;  // ranks[w][s]
  std::vector<RankVerdict> verdicts;
  std::vector<int> stable_ranks;  // rank at the top size when stable, else -1
};

// Numerical rank of every word at every size. Verdict per word: stable when
// the top two sizes agree, growing when ranks strictly increase, otherwise
// RankAmbiguous. Needs >= 2 strictly increasing sizes. A positive tol
// overrides the default rank cutoff.
RankSignature rank_signature(const RepFamily& fam, const std::vector<AlgebraWord>& words, double tol = -1.0);

bool aue_equivalent(const RankSignature& s1, const RankSignature& s2);

struct PerturbationReport {
  Mat u;
  double distance = 0.0;
  std::vector<double> element_norms;  // per enumeration index
  int iterations = 0;
  bool converged = true;
};

// Weighted sum of ||U pi1(g_n) U^H - pi2(g_n)||_op over the stored element
// enumeration (element order of the group file), weight 2^-n by default.
PerturbationReport perturbation_distance(const UnitaryRep& rep1, const UnitaryRep& rep2, const Mat& u,
                                         const std::vector<double>& weights = {});

// Breadth-first enumeration of generator words (empty word first; the
// alphabet is every symbol and its adjoint, in label order).
std::vector<std::vector<std::string>> bfs_words(const std::vector<std::string>& labels, int count);

// Distance between two generator-given families on the first `terms` words
// of the breadth-first enumeration, weight 2^-n.
PerturbationReport perturbation_distance_words(const std::vector<std::string>& labels,
                                               const std::vector<Mat>& gens1, const std::vector<Mat>& gens2,
                                               const Mat& u, int terms);

// Alternating Procrustes search for the conjugating unitary minimizing the
// perturbation distance: each step replaces U by the polar factor of the
// weighted aggregate sum_n w_n pi2(g_n) U pi1(g_n)^H. Multistart (identity,
// two commutant-averaged random starts, one plain random start), best result
// in operator norm wins and never exceeds the U = I baseline.
PerturbationReport minimize_perturbation(const UnitaryRep& rep1, const UnitaryRep& rep2, int iters,
                                         std::uint64_t seed);

enum class SpectrumClass { Punctual, Approximate, Absent };

struct SpectrumCandidate {
  cplx lambda;
  std::vector<double> residuals;  // sigma_min(pi(g) - lambda I) per size
  SpectrumClass cls = SpectrumClass::Absent;
};

struct SpectrumEstimate {
  std::vector<int> sizes;
  std::vector<std::vector<cplx>> eigenvalues;  // per size, sorted by (re, im)
  std::vector<SpectrumCandidate> candidates;
  double resolution = 0.0;
};

// Eigenvalues of the symbol's matrix at every size, bucketed on the unit
// circle at the given angular resolution (representative: the eigenvalue
// seen at the largest size in the bucket). Residuals are exact spectral
// distances (the matrices are normal). Classes: punctual-like when the
// residual stays <= 1e-8 at every size, approximate-like when the residual
// at the largest size is within the resolution and did not grow, absent
// otherwise.
SpectrumEstimate approx_spectrum(const RepFamily& fam, const std::string& symbol, double resolution);

enum class SplitVerdict { Compact, Noncompact };

// Per-word verdict over >= 3 sizes: compact-like when the numerical rank is
// the same at every size, noncompact-like when strictly growing, otherwise
// RankAmbiguous.
std::vector<SplitVerdict> compact_split_estimate(const RepFamily& fam, const std::vector<AlgebraWord>& words);

}  // namespace grouprep
