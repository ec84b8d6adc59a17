#pragma once

#include "grouprep/types.hpp"

#include <vector>

namespace grouprep::linalg {

// Largest singular value. Exact SVD for dims <= 512, power iteration on A*A
// with 1e-10 relative convergence above.
double op_norm(const Mat& a);

// Count of singular values above the rank threshold. The default threshold is
// max(rows, cols) * eps * sigma_max; a positive tol overrides it as an
// absolute cutoff. Any singular value inside [threshold, 10*threshold) is
// borderline and raises RankAmbiguous instead of guessing a rank.
int numerical_rank(const Mat& a, double tol = -1.0);

// Unitary factor of the polar decomposition, i.e. the unitary closest to a in
// Frobenius norm. Requires a square full-rank input.
Mat polar_unitary(const Mat& a);

// Orthonormal basis of the columns of `cols` modulo `against` (columns of
// `against` must already be orthonormal). Modified Gram-Schmidt; pivots whose
// residual norm falls below drop_tol are dropped. Deterministic: columns are
// processed left to right.
Mat orthonormalize(const Mat& cols, double drop_tol, const Mat* against = nullptr);

// Same recipe as orthonormalize, additionally recording the indices of the
// source columns that survived the pivot drop.
Mat orthonormalize_tracked(const Mat& cols, double drop_tol, const Mat* against, std::vector<int>* kept);

// Orthonormal basis of the kernel of a (right singular vectors with singular
// value <= tol_scale * sigma_max * max(dim) * eps if tol < 0, else <= tol).
Mat nullspace(const Mat& a, double tol = -1.0);

std::vector<cplx> eigenvalues(const Mat& a);

// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
void herm_eig(const Mat& a, RVec& evals, Mat& evecs);

Mat random_unitary(int d, Rng& rng);
Mat random_hermitian(int d, Rng& rng);
Vec random_vector(int d, Rng& rng);

}  // namespace grouprep::linalg
