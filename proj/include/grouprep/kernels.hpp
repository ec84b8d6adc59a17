#pragma once

#include "grouprep/types.hpp"

#include <vector>

// Batch linear-algebra kernels shared by the decomposition and perturbation
// code. Two implementations with identical signatures: kernels::reference is
// the plain serial version kept as the correctness baseline; kernels::omp
// parallelizes over group elements / work items. Reductions in the omp
// variant accumulate fixed-size chunk partials and fold them in chunk order,
// so results are bit-identical for any thread count (they may differ from the
// reference by roundoff only). The top-level wrappers dispatch on a runtime
// backend switch; bench-kernels and the comparison tests drive both.

namespace grouprep::kernels {

enum class Backend { Reference, Omp };

Backend& backend();

namespace reference {
Mat weighted_sum(const std::vector<Mat>& mats, const std::vector<cplx>& weights);
Mat conj_average(const std::vector<Mat>& mats, const Mat& x);
Mat procrustes_accum(const std::vector<Mat>& a, const std::vector<Mat>& b, const Mat& u,
                     const std::vector<double>& weights);
std::vector<double> conj_defect_norms(const std::vector<Mat>& a, const std::vector<Mat>& b, const Mat& u);
Mat orbit_columns(const std::vector<Mat>& mats, const std::vector<Vec>& tuple);
std::vector<double> batch_op_norm(const std::vector<Mat>& mats);
}  // namespace reference

namespace omp {
Mat weighted_sum(const std::vector<Mat>& mats, const std::vector<cplx>& weights);
Mat conj_average(const std::vector<Mat>& mats, const Mat& x);
Mat procrustes_accum(const std::vector<Mat>& a, const std::vector<Mat>& b, const Mat& u,
                     const std::vector<double>& weights);
std::vector<double> conj_defect_norms(const std::vector<Mat>& a, const std::vector<Mat>& b, const Mat& u);
Mat orbit_columns(const std::vector<Mat>& mats, const std::vector<Vec>& tuple);
std::vector<double> batch_op_norm(const std::vector<Mat>& mats);
}  // namespace omp

// Sum of weights[i] * mats[i].
Mat weighted_sum(const std::vector<Mat>& mats, const std::vector<cplx>& weights);

// Average of mats[i] * x * mats[i]^H; for unitary rep matrices this projects
// x onto the commutant of the representation.
Mat conj_average(const std::vector<Mat>& mats, const Mat& x);

// Sum of weights[i] * a[i] * u * b[i]^H (the Procrustes aggregate of the
// perturbation objective).
Mat procrustes_accum(const std::vector<Mat>& a, const std::vector<Mat>& b, const Mat& u,
                     const std::vector<double>& weights);

// Per-index operator norms of u * b[i] * u^H - a[i].
std::vector<double> conj_defect_norms(const std::vector<Mat>& a, const std::vector<Mat>& b, const Mat& u);

// d x (N*n) matrix whose column g*n + i is mats[g] * tuple[i].
Mat orbit_columns(const std::vector<Mat>& mats, const std::vector<Vec>& tuple);

std::vector<double> batch_op_norm(const std::vector<Mat>& mats);

}  // namespace grouprep::kernels
