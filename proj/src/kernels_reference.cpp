#include "grouprep/kernels.hpp"

#include "grouprep/linalg.hpp"

namespace grouprep::kernels {

Backend& backend() {
#ifdef _OPENMP
  static Backend b = Backend::Omp;
#else
  static Backend b = Backend::Reference;
#endif
  return b;
}

namespace reference {

Mat weighted_sum(const std::vector<Mat>& mats, const std::vector<cplx>& weights) {
  if (mats.empty()) return Mat();
  Mat acc = Mat::Zero(mats[0].rows(), mats[0].cols());
  for (std::size_t i = 0; i < mats.size(); ++i) acc.noalias() += weights[i] * mats[i];
  return acc;
}

Mat conj_average(const std::vector<Mat>& mats, const Mat& x) {
  if (mats.empty()) return Mat();
  Mat acc = Mat::Zero(x.rows(), x.cols());
  for (const Mat& m : mats) acc.noalias() += m * x * m.adjoint();
  return acc / static_cast<double>(mats.size());
}

Mat procrustes_accum(const std::vector<Mat>& a, const std::vector<Mat>& b, const Mat& u,
                     const std::vector<double>& weights) {
  Mat acc = Mat::Zero(u.rows(), u.cols());
  for (std::size_t i = 0; i < a.size(); ++i) acc.noalias() += weights[i] * (a[i] * u * b[i].adjoint());
  return acc;
}

std::vector<double> conj_defect_norms(const std::vector<Mat>& a, const std::vector<Mat>& b, const Mat& u) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = linalg::op_norm(u * b[i] * u.adjoint() - a[i]);
  return out;
}

Mat orbit_columns(const std::vector<Mat>& mats, const std::vector<Vec>& tuple) {
  if (mats.empty()) return Mat();
  const Eigen::Index d = mats[0].rows();
  const Eigen::Index n = static_cast<Eigen::Index>(tuple.size());
  Mat cols(d, static_cast<Eigen::Index>(mats.size()) * n);
  for (std::size_t g = 0; g < mats.size(); ++g)
    for (Eigen::Index i = 0; i < n; ++i) cols.col(static_cast<Eigen::Index>(g) * n + i) = mats[g] * tuple[i];
  return cols;
}

std::vector<double> batch_op_norm(const std::vector<Mat>& mats) {
  std::vector<double> out(mats.size());
  for (std::size_t i = 0; i < mats.size(); ++i) out[i] = linalg::op_norm(mats[i]);
  return out;
}

}  // namespace reference

Mat weighted_sum(const std::vector<Mat>& mats, const std::vector<cplx>& weights) {
  return backend() == Backend::Omp ? omp::weighted_sum(mats, weights) : reference::weighted_sum(mats, weights);
}

Mat conj_average(const std::vector<Mat>& mats, const Mat& x) {
  return backend() == Backend::Omp ? omp::conj_average(mats, x) : reference::conj_average(mats, x);
}

Mat procrustes_accum(const std::vector<Mat>& a, const std::vector<Mat>& b, const Mat& u,
                     const std::vector<double>& weights) {
  return backend() == Backend::Omp ? omp::procrustes_accum(a, b, u, weights)
                                   : reference::procrustes_accum(a, b, u, weights);
}

std::vector<double> conj_defect_norms(const std::vector<Mat>& a, const std::vector<Mat>& b, const Mat& u) {
  return backend() == Backend::Omp ? omp::conj_defect_norms(a, b, u) : reference::conj_defect_norms(a, b, u);
}

Mat orbit_columns(const std::vector<Mat>& mats, const std::vector<Vec>& tuple) {
  return backend() == Backend::Omp ? omp::orbit_columns(mats, tuple) : reference::orbit_columns(mats, tuple);
}

std::vector<double> batch_op_norm(const std::vector<Mat>& mats) {
  return backend() == Backend::Omp ? omp::batch_op_norm(mats) : reference::batch_op_norm(mats);
}

}  // namespace grouprep::kernels
