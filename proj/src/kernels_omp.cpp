#include "grouprep/kernels.hpp"

#include "grouprep/linalg.hpp"

#include <algorithm>
#include <cstddef>

namespace grouprep::kernels::omp {

namespace {

// Work is split into fixed-size chunks; each chunk partial is accumulated
// independently and the partials are folded in chunk order. The fold order
// therefore never depends on the thread count.
constexpr std::ptrdiff_t kChunk = 8;

std::ptrdiff_t chunk_count(std::size_t n) {
  return (static_cast<std::ptrdiff_t>(n) + kChunk - 1) / kChunk;
}

}  // namespace

Mat weighted_sum(const std::vector<Mat>& mats, const std::vector<cplx>& weights) {
  if (mats.empty()) return Mat();
  const std::ptrdiff_t nc = chunk_count(mats.size());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(mats.size());
  std::vector<Mat> partial(nc);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < nc; ++c) {
    Mat acc = Mat::Zero(mats[0].rows(), mats[0].cols());
    for (std::ptrdiff_t i = c * kChunk; i < std::min(n, (c + 1) * kChunk); ++i)
      acc.noalias() += weights[i] * mats[i];
    partial[c] = std::move(acc);
  }
  Mat acc = std::move(partial[0]);
  for (std::ptrdiff_t c = 1; c < nc; ++c) acc += partial[c];
  return acc;
}

Mat conj_average(const std::vector<Mat>& mats, const Mat& x) {
  if (mats.empty()) return Mat();
  const std::ptrdiff_t nc = chunk_count(mats.size());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(mats.size());
  std::vector<Mat> partial(nc);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < nc; ++c) {
    Mat acc = Mat::Zero(x.rows(), x.cols());
    for (std::ptrdiff_t i = c * kChunk; i < std::min(n, (c + 1) * kChunk); ++i)
      acc.noalias() += mats[i] * x * mats[i].adjoint();
    partial[c] = std::move(acc);
  }
  Mat acc = std::move(partial[0]);
  for (std::ptrdiff_t c = 1; c < nc; ++c) acc += partial[c];
  return acc / static_cast<double>(mats.size());
}

Mat procrustes_accum(const std::vector<Mat>& a, const std::vector<Mat>& b, const Mat& u,
                     const std::vector<double>& weights) {
  const std::ptrdiff_t nc = chunk_count(a.size());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.size());
  std::vector<Mat> partial(nc);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < nc; ++c) {
    Mat acc = Mat::Zero(u.rows(), u.cols());
    for (std::ptrdiff_t i = c * kChunk; i < std::min(n, (c + 1) * kChunk); ++i)
      acc.noalias() += weights[i] * (a[i] * u * b[i].adjoint());
    partial[c] = std::move(acc);
  }
  if (nc == 0) return Mat::Zero(u.rows(), u.cols());
  Mat acc = std::move(partial[0]);
  for (std::ptrdiff_t c = 1; c < nc; ++c) acc += partial[c];
  return acc;
}

std::vector<double> conj_defect_norms(const std::vector<Mat>& a, const std::vector<Mat>& b, const Mat& u) {
  std::vector<double> out(a.size());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = linalg::op_norm(u * b[i] * u.adjoint() - a[i]);
  return out;
}

Mat orbit_columns(const std::vector<Mat>& mats, const std::vector<Vec>& tuple) {
  if (mats.empty()) return Mat();
  const Eigen::Index d = mats[0].rows();
  const Eigen::Index n = static_cast<Eigen::Index>(tuple.size());
  Mat cols(d, static_cast<Eigen::Index>(mats.size()) * n);
  const std::ptrdiff_t ng = static_cast<std::ptrdiff_t>(mats.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t g = 0; g < ng; ++g)
    for (Eigen::Index i = 0; i < n; ++i) cols.col(static_cast<Eigen::Index>(g) * n + i) = mats[g] * tuple[i];
  return cols;
}

std::vector<double> batch_op_norm(const std::vector<Mat>& mats) {
  std::vector<double> out(mats.size());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(mats.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = linalg::op_norm(mats[i]);
  return out;
}

}  // namespace grouprep::kernels::omp
