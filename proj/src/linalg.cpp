#include "grouprep/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace grouprep::linalg {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

Eigen::VectorXd singular_values(const Mat& a) {
  return Eigen::JacobiSVD<Mat>(a).singularValues();
}

}  // namespace

double op_norm(const Mat& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  if (std::max(a.rows(), a.cols()) <= 512) {
    return singular_values(a)(0);
  }
  // Power iteration on A*A; the iterate is seeded deterministically.
  Vec v = Vec::Ones(a.cols());
  v.normalize();
  double prev = 0.0;
  for (int it = 0; it < 1000; ++it) {
    Vec w = a.adjoint() * (a * v);
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;
    v = w / nw;
    const double est = std::sqrt(nw);
    if (it > 0 && std::abs(est - prev) <= 1e-10 * std::max(est, 1.0)) return est;
    prev = est;
  }
  return prev;
}

int numerical_rank(const Mat& a, double tol) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  const Eigen::VectorXd sv = singular_values(a);
  const double smax = sv(0);
  if (smax == 0.0) return 0;
  const double cut = tol > 0.0 ? tol : static_cast<double>(std::max(a.rows(), a.cols())) * kEps * smax;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    const double s = sv(i);
    if (s >= cut && s < 10.0 * cut) {
      std::ostringstream os;
      os << "singular value " << s << " inside the ambiguous band [" << cut << ", " << 10.0 * cut << ")";
      fail(Err::RankAmbiguous, os.str());
    }
    if (s >= 10.0 * cut) ++rank;
  }
  return rank;
}

Mat polar_unitary(const Mat& a) {
  if (a.rows() != a.cols()) fail(Err::DimMismatch, "polar factor of a non-square matrix");
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

Mat orthonormalize_tracked(const Mat& cols, double drop_tol, const Mat* against, std::vector<int>* kept_out) {
  const Eigen::Index d = cols.rows();
  Mat basis(d, cols.cols());
  Eigen::Index kept = 0;
  if (kept_out) kept_out->clear();
  for (Eigen::Index c = 0; c < cols.cols(); ++c) {
    Vec v = cols.col(c);
    for (int pass = 0; pass < 2; ++pass) {
      if (against && against->cols() > 0) v -= (*against) * (against->adjoint() * v);
      if (kept > 0) {
        auto q = basis.leftCols(kept);
        v -= q * (q.adjoint() * v);
      }
    }
    const double nv = v.norm();
    if (nv > drop_tol) {
      basis.col(kept++) = v / nv;
      if (kept_out) kept_out->push_back(static_cast<int>(c));
    }
  }
  return basis.leftCols(kept);
}

Mat orthonormalize(const Mat& cols, double drop_tol, const Mat* against) {
  return orthonormalize_tracked(cols, drop_tol, against, nullptr);
}

Mat nullspace(const Mat& a, double tol) {
  if (a.cols() == 0) return Mat(a.cols(), 0);
  if (a.rows() == 0) return Mat::Identity(a.cols(), a.cols());
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
  const Eigen::VectorXd sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  const double cut = tol > 0.0 ? tol : static_cast<double>(std::max(a.rows(), a.cols())) * kEps * std::max(smax, 1.0);
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > cut) ++rank;
  return svd.matrixV().rightCols(a.cols() - rank);
}

std::vector<cplx> eigenvalues(const Mat& a) {
  Eigen::ComplexEigenSolver<Mat> es(a, false);
  if (es.info() != Eigen::Success) fail(Err::DegenerateEigenSplit, "eigenvalue iteration failed");
  std::vector<cplx> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(out.begin(), out.end(), [](const cplx& x, const cplx& y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  return out;
}

void herm_eig(const Mat& a, RVec& evals, Mat& evecs) {
  Eigen::SelfAdjointEigenSolver<Mat> es(a);
  if (es.info() != Eigen::Success) fail(Err::DegenerateEigenSplit, "Hermitian eigensolver failed");
  evals = es.eigenvalues();
  evecs = es.eigenvectors();
}

Mat random_unitary(int d, Rng& rng) {
  Mat a(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) a(i, j) = rng.cnormal();
  Eigen::HouseholderQR<Mat> qr(a);
  Mat q = qr.householderQ();
  // Fix the phase ambiguity of QR so the result depends only on the seed.
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const cplx rj = r(j, j);
    const double m = std::abs(rj);
    if (m > 0.0) q.col(j) *= rj / m;
  }
  return q;
}

Mat random_hermitian(int d, Rng& rng) {
  Mat a(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) a(i, j) = rng.cnormal();
  return 0.5 * (a + Mat(a.adjoint()));
}

Vec random_vector(int d, Rng& rng) {
  Vec v(d);
  for (int i = 0; i < d; ++i) v(i) = rng.cnormal();
  return v;
}

}  // namespace grouprep::linalg
