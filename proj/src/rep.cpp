#include "grouprep/rep.hpp"

#include "grouprep/kernels.hpp"
#include "grouprep/linalg.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace grouprep {

namespace {

void require_same_group(const FiniteGroup& a, const FiniteGroup& b, const char* what) {
  if (!same_group(a, b)) fail(Err::GroupMismatch, std::string(what) + " over different groups");
}

}  // namespace

UnitaryRep left_regular(GroupPtr g) {
  if (!g) fail(Err::InvalidArgument, "null group");
  const int n = g->order();
  UnitaryRep rep;
  rep.group = g;
  rep.dim = n;
  rep.mats.reserve(n);
  for (int h = 0; h < n; ++h) {
    Mat m = Mat::Zero(n, n);
    for (int x = 0; x < n; ++x) m(g->mul(h, x), x) = 1.0;
    rep.mats.push_back(std::move(m));
  }
  return rep;
}

UnitaryRep direct_sum(const std::vector<UnitaryRep>& reps) {
  if (reps.empty()) fail(Err::InvalidArgument, "direct sum of zero representations");
  for (const auto& r : reps) require_same_group(*reps[0].group, *r.group, "direct sum");
  UnitaryRep out;
  out.group = reps[0].group;
  out.dim = 0;
  for (const auto& r : reps) out.dim += r.dim;
  const int n = out.group->order();
  out.mats.reserve(n);
  for (int g = 0; g < n; ++g) {
    Mat m = Mat::Zero(out.dim, out.dim);
    int off = 0;
    for (const auto& r : reps) {
      m.block(off, off, r.dim, r.dim) = r.at(g);
      off += r.dim;
    }
    out.mats.push_back(std::move(m));
  }
  return out;
}

RepVerification verify_rep(const UnitaryRep& rep, double tol) {
  RepVerification v;
  v.tol = tol;
  const FiniteGroup& g = *rep.group;
  const int n = g.order();
  const Mat id = Mat::Identity(rep.dim, rep.dim);

  v.identity_defect = linalg::op_norm(rep.at(g.identity) - id);

  std::vector<Mat> unit_defects(n);
  for (int x = 0; x < n; ++x) unit_defects[x] = rep.at(x).adjoint() * rep.at(x) - id;
  const auto unit_norms = kernels::batch_op_norm(unit_defects);
  v.unitarity_defect = unit_norms.empty() ? 0.0 : *std::max_element(unit_norms.begin(), unit_norms.end());

  std::vector<std::pair<int, int>> pairs;
  if (n <= 16) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) pairs.emplace_back(a, b);
  } else {
    for (int s : g.generators)
      for (int b = 0; b < n; ++b) {
        pairs.emplace_back(s, b);
        pairs.emplace_back(b, s);
      }
    Rng rng(0xa5a321eull);
    for (int k = 0; k < 10 * n; ++k) pairs.emplace_back(rng.uniform_int(n), rng.uniform_int(n));
  }
  std::vector<Mat> hom_defects(pairs.size());
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto [a, b] = pairs[p];
    hom_defects[p] = rep.at(a) * rep.at(b) - rep.at(g.mul(a, b));
  }
  const auto hom_norms = kernels::batch_op_norm(hom_defects);
  v.homomorphism_defect = hom_norms.empty() ? 0.0 : *std::max_element(hom_norms.begin(), hom_norms.end());

  v.pass = v.identity_defect <= tol && v.unitarity_defect <= tol && v.homomorphism_defect <= tol;
  return v;
}

std::vector<cplx> rep_character(const UnitaryRep& rep) {
  const FiniteGroup& g = *rep.group;
  std::vector<cplx> chi(g.order());
  for (int x = 0; x < g.order(); ++x) chi[x] = rep.at(x).trace();
  const auto part = conjugacy_classes(g);
  for (const auto& cls : part.classes)
    for (int x : cls)
      if (std::abs(chi[x] - chi[cls[0]]) > 1e-8) {
        std::ostringstream os;
        os << "trace differs on conjugate elements " << cls[0] << " and " << x;
        fail(Err::NotClassConstant, os.str());
      }
  return chi;
}

Mat isotypic_projection(const UnitaryRep& rep, int i, const CharacterTable& table) {
  if (i < 0 || i >= table.k()) fail(Err::InvalidArgument, "irreducible label out of range");
  require_same_group(*rep.group, *table.group, "projection");
  const FiniteGroup& g = *rep.group;
  std::vector<cplx> w(g.order());
  const double scale = static_cast<double>(table.degrees[i]) / static_cast<double>(g.order());
  for (int x = 0; x < g.order(); ++x) w[x] = scale * std::conj(table.value(i, x));
  return kernels::weighted_sum(rep.mats, w);
}

IsotypicDecomposition decompose(const UnitaryRep& rep, TablePtr table, double tol) {
  const auto check = verify_rep(rep, tol);
  if (!check.pass) {
    std::ostringstream os;
    os << "input fails verify_rep at tol " << tol << " (unitarity " << check.unitarity_defect
       << ", homomorphism " << check.homomorphism_defect << ", identity " << check.identity_defect << ")";
    fail(Err::InvalidArgument, os.str());
  }
  const int k = table->k();
  IsotypicDecomposition dec;
  dec.table = table;
  dec.blocks.resize(k);
  dec.mult.resize(k);

  const auto char_mult = decompose_character(rep_character(rep), *table);

  double residual = 0.0;
  for (int i = 0; i < k; ++i) {
    const Mat p = isotypic_projection(rep, i, *table);
    const int rank = linalg::numerical_rank(p, tol);
    const int n_i = table->degrees[i];
    if (rank % n_i != 0) {
      std::ostringstream os;
      os << "rank(P_" << i << ") = " << rank << " is not a multiple of the degree " << n_i;
      fail(Err::RankAmbiguous, os.str());
    }
    dec.mult[i] = rank / n_i;
    if (dec.mult[i] != char_mult[i]) {
      std::ostringstream os;
      os << "projection rank gives multiplicity " << dec.mult[i] << " for label " << i
         << " but the character decomposition gives " << char_mult[i];
      fail(Err::RankAmbiguous, os.str());
    }
    Eigen::JacobiSVD<Mat> svd(p, Eigen::ComputeThinU);
    dec.blocks[i] = svd.matrixU().leftCols(rank);
    residual = std::max(residual, linalg::op_norm(p - dec.blocks[i] * dec.blocks[i].adjoint()));
  }
  dec.residual_norm = residual;
  return dec;
}

IrreducibleCopyList split_isotypic(const UnitaryRep& rep, const IsotypicDecomposition& dec, int i,
                                   std::uint64_t seed) {
  const CharacterTable& table = *dec.table;
  if (i < 0 || i >= table.k()) fail(Err::InvalidArgument, "irreducible label out of range");
  const int m = dec.mult[i];
  if (m < 1) fail(Err::InvalidArgument, "label " + std::to_string(i) + " has multiplicity 0");
  const int n_i = table.degrees[i];
  const Mat& q = dec.blocks[i];
  const int nm = n_i * m;

  std::vector<Mat> restricted(rep.mats.size());
  for (std::size_t g = 0; g < rep.mats.size(); ++g) restricted[g] = q.adjoint() * rep.mats[g] * q;

  IrreducibleCopyList out;
  out.label = i;
  for (int attempt = 0; attempt < 8; ++attempt) {
    Rng rng(seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(attempt + 1));
    const Mat x = kernels::conj_average(restricted, linalg::random_hermitian(nm, rng));
    RVec evals;
    Mat evecs;
    linalg::herm_eig(x, evals, evecs);

    const double scale = std::max(std::abs(evals(0)), std::abs(evals(nm - 1))) + 1.0;
    std::vector<int> starts = {0};
    for (int j = 1; j < nm; ++j)
      if (evals(j) - evals(j - 1) > 1e-6 * scale) starts.push_back(j);
    starts.push_back(nm);

    bool shape_ok = static_cast<int>(starts.size()) == m + 1;
    for (std::size_t c = 0; shape_ok && c + 1 < starts.size(); ++c)
      shape_ok = starts[c + 1] - starts[c] == n_i;
    if (!shape_ok) continue;

    out.copies.clear();
    for (int s = 0; s < m; ++s) out.copies.push_back(q * evecs.middleCols(starts[s], n_i));

    // Align every copy to copy 0.
    out.align.clear();
    bool aligned = true;
    for (int s = 0; s < m && aligned; ++s) {
      if (s == 0) {
        out.align.push_back(Mat::Identity(n_i, n_i));
        continue;
      }
      std::vector<Mat> rho0(rep.mats.size()), rhos(rep.mats.size());
      for (std::size_t g = 0; g < rep.mats.size(); ++g) {
        rho0[g] = out.copies[0].adjoint() * rep.mats[g] * out.copies[0];
        rhos[g] = out.copies[s].adjoint() * rep.mats[g] * out.copies[s];
      }
      double res = 0.0;
      Mat t = unitary_intertwiner(rho0, rhos, &res);
      if (res > 1e-6) {
        aligned = false;
        break;
      }
      out.align.push_back(std::move(t));
    }
    if (aligned) return out;
  }
  fail(Err::SplitDegenerate, "commutant sample stayed degenerate after 8 reseedings for label " + std::to_string(i));
}

Mat unitary_intertwiner(const std::vector<Mat>& a, const std::vector<Mat>& b, double* residual) {
  if (a.size() != b.size() || a.empty()) fail(Err::InvalidArgument, "intertwiner needs matched matrix lists");
  const Eigen::Index n = a[0].rows();
  Mat k(static_cast<Eigen::Index>(a.size()) * n * n, n * n);
  const Mat id = Mat::Identity(n, n);
  for (std::size_t g = 0; g < a.size(); ++g) {
    // vec(T a_g - b_g T) = (a_g^T (x) I - I (x) b_g) vec(T)
    Mat block = Mat::Zero(n * n, n * n);
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = 0; q < n; ++q)
        block.block(q * n, p * n, n, n) = a[g](p, q) * id;
    for (Eigen::Index c = 0; c < n; ++c) block.block(c * n, c * n, n, n) -= b[g];
    k.middleRows(static_cast<Eigen::Index>(g) * n * n, n * n) = block;
  }
  Eigen::JacobiSVD<Mat> svd(k, Eigen::ComputeThinV);
  const Vec t_vec = svd.matrixV().col(n * n - 1);
  if (residual) *residual = svd.singularValues()(n * n - 1);
  const Mat t = Eigen::Map<const Mat>(t_vec.data(), n, n);
  return linalg::polar_unitary(t);
}

std::vector<UnitaryRep> irreducible_models(TablePtr table) {
  GroupPtr g = table->group;
  const UnitaryRep lr = left_regular(g);
  const auto dec = decompose(lr, table, 1e-7);
  std::vector<UnitaryRep> models;
  models.reserve(table->k());
  for (int i = 0; i < table->k(); ++i) {
    const auto copies = split_isotypic(lr, dec, i, 0xf00d + static_cast<std::uint64_t>(i));
    const Mat& c = copies.copies[0];
    UnitaryRep w;
    w.group = g;
    w.dim = table->degrees[i];
    w.mats.reserve(lr.mats.size());
    for (const Mat& m : lr.mats) w.mats.push_back(c.adjoint() * m * c);
    models.push_back(std::move(w));
  }
  return models;
}

IsotypicFrame frame_of(const UnitaryRep& rep, TablePtr table, const std::vector<UnitaryRep>& models,
                       std::uint64_t seed, double tol) {
  const auto dec = decompose(rep, table, tol);
  IsotypicFrame frame;
  frame.table = table;
  frame.dim = rep.dim;
  frame.mult = dec.mult;
  frame.basis.resize(table->k());
  for (int i = 0; i < table->k(); ++i) {
    const int n_i = table->degrees[i];
    frame.basis[i] = Mat(rep.dim, n_i * dec.mult[i]);
    if (dec.mult[i] == 0) continue;
    const auto copies = split_isotypic(rep, dec, i, seed + 0x51ab * static_cast<std::uint64_t>(i + 1));
    for (int s = 0; s < copies.count(); ++s) {
      std::vector<Mat> rho(rep.mats.size());
      for (std::size_t g = 0; g < rep.mats.size(); ++g)
        rho[g] = copies.copies[s].adjoint() * rep.mats[g] * copies.copies[s];
      double res = 0.0;
      const Mat a = unitary_intertwiner(models[i].mats, rho, &res);
      if (res > 1e-6)
        fail(Err::SplitDegenerate, "copy of label " + std::to_string(i) + " does not match the reference model");
      frame.basis[i].middleCols(s * n_i, n_i) = copies.copies[s] * a;
    }
  }
  return frame;
}

UnitaryRep conjugated(const UnitaryRep& rep, const Mat& u) {
  if (u.rows() != rep.dim || u.cols() != rep.dim) fail(Err::DimMismatch, "conjugator has wrong shape");
  UnitaryRep out;
  out.group = rep.group;
  out.dim = rep.dim;
  out.mats.reserve(rep.mats.size());
  for (const Mat& m : rep.mats) out.mats.push_back(u * m * u.adjoint());
  return out;
}

UnitaryRep random_rep(TablePtr table, const std::vector<UnitaryRep>& models, const std::vector<int>& mult,
                      std::uint64_t seed) {
  std::vector<UnitaryRep> parts;
  for (int i = 0; i < table->k(); ++i)
    for (int c = 0; c < mult[i]; ++c) parts.push_back(models[i]);
  if (parts.empty()) fail(Err::InvalidArgument, "empty multiplicity vector");
  UnitaryRep sum = direct_sum(parts);
  Rng rng(seed);
  return conjugated(sum, linalg::random_unitary(sum.dim, rng));
}

}  // namespace grouprep
