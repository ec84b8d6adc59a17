#include "grouprep/model.hpp"

#include "grouprep/kernels.hpp"
#include "grouprep/linalg.hpp"

#include <algorithm>
#include <sstream>
#include <utility>
#include <vector>

namespace grouprep {

namespace {

void check_vectors(const UnitaryRep& rep, const std::vector<Vec>& vs, const char* what) {
  for (std::size_t j = 0; j < vs.size(); ++j) {
    if (vs[j].size() != rep.dim) {
      std::ostringstream os;
      os << what << " vector " << j << " has dimension " << vs[j].size() << ", the representation has "
         << rep.dim;
      fail(Err::DimensionMismatch, os.str());
    }
  }
}

std::vector<Vec> joined(const std::vector<Vec>& x, const std::vector<Vec>& y) {
  std::vector<Vec> out = x;
  out.insert(out.end(), y.begin(), y.end());
  return out;
}

Vec project_onto(const Mat& basis, const Vec& v) {
  if (basis.cols() == 0) return Vec::Zero(v.size());
  return basis * (basis.adjoint() * v);
}

bool has_omega(const std::vector<int>& mult) {
  return std::any_of(mult.begin(), mult.end(), [](int m) { return is_omega(m); });
}

// Coefficient matrices of the tuple in block i, stacked vertically (one
// n-row band per tuple entry).
Mat stacked_coeffs(const IsotypicFrame& frame, const std::vector<Vec>& tuple, int i) {
  const int n = frame.table->degrees[i];
  Mat stack(static_cast<Eigen::Index>(tuple.size()) * n, frame.mult[i]);
  for (std::size_t j = 0; j < tuple.size(); ++j) stack.middleRows(static_cast<Eigen::Index>(j) * n, n) = frame.coeff(tuple[j], i);
  return stack;
}

// Pads an orthonormal set to a full orthonormal basis of its column space's
// ambient dimension, drawing completion candidates from the identity.
Mat completed(const Mat& part) {
  const Eigen::Index m = part.rows();
  const Mat extra = linalg::orthonormalize(Mat::Identity(m, m), 1e-6, &part);
  if (part.cols() + extra.cols() != m) fail(Err::SplitDegenerate, "orthonormal completion fell short");
  Mat full(m, m);
  full << part, extra;
  return full;
}

// Unitary w with stack_a * w ~ stack_b, valid when the two stacks have equal
// row Grams: orthonormalize the (transposed) rows of both stacks by the same
// pivot recipe and pair the resulting bases, complements included.
Mat match_rows_unitary(const Mat& stack_a, const Mat& stack_b, int label) {
  constexpr double kPivot = 1e-8;
  std::vector<int> kept_a;
  std::vector<int> kept_b;
  const Mat ea = linalg::orthonormalize_tracked(stack_a.transpose(), kPivot, nullptr, &kept_a);
  const Mat eb = linalg::orthonormalize_tracked(stack_b.transpose(), kPivot, nullptr, &kept_b);
  if (kept_a != kept_b) {
    std::ostringstream os;
    os << "coefficient pivot patterns disagree in isotypic block " << label;
    fail(Err::InsufficientRoom, os.str());
  }
  const Mat afull = completed(ea);
  const Mat bfull = completed(eb);
  return afull.conjugate() * bfull.transpose();
}

}  // namespace

SymbolicModel make_symbolic(TablePtr table, std::vector<int> mult) {
  if (!table) fail(Err::InvalidArgument, "symbolic model needs a character table");
  if (static_cast<int>(mult.size()) != table->k()) {
    std::ostringstream os;
    os << "multiplicity list has " << mult.size() << " entries, the table has " << table->k()
       << " irreducibles";
    fail(Err::InvalidArgument, os.str());
  }
  for (std::size_t i = 0; i < mult.size(); ++i) {
    if (mult[i] < 0 && !is_omega(mult[i])) {
      std::ostringstream os;
      os << "multiplicity of label " << i << " is negative";
      fail(Err::InvalidArgument, os.str());
    }
  }
  if (!has_omega(mult)) fail(Err::EmptyInfinitePart, "no label has multiplicity omega");
  return SymbolicModel{std::move(table), std::move(mult)};
}

Mat Truncation::finite_basis() const {
  const CharacterTable& table = *model.table;
  int fdim = 0;
  for (const BlockTag& tag : tags)
    if (!tag.infinite_origin) fdim += table.degrees[tag.label];
  Mat f = Mat::Zero(rep.dim, fdim);
  int c = 0;
  for (std::size_t b = 0; b < tags.size(); ++b) {
    if (tags[b].infinite_origin) continue;
    const int n = table.degrees[tags[b].label];
    for (int v = 0; v < n; ++v) f(offsets[b] + v, c++) = 1.0;
  }
  return f;
}

Truncation truncate(const SymbolicModel& model, int t, const std::vector<UnitaryRep>& models) {
  if (t < 1) fail(Err::InvalidArgument, "truncation level must be at least 1");
  const CharacterTable& table = *model.table;
  const int k = table.k();
  if (static_cast<int>(models.size()) != k) fail(Err::InvalidArgument, "need one reference model per irreducible");
  const int order = table.group->order();

  Truncation tr;
  tr.model = model;
  tr.t = t;
  int d = 0;
  for (int i = 0; i < k; ++i) d += (is_omega(model.mult[i]) ? t : model.mult[i]) * table.degrees[i];

  tr.rep.group = table.group;
  tr.rep.dim = d;
  tr.rep.mats.assign(static_cast<std::size_t>(order), Mat::Zero(d, d));
  tr.frame.table = model.table;
  tr.frame.dim = d;
  tr.frame.mult.assign(static_cast<std::size_t>(k), 0);
  tr.frame.basis.resize(static_cast<std::size_t>(k));

  int off = 0;
  for (int i = 0; i < k; ++i) {
    const int n = table.degrees[i];
    const int copies = is_omega(model.mult[i]) ? t : model.mult[i];
    if (models[i].dim != n) fail(Err::InvalidArgument, "reference model dimension disagrees with the table");
    tr.frame.mult[static_cast<std::size_t>(i)] = copies;
    tr.frame.basis[static_cast<std::size_t>(i)] = Mat::Zero(d, static_cast<Eigen::Index>(n) * copies);
    for (int s = 0; s < copies; ++s) {
      tr.offsets.push_back(off);
      tr.tags.push_back(BlockTag{i, s, is_omega(model.mult[i])});
      for (int g = 0; g < order; ++g)
        tr.rep.mats[static_cast<std::size_t>(g)].block(off, off, n, n) = models[i].mats[static_cast<std::size_t>(g)];
      tr.frame.basis[static_cast<std::size_t>(i)].block(off, static_cast<Eigen::Index>(s) * n, n, n) =
          Mat::Identity(n, n);
      off += n;
    }
  }
  return tr;
}

OrbitGram orbit_gram(const UnitaryRep& rep, const std::vector<Vec>& tuple) {
  check_vectors(rep, tuple, "tuple");
  OrbitGram g;
  g.n = static_cast<int>(tuple.size());
  if (g.n == 0) {
    g.gamma = Mat(0, 0);
    return g;
  }
  const Mat phi = kernels::orbit_columns(rep.mats, tuple);
  g.gamma = phi.adjoint() * phi;
  return g;
}

bool qftp_equal(const UnitaryRep& rep, const std::vector<Vec>& a, const std::vector<Vec>& b, double tol,
                double* defect) {
  if (a.size() != b.size()) fail(Err::DimensionMismatch, "tuples have different lengths");
  const OrbitGram ga = orbit_gram(rep, a);
  const OrbitGram gb = orbit_gram(rep, b);
  const double d = ga.gamma.size() == 0 ? 0.0 : (ga.gamma - gb.gamma).cwiseAbs().maxCoeff();
  if (defect) *defect = d;
  return d <= tol;
}

SymbolicModel symbolic_of(const UnitaryRep& rep, TablePtr table, const std::vector<int>& infinite_labels) {
  const IsotypicDecomposition dec = decompose(rep, table);
  std::vector<int> mult = dec.mult;
  for (int i : infinite_labels) {
    if (i < 0 || i >= table->k()) {
      std::ostringstream os;
      os << "irreducible label " << i << " out of range";
      fail(Err::InvalidArgument, os.str());
    }
    if (mult[static_cast<std::size_t>(i)] < 1) {
      std::ostringstream os;
      os << "label " << i << " declared infinite but absent from the representation";
      fail(Err::EmptyInfinitePart, os.str());
    }
    mult[static_cast<std::size_t>(i)] = kOmega;
  }
  return make_symbolic(table, std::move(mult));
}

bool elementarily_equivalent(const SymbolicModel& m1, const SymbolicModel& m2) {
  if (!same_group(*m1.table->group, *m2.table->group)) fail(Err::GroupMismatch, "models live over different groups");
  return m1.mult == m2.mult;
}

bool embeds(const SymbolicModel& m1, const SymbolicModel& m2) {
  if (!same_group(*m1.table->group, *m2.table->group)) fail(Err::GroupMismatch, "models live over different groups");
  for (std::size_t i = 0; i < m1.mult.size(); ++i) {
    if (is_omega(m2.mult[i])) continue;
    if (is_omega(m1.mult[i]) || m1.mult[i] > m2.mult[i]) return false;
  }
  return true;
}

bool is_companion_model(const SymbolicModel& m) {
  return std::all_of(m.mult.begin(), m.mult.end(), [](int v) { return is_omega(v); });
}

Mat build_intertwiner(const UnitaryRep& rep, const IsotypicFrame& frame, const std::vector<Vec>& a,
                      const std::vector<Vec>& b, double tol) {
  check_vectors(rep, a, "first tuple");
  check_vectors(rep, b, "second tuple");
  if (a.size() != b.size()) fail(Err::TypesDiffer, "tuples have different lengths");
  double defect = 0.0;
  if (!qftp_equal(rep, a, b, tol, &defect)) {
    std::ostringstream os;
    os << "orbit Grams differ by " << defect << " at tolerance " << tol;
    fail(Err::TypesDiffer, os.str());
  }

  Mat u = Mat::Zero(rep.dim, rep.dim);
  for (int i = 0; i < frame.table->k(); ++i) {
    const int n = frame.table->degrees[i];
    const int m = frame.mult[static_cast<std::size_t>(i)];
    if (m == 0) continue;
    const Mat w = match_rows_unitary(stacked_coeffs(frame, a, i), stacked_coeffs(frame, b, i), i);
    // In frame coordinates the block acts as w^T kron I_n: copy directions
    // mix by w, slots inside a copy stay put.
    Mat block = Mat::Zero(static_cast<Eigen::Index>(n) * m, static_cast<Eigen::Index>(n) * m);
    for (int s = 0; s < m; ++s)
      for (int s2 = 0; s2 < m; ++s2)
        block.block(static_cast<Eigen::Index>(s2) * n, static_cast<Eigen::Index>(s) * n, n, n) =
            w(s, s2) * Mat::Identity(n, n);
    u += frame.basis[static_cast<std::size_t>(i)] * block * frame.basis[static_cast<std::size_t>(i)].adjoint();
  }
  return u;
}

Mat build_intertwiner(const Truncation& tr, const std::vector<Vec>& a, const std::vector<Vec>& b, double tol) {
  return build_intertwiner(tr.rep, tr.frame, a, b, tol);
}

Mat closure_basis(const UnitaryRep& rep, const std::vector<Vec>& a, ClosureMode mode) {
  if (mode == ClosureMode::Acl) fail(Err::NotATruncation, "acl needs finite/infinite block tags");
  check_vectors(rep, a, "generating set");
  if (a.empty()) return Mat(rep.dim, 0);
  return linalg::orthonormalize(kernels::orbit_columns(rep.mats, a), 1e-10);
}

Mat closure_basis(const Truncation& tr, const std::vector<Vec>& a, ClosureMode mode) {
  check_vectors(tr.rep, a, "generating set");
  const Mat orbit =
      a.empty() ? Mat(tr.rep.dim, 0) : linalg::orthonormalize(kernels::orbit_columns(tr.rep.mats, a), 1e-10);
  if (mode == ClosureMode::Dcl) return orbit;
  const Mat extra = linalg::orthonormalize(tr.finite_basis(), 1e-10, &orbit);
  Mat out(tr.rep.dim, orbit.cols() + extra.cols());
  out << orbit, extra;
  return out;
}

namespace {

bool independent_over(const UnitaryRep& rep, const Mat& small_basis, const Mat& big_basis,
                      const std::vector<Vec>& a, double tol, double* defect) {
  check_vectors(rep, a, "tuple");
  double worst = 0.0;
  for (const Vec& v : a)
    worst = std::max(worst, (project_onto(big_basis, v) - project_onto(small_basis, v)).norm());
  if (defect) *defect = worst;
  return worst <= tol;
}

}  // namespace

bool is_independent(const UnitaryRep& rep, const std::vector<Vec>& a, const std::vector<Vec>& b,
                    const std::vector<Vec>& c, double tol, double* defect) {
  const Mat e1 = closure_basis(rep, c, ClosureMode::Dcl);
  const Mat e2 = closure_basis(rep, joined(b, c), ClosureMode::Dcl);
  return independent_over(rep, e1, e2, a, tol, defect);
}

bool is_independent(const Truncation& tr, const std::vector<Vec>& a, const std::vector<Vec>& b,
                    const std::vector<Vec>& c, double tol, double* defect) {
  const Mat e1 = closure_basis(tr, c, ClosureMode::Acl);
  const Mat e2 = closure_basis(tr, joined(b, c), ClosureMode::Acl);
  return independent_over(tr.rep, e1, e2, a, tol, defect);
}

bool is_independent_components(const Truncation& tr, const std::vector<Vec>& a, const std::vector<Vec>& b,
                               const std::vector<Vec>& c, double tol, double* defect) {
  check_vectors(tr.rep, a, "tuple");
  const Mat e1 = closure_basis(tr, c, ClosureMode::Acl);
  const Mat e2 = closure_basis(tr, joined(b, c), ClosureMode::Acl);
  double worst = 0.0;
  for (const Vec& v : a) {
    for (const Mat& q : tr.frame.basis) {
      const Vec part = q * (q.adjoint() * v);
      worst = std::max(worst, (project_onto(e2, part) - project_onto(e1, part)).norm());
    }
  }
  if (defect) *defect = worst;
  return worst <= tol;
}

Vec nonforking_extension(const Truncation& tr, const Vec& v, const std::vector<Vec>& c,
                         const std::vector<Vec>& b, std::uint64_t seed) {
  if (v.size() != tr.rep.dim) fail(Err::DimensionMismatch, "vector dimension disagrees with the truncation");
  const Mat e = closure_basis(tr, c, ClosureMode::Acl);
  const Mat ecb = closure_basis(tr, joined(c, b), ClosureMode::Acl);
  const Vec kept = project_onto(e, v);
  const Vec w = v - kept;

  Vec out = kept;
  Rng rng(seed);
  for (int i = 0; i < tr.frame.table->k(); ++i) {
    if (!is_omega(tr.model.mult[static_cast<std::size_t>(i)])) continue;
    const int n = tr.frame.table->degrees[i];
    const int m = tr.frame.mult[static_cast<std::size_t>(i)];
    const Mat omega = tr.frame.coeff(w, i);
    const Mat rows = linalg::orthonormalize(omega.transpose(), 1e-8);
    const int rank = static_cast<int>(rows.cols());
    if (rank == 0) continue;

    // Multiplicity directions already supporting acl(C u B) in this block.
    Mat support;
    {
      Mat stack(ecb.cols() * n, m);
      for (Eigen::Index q = 0; q < ecb.cols(); ++q) stack.middleRows(q * n, n) = tr.frame.coeff(ecb.col(q), i);
      support = linalg::orthonormalize(stack.transpose(), 1e-8);
    }

    Mat draws(m, m);
    for (int col = 0; col < m; ++col)
      for (int row = 0; row < m; ++row) draws(row, col) = rng.cnormal();
    const Mat fresh_all = linalg::orthonormalize(draws, 1e-6, &support);
    if (fresh_all.cols() < rank) {
      std::ostringstream os;
      os << "isotypic block " << i << " has " << fresh_all.cols() << " fresh multiplicity directions, needs "
         << rank;
      fail(Err::InsufficientRoom, os.str());
    }
    const Mat fresh = fresh_all.leftCols(rank);

    const Mat rot = completed(rows).conjugate() * completed(fresh).transpose();
    const Mat relocated = omega * rot;
    out += tr.frame.basis[static_cast<std::size_t>(i)] *
           Eigen::Map<const Vec>(relocated.data(), relocated.size());
  }
  return out;
}

PairModel make_pair(SymbolicModel big, SymbolicModel small) {
  if (!same_group(*big.table->group, *small.table->group))
    fail(Err::GroupMismatch, "pair components live over different groups");
  if (!has_omega(big.mult) || !has_omega(small.mult))
    fail(Err::EmptyInfinitePart, "both pair components need an omega label");
  for (std::size_t i = 0; i < big.mult.size(); ++i) {
    if (is_omega(big.mult[i])) continue;
    if (small.mult[i] != big.mult[i]) {
      std::ostringstream os;
      os << "label " << i << ": big multiplicity is finite (" << big.mult[i]
         << ") so the small model must match, got "
         << (is_omega(small.mult[i]) ? std::string("omega") : std::to_string(small.mult[i]));
      fail(Err::InvalidPair, os.str());
    }
  }
  return PairModel{std::move(big), std::move(small)};
}

bool pair_isomorphic(const PairModel& p1, const PairModel& p2) {
  if (!same_group(*p1.big.table->group, *p2.big.table->group))
    fail(Err::GroupMismatch, "pairs live over different groups");
  return p1.big.mult == p2.big.mult && p1.small.mult == p2.small.mult;
}

}  // namespace grouprep
