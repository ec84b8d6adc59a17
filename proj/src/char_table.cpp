#include "grouprep/char_table.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace grouprep {

namespace {

constexpr int kMaxAttempts = 8;
constexpr double kGapTol = 1e-7;

long long snap9(double x) { return std::llround(x * 1e9); }

bool chi_row_less(const Vec& a, const Vec& b) {
  for (Eigen::Index j = 0; j < a.size(); ++j) {
    const long long ar = snap9(a(j).real()), br = snap9(b(j).real());
    if (ar != br) return ar < br;
    const long long ai = snap9(a(j).imag()), bi = snap9(b(j).imag());
    if (ai != bi) return ai < bi;
  }
  return false;
}

struct Candidate {
  int degree;
  Vec row;
};

// One attempt: returns false when the random weighting was degenerate.
bool attempt_table(const FiniteGroup& g, const ConjugacyClassPartition& part, Rng& rng,
                   std::vector<Candidate>& out) {
  const int n = g.order();
  const int k = static_cast<int>(part.classes.size());

  std::vector<double> t(k);
  for (int i = 0; i < k; ++i) t[i] = 1.0 + rng.uniform();

  // A(l, m) accumulates t_i * a_{ilm}, where a_{ilm} counts pairs in
  // C_i x C_l whose product lands on a fixed representative of C_m; counting
  // over the whole class C_m and dividing by |C_m| gives the same number.
  RMat a = RMat::Zero(k, k);
  for (int x = 0; x < n; ++x) {
    const int i = part.class_of[x];
    for (int y = 0; y < n; ++y) {
      const int l = part.class_of[y];
      const int m = part.class_of[g.mul(x, y)];
      a(l, m) += t[i] / static_cast<double>(part.class_sizes[m]);
    }
  }

  Eigen::EigenSolver<RMat> es(a);
  if (es.info() != Eigen::Success) return false;
  const Vec evals = es.eigenvalues();
  const double scale = evals.cwiseAbs().maxCoeff() + 1.0;
  for (int p = 0; p < k; ++p)
    for (int q = p + 1; q < k; ++q)
      if (std::abs(evals(p) - evals(q)) < kGapTol * scale) return false;

  const Mat evecs = es.eigenvectors();
  out.clear();
  for (int r = 0; r < k; ++r) {
    Vec v = evecs.col(r);
    if (std::abs(v(0)) < 1e-12) return false;
    v /= v(0);  // omega_r at the identity class is 1
    double s = 0.0;
    for (int j = 0; j < k; ++j) s += std::norm(v(j)) / static_cast<double>(part.class_sizes[j]);
    const double deg = std::sqrt(static_cast<double>(n) / s);
    const int deg_int = static_cast<int>(std::llround(deg));
    if (deg_int < 1 || std::abs(deg - deg_int) >= 1e-8) return false;
    Vec row(k);
    for (int j = 0; j < k; ++j) row(j) = deg * v(j) / static_cast<double>(part.class_sizes[j]);
    out.push_back({deg_int, std::move(row)});
  }

  // Row orthogonality at 1e-10 gates acceptance of the attempt.
  for (int p = 0; p < k; ++p)
    for (int q = 0; q < k; ++q) {
      cplx ip = 0.0;
      for (int j = 0; j < k; ++j)
        ip += static_cast<double>(part.class_sizes[j]) * out[p].row(j) * std::conj(out[q].row(j));
      ip /= static_cast<double>(n);
      if (std::abs(ip - (p == q ? 1.0 : 0.0)) > 1e-10) return false;
    }
  return true;
}

}  // namespace

TablePtr character_table(GroupPtr g) {
  if (!g) fail(Err::InvalidArgument, "null group");
  if (g->order() > 2048) fail(Err::UnsupportedSize, "character table limited to |G| <= 2048");
  const auto part = conjugacy_classes(*g);
  const int k = static_cast<int>(part.classes.size());

  std::vector<Candidate> rows;
  bool ok = false;
  for (int attempt = 0; attempt < kMaxAttempts && !ok; ++attempt) {
    Rng rng(0x7ab1e000u + static_cast<std::uint64_t>(attempt));
    ok = attempt_table(*g, part, rng, rows);
  }
  if (!ok)
    fail(Err::DegenerateEigenSplit,
         "class-sum eigenvalues stayed degenerate after " + std::to_string(kMaxAttempts) + " weightings");

  std::sort(rows.begin(), rows.end(), [](const Candidate& a, const Candidate& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    return chi_row_less(a.row, b.row);
  });

  auto table = std::make_shared<CharacterTable>();
  table->group = std::move(g);
  table->partition = part;
  table->chi.resize(k, k);
  table->degrees.resize(k);
  int sumsq = 0;
  for (int i = 0; i < k; ++i) {
    table->chi.row(i) = rows[i].row.transpose();
    table->degrees[i] = rows[i].degree;
    sumsq += rows[i].degree * rows[i].degree;
  }
  if (sumsq != table->group->order())
    fail(Err::DegenerateEigenSplit, "degree squares do not sum to the group order");
  return table;
}

std::vector<int> decompose_character(const std::vector<cplx>& phi, const CharacterTable& table) {
  const FiniteGroup& g = *table.group;
  const int n = g.order();
  const auto& part = table.partition;
  std::vector<cplx> on_class(table.k());
  if (static_cast<int>(phi.size()) == table.k() && table.k() != n) {
    // One value per class, in canonical class order.
    for (int j = 0; j < table.k(); ++j) on_class[j] = phi[j];
  } else {
    if (static_cast<int>(phi.size()) != n)
      fail(Err::NotClassFunction, "value count " + std::to_string(phi.size()) + " != group order");
    for (int j = 0; j < table.k(); ++j) {
      on_class[j] = phi[part.classes[j][0]];
      for (int x : part.classes[j])
        if (std::abs(phi[x] - on_class[j]) > 1e-8) {
          std::ostringstream os;
          os << "not constant on class " << j << " (elements " << part.classes[j][0] << " and " << x << ")";
          fail(Err::NotClassFunction, os.str());
        }
    }
  }
  std::vector<int> mult(table.k());
  for (int i = 0; i < table.k(); ++i) {
    cplx m = 0.0;
    for (int j = 0; j < table.k(); ++j)
      m += static_cast<double>(part.class_sizes[j]) * on_class[j] * std::conj(table.chi(i, j));
    m /= static_cast<double>(n);
    const long long r = std::llround(m.real());
    if (std::abs(m - cplx(static_cast<double>(r), 0.0)) >= 1e-6 || r < 0) {
      std::ostringstream os;
      os << "multiplicity of irreducible " << i << " is " << m.real();
      if (std::abs(m.imag()) > 1e-12) os << (m.imag() < 0 ? "" : "+") << m.imag() << "i";
      fail(Err::NonIntegralMultiplicity, os.str());
    }
    mult[i] = static_cast<int>(r);
  }
  return mult;
}

}  // namespace grouprep
