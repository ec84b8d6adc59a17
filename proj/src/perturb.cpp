#include "grouprep/perturb.hpp"

#include "grouprep/kernels.hpp"
#include "grouprep/linalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <iomanip>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

namespace grouprep {

namespace {

std::vector<double> geometric_weights(int count) {
  std::vector<double> w(static_cast<std::size_t>(count));
  double x = 1.0;
  for (int n = 0; n < count; ++n, x *= 0.5) w[static_cast<std::size_t>(n)] = x;
  return w;
}

void check_sizes(const std::vector<int>& sizes, int minimum) {
  if (static_cast<int>(sizes.size()) < minimum) {
    std::ostringstream os;
    os << "need at least " << minimum << " truncation sizes, got " << sizes.size();
    fail(Err::InvalidArgument, os.str());
  }
  for (std::size_t s = 0; s < sizes.size(); ++s) {
    if (sizes[s] < 1) fail(Err::InvalidArgument, "truncation sizes must be at least 1");
    if (s > 0 && sizes[s] <= sizes[s - 1]) fail(Err::InvalidArgument, "truncation sizes must strictly increase");
  }
}

void check_unitary(const Mat& u, int dim) {
  if (u.rows() != dim || u.cols() != dim) {
    std::ostringstream os;
    os << "conjugating matrix is " << u.rows() << "x" << u.cols() << ", expected " << dim << "x" << dim;
    fail(Err::DimMismatch, os.str());
  }
  const double defect = (u * u.adjoint() - Mat::Identity(dim, dim)).cwiseAbs().maxCoeff();
  if (defect > 1e-9) {
    std::ostringstream os;
    os << "conjugating matrix is not unitary (defect " << defect << ")";
    fail(Err::NotUnitary, os.str());
  }
}

int symbol_index(const std::vector<std::string>& labels, const std::string& symbol) {
  for (std::size_t j = 0; j < labels.size(); ++j)
    if (labels[j] == symbol) return static_cast<int>(j);
  fail(Err::UnknownGenerator, "unknown generator symbol '" + symbol + "'");
}

}  // namespace

std::string word_key(const AlgebraWord& word) {
  std::ostringstream os;
  os << std::setprecision(17);
  for (std::size_t t = 0; t < word.products.size(); ++t) {
    if (t > 0) os << " + ";
    os << "(" << word.coeffs[t].real() << "," << word.coeffs[t].imag() << ")[";
    for (std::size_t f = 0; f < word.products[t].size(); ++f) {
      if (f > 0) os << " ";
      os << word.products[t][f];
    }
    os << "]";
  }
  return os.str();
}

AlgebraWord identity_word() {
  AlgebraWord w;
  w.coeffs = {cplx(1.0, 0.0)};
  w.products = {{}};
  return w;
}

AlgebraWord projection_word(const CharacterTable& table, int i) {
  if (i < 0 || i >= table.k()) fail(Err::InvalidArgument, "irreducible label out of range");
  const int order = table.group->order();
  AlgebraWord w;
  const double scale = static_cast<double>(table.degrees[static_cast<std::size_t>(i)]) / order;
  for (int g = 0; g < order; ++g) {
    w.coeffs.push_back(scale * std::conj(table.value(i, g)));
    w.products.push_back({table.group->labels[static_cast<std::size_t>(g)]});
  }
  return w;
}

Mat eval_word_on(const std::vector<std::string>& labels, const std::vector<Mat>& mats, int dim,
                 const AlgebraWord& word) {
  if (word.coeffs.size() != word.products.size())
    fail(Err::InvalidArgument, "word has mismatched coefficient and product counts");
  Mat acc = Mat::Zero(dim, dim);
  for (std::size_t t = 0; t < word.products.size(); ++t) {
    Mat prod = Mat::Identity(dim, dim);
    for (const std::string& factor : word.products[t]) {
      const bool adjoint = !factor.empty() && factor.back() == '*';
      const std::string base = adjoint ? factor.substr(0, factor.size() - 1) : factor;
      const int j = symbol_index(labels, base);
      const Mat& m = mats[static_cast<std::size_t>(j)];
      prod = adjoint ? Mat(prod * m.adjoint()) : Mat(prod * m);
    }
    acc += word.coeffs[t] * prod;
  }
  return acc;
}

Mat eval_word(const UnitaryRep& rep, const AlgebraWord& word) {
  return eval_word_on(rep.group->labels, rep.mats, rep.dim, word);
}

RepFamily truncation_family(const SymbolicModel& model, const std::vector<UnitaryRep>& models,
                            const std::vector<int>& sizes) {
  check_sizes(sizes, 1);
  RepFamily fam;
  fam.labels = model.table->group->labels;
  fam.sizes = sizes;
  for (int t : sizes) fam.gens.push_back(truncate(model, t, models).rep.mats);
  return fam;
}

RepFamily shift_family(const std::vector<int>& sizes) {
  check_sizes(sizes, 1);
  RepFamily fam;
  fam.labels = {"s"};
  fam.sizes = sizes;
  for (int t : sizes) {
    Mat s = Mat::Zero(t, t);
    for (int j = 0; j < t; ++j) s((j + 1) % t, j) = 1.0;
    fam.gens.push_back({std::move(s)});
  }
  return fam;
}

RankSignature rank_signature(const RepFamily& fam, const std::vector<AlgebraWord>& words, double tol) {
  check_sizes(fam.sizes, 2);
  RankSignature sig;
  sig.sizes = fam.sizes;
  const int nsizes = static_cast<int>(fam.sizes.size());
  for (std::size_t w = 0; w < words.size(); ++w) {
    sig.word_keys.push_back(word_key(words[w]));
    std::vector<int> ranks;
    for (int s = 0; s < nsizes; ++s) {
      const Mat m = eval_word_on(fam.labels, fam.gens[static_cast<std::size_t>(s)], fam.dim_at(s), words[w]);
      try {
        ranks.push_back(linalg::numerical_rank(m, tol));
      } catch (const Error& e) {
        if (e.kind() != Err::RankAmbiguous) throw;
        std::ostringstream os;
        os << "word " << w << " at size " << fam.sizes[static_cast<std::size_t>(s)] << ": " << e.what();
        fail(Err::RankAmbiguous, os.str());
      }
    }
    const std::size_t top = ranks.size() - 1;
    if (ranks[top] == ranks[top - 1]) {
      sig.verdicts.push_back(RankVerdict::Stable);
      sig.stable_ranks.push_back(ranks[top]);
    } else {
      bool growing = true;
      for (std::size_t s = 1; s < ranks.size(); ++s)
        if (ranks[s] <= ranks[s - 1]) growing = false;
      if (!growing) {
        std::ostringstream os;
        os << "word " << w << " ranks are neither stable nor strictly growing:";
        for (int r : ranks) os << " " << r;
        fail(Err::RankAmbiguous, os.str());
      }
      sig.verdicts.push_back(RankVerdict::Growing);
      sig.stable_ranks.push_back(-1);
    }
    sig.ranks.push_back(std::move(ranks));
  }
  return sig;
}

bool aue_equivalent(const RankSignature& s1, const RankSignature& s2) {
  if (s1.word_keys != s2.word_keys) fail(Err::WordListMismatch, "signatures cover different word lists");
  for (std::size_t w = 0; w < s1.word_keys.size(); ++w) {
    if (s1.verdicts[w] != s2.verdicts[w]) return false;
    if (s1.verdicts[w] == RankVerdict::Stable && s1.stable_ranks[w] != s2.stable_ranks[w]) return false;
  }
  return true;
}

PerturbationReport perturbation_distance(const UnitaryRep& rep1, const UnitaryRep& rep2, const Mat& u,
                                         const std::vector<double>& weights) {
  if (!same_group(*rep1.group, *rep2.group)) fail(Err::GroupMismatch, "representations live over different groups");
  if (rep1.dim != rep2.dim) {
    std::ostringstream os;
    os << "representation dimensions " << rep1.dim << " and " << rep2.dim << " differ";
    fail(Err::DimMismatch, os.str());
  }
  check_unitary(u, rep1.dim);
  const int order = rep1.group->order();
  std::vector<double> w = weights;
  if (w.empty()) {
    w = geometric_weights(order);
  } else if (static_cast<int>(w.size()) != order) {
    fail(Err::InvalidArgument, "need one enumeration weight per group element");
  }

  PerturbationReport report;
  report.u = u;
  report.element_norms = kernels::conj_defect_norms(rep2.mats, rep1.mats, u);
  for (int n = 0; n < order; ++n)
    report.distance += w[static_cast<std::size_t>(n)] * report.element_norms[static_cast<std::size_t>(n)];
  return report;
}

std::vector<std::vector<std::string>> bfs_words(const std::vector<std::string>& labels, int count) {
  std::vector<std::string> alphabet;
  for (const std::string& l : labels) {
    alphabet.push_back(l);
    alphabet.push_back(l + "*");
  }
  std::vector<std::vector<std::string>> out;
  std::set<std::string> seen;
  std::vector<std::vector<std::string>> frontier = {{}};
  out.push_back({});
  seen.insert("");
  while (static_cast<int>(out.size()) < count && !frontier.empty()) {
    std::vector<std::vector<std::string>> next;
    for (const auto& word : frontier) {
      for (const std::string& a : alphabet) {
        std::vector<std::string> extended = word;
        extended.push_back(a);
        std::string key;
        for (const std::string& f : extended) key += f + " ";
        if (!seen.insert(key).second) continue;
        next.push_back(extended);
        out.push_back(std::move(extended));
        if (static_cast<int>(out.size()) == count) return out;
      }
    }
    frontier = std::move(next);
  }
  return out;
}

PerturbationReport perturbation_distance_words(const std::vector<std::string>& labels,
                                               const std::vector<Mat>& gens1, const std::vector<Mat>& gens2,
                                               const Mat& u, int terms) {
  if (labels.size() != gens1.size() || labels.size() != gens2.size())
    fail(Err::InvalidArgument, "generator label and matrix counts differ");
  if (terms < 1) fail(Err::InvalidArgument, "need at least one enumeration term");
  const int dim = gens1.empty() ? 0 : static_cast<int>(gens1[0].rows());
  for (const Mat& m : gens1)
    if (m.rows() != dim || m.cols() != dim) fail(Err::DimMismatch, "first family has inconsistent dimensions");
  for (const Mat& m : gens2)
    if (m.rows() != dim || m.cols() != dim)
      fail(Err::DimMismatch, "the two families have different dimensions");
  check_unitary(u, dim);

  const auto words = bfs_words(labels, terms);
  const auto w = geometric_weights(static_cast<int>(words.size()));
  PerturbationReport report;
  report.u = u;
  for (std::size_t n = 0; n < words.size(); ++n) {
    AlgebraWord word;
    word.coeffs = {cplx(1.0, 0.0)};
    word.products = {words[n]};
    const Mat m1 = eval_word_on(labels, gens1, dim, word);
    const Mat m2 = eval_word_on(labels, gens2, dim, word);
    const double norm = linalg::op_norm(u * m1 * u.adjoint() - m2);
    report.element_norms.push_back(norm);
    report.distance += w[n] * norm;
  }
  return report;
}

PerturbationReport minimize_perturbation(const UnitaryRep& rep1, const UnitaryRep& rep2, int iters,
                                         std::uint64_t seed) {
  if (!same_group(*rep1.group, *rep2.group)) fail(Err::GroupMismatch, "representations live over different groups");
  if (rep1.dim != rep2.dim) {
    std::ostringstream os;
    os << "representation dimensions " << rep1.dim << " and " << rep2.dim << " differ";
    fail(Err::DimMismatch, os.str());
  }
  const int order = rep1.group->order();
  const int d = rep1.dim;
  const std::vector<double> w = geometric_weights(order);
  const std::vector<double> avg(static_cast<std::size_t>(order), 1.0 / order);

  const auto frob_objective = [&](const Mat& u) {
    double s = 0.0;
    for (int n = 0; n < order; ++n)
      s += w[static_cast<std::size_t>(n)] *
           (u * rep1.mats[static_cast<std::size_t>(n)] * u.adjoint() - rep2.mats[static_cast<std::size_t>(n)])
               .norm();
    return s;
  };

  std::vector<Mat> starts;
  starts.push_back(Mat::Identity(d, d));
  Rng rng(seed);
  // Averaging a random unitary over both actions lands in the closest
  // conjugator times a commutant element, which the polar factor cleans up.
  for (int r = 0; r < 2; ++r) {
    const Mat probe = linalg::random_unitary(d, rng);
    starts.push_back(linalg::polar_unitary(kernels::procrustes_accum(rep2.mats, rep1.mats, probe, avg)));
  }
  starts.push_back(linalg::random_unitary(d, rng));

  PerturbationReport best;
  best.distance = std::numeric_limits<double>::infinity();
  for (const Mat& s0 : starts) {
    Mat u = s0;
    Mat u_best = s0;
    double f_best = frob_objective(s0);
    double f_prev = f_best;
    bool converged = f_best <= 1e-13;
    int used = 0;
    for (int it = 1; it <= iters && !converged; ++it) {
      u = linalg::polar_unitary(kernels::procrustes_accum(rep2.mats, rep1.mats, u, w));
      const double f = frob_objective(u);
      used = it;
      if (f < f_best) {
        f_best = f;
        u_best = u;
      }
      if (std::abs(f_prev - f) <= 1e-13 * std::max(1.0, f) || f <= 1e-13) {
        converged = true;
        break;
      }
      f_prev = f;
    }
    PerturbationReport candidate = perturbation_distance(rep1, rep2, u_best);
    candidate.iterations = used;
    candidate.converged = converged;
    if (candidate.distance < best.distance) best = std::move(candidate);
  }
  return best;
}

SpectrumEstimate approx_spectrum(const RepFamily& fam, const std::string& symbol, double resolution) {
  check_sizes(fam.sizes, 1);
  if (!(resolution > 0.0)) fail(Err::InvalidArgument, "grid resolution must be positive");
  const int j = symbol_index(fam.labels, symbol);

  SpectrumEstimate est;
  est.sizes = fam.sizes;
  est.resolution = resolution;
  const int nsizes = static_cast<int>(fam.sizes.size());
  for (int s = 0; s < nsizes; ++s) {
    const Mat& m = fam.gens[static_cast<std::size_t>(s)][static_cast<std::size_t>(j)];
    const double defect = (m * m.adjoint() - Mat::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
    if (defect > 1e-9) {
      std::ostringstream os;
      os << "matrix of '" << symbol << "' at size " << fam.sizes[static_cast<std::size_t>(s)]
         << " is not unitary (defect " << defect << ")";
      fail(Err::NotUnitary, os.str());
    }
    est.eigenvalues.push_back(linalg::eigenvalues(m));
    for (const cplx& ev : est.eigenvalues.back()) {
      if (std::abs(std::abs(ev) - 1.0) > 1e-9) {
        std::ostringstream os;
        os << "eigenvalue " << ev << " of a unitary matrix is off the unit circle";
        fail(Err::NotUnitary, os.str());
      }
    }
  }

  constexpr double kTau = 2.0 * std::numbers::pi;
  const long long buckets = std::max<long long>(1, std::llround(std::ceil(kTau / resolution)));
  const auto bucket_of = [&](const cplx& ev) {
    double a = std::atan2(ev.imag(), ev.real());
    if (a < 0.0) a += kTau;
    return std::llround(a / resolution) % buckets;
  };

  // Bucket representative: the first eigenvalue seen at the largest size
  // reaching that bucket.
  std::map<long long, std::pair<int, cplx>> reps;
  for (int s = 0; s < nsizes; ++s) {
    for (const cplx& ev : est.eigenvalues[static_cast<std::size_t>(s)]) {
      const long long b = bucket_of(ev);
      const auto it = reps.find(b);
      if (it == reps.end() || it->second.first < s) reps[b] = {s, ev};
    }
  }

  for (const auto& [bucket, rep] : reps) {
    SpectrumCandidate cand;
    cand.lambda = rep.second;
    for (int s = 0; s < nsizes; ++s) {
      double r = std::numeric_limits<double>::infinity();
      for (const cplx& ev : est.eigenvalues[static_cast<std::size_t>(s)])
        r = std::min(r, std::abs(ev - cand.lambda));
      cand.residuals.push_back(r);
    }
    const double worst = *std::max_element(cand.residuals.begin(), cand.residuals.end());
    if (worst <= 1e-8) {
      cand.cls = SpectrumClass::Punctual;
    } else if (cand.residuals.back() <= cand.residuals.front() + 1e-12 &&
               cand.residuals.back() <= resolution) {
      cand.cls = SpectrumClass::Approximate;
    } else {
      cand.cls = SpectrumClass::Absent;
    }
    est.candidates.push_back(std::move(cand));
  }
  return est;
}

std::vector<SplitVerdict> compact_split_estimate(const RepFamily& fam, const std::vector<AlgebraWord>& words) {
  check_sizes(fam.sizes, 3);
  std::vector<SplitVerdict> verdicts;
  const int nsizes = static_cast<int>(fam.sizes.size());
  for (std::size_t w = 0; w < words.size(); ++w) {
    std::vector<int> ranks;
    for (int s = 0; s < nsizes; ++s) {
      const Mat m = eval_word_on(fam.labels, fam.gens[static_cast<std::size_t>(s)], fam.dim_at(s), words[w]);
      try {
        ranks.push_back(linalg::numerical_rank(m));
      } catch (const Error& e) {
        if (e.kind() != Err::RankAmbiguous) throw;
        std::ostringstream os;
        os << "word " << w << " at size " << fam.sizes[static_cast<std::size_t>(s)] << ": " << e.what();
        fail(Err::RankAmbiguous, os.str());
      }
    }
    const bool all_equal = std::all_of(ranks.begin(), ranks.end(), [&](int r) { return r == ranks[0]; });
    bool growing = true;
    for (std::size_t s = 1; s < ranks.size(); ++s)
      if (ranks[s] <= ranks[s - 1]) growing = false;
    if (all_equal) {
      verdicts.push_back(SplitVerdict::Compact);
    } else if (growing) {
      verdicts.push_back(SplitVerdict::Noncompact);
    } else {
      std::ostringstream os;
      os << "word " << w << " rank pattern is neither stable nor strictly growing:";
      for (int r : ranks) os << " " << r;
      fail(Err::RankAmbiguous, os.str());
    }
  }
  return verdicts;
}

}  // namespace grouprep
