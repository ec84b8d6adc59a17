#pragma once

// Parallelism lives in the kernels layer (see kernels.hpp); Eigen's own
// threading is disabled so nested parallel regions cannot reorder reductions.
#ifndef EIGEN_DONT_PARALLELIZE
#define EIGEN_DONT_PARALLELIZE
#endif

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace grouprep {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

enum class Err {
  NonAssociative,
  NoIdentity,
  NoInverse,
  MalformedTable,
  UnsupportedSize,
  DegenerateEigenSplit,
  NotClassFunction,
  NonIntegralMultiplicity,
  NotClassConstant,
  GroupMismatch,
  RankAmbiguous,
  SplitDegenerate,
  DimensionMismatch,
  TypesDiffer,
  InsufficientRoom,
  EmptyInfinitePart,
  NotATruncation,
  InvalidPair,
  UnknownGenerator,
  WordListMismatch,
  DimMismatch,
  NotUnitary,
  ParseError,
  InvalidArgument,
};

const char* err_name(Err kind);

class Error : public std::runtime_error {
 public:
  Error(Err kind, const std::string& msg)
      : std::runtime_error(std::string(err_name(kind)) + ": " + msg), kind_(kind) {}

  Err kind() const { return kind_; }

 private:
  Err kind_;
};

[[noreturn]] inline void fail(Err kind, const std::string& msg) { throw Error(kind, msg); }

// Deterministic random source. mt19937_64 output is fully specified by the
// standard; the normal sampler is hand-rolled (Box-Muller) because
// std::normal_distribution is implementation-defined and would break
// byte-identical results across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t raw() { return eng_(); }

  double uniform() {  // [0, 1)
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  int uniform_int(int n) {  // [0, n)
    const std::uint64_t bound = ~std::uint64_t{0} - (~std::uint64_t{0} % static_cast<std::uint64_t>(n));
    std::uint64_t x;
    do {
      x = eng_();
    } while (x >= bound);
    return static_cast<int>(x % static_cast<std::uint64_t>(n));
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  cplx cnormal() {
    const double re = normal();
    const double im = normal();
    return cplx(re, im) * 0.7071067811865475244;
  }

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace grouprep
