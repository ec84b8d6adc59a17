// Timing comparison between the serial reference kernels and the OpenMP
// kernels on workloads shaped like the library's hot paths.

#include "grouprep/kernels.hpp"
#include "grouprep/types.hpp"

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

namespace {

using grouprep::Mat;
using grouprep::Rng;
using grouprep::Vec;
using grouprep::cplx;

Mat random_square(Rng& rng, int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rng.cnormal();
  return m;
}

template <typename F>
double time_ms(F&& body, int repeats) {
  const auto start = std::chrono::steady_clock::now();
  for (int r = 0; r < repeats; ++r) body();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count() / repeats;
}

void report(const char* name, double ref_ms, double omp_ms) {
  std::printf("%-18s reference %9.3f ms   omp %9.3f ms   speedup %.2fx\n", name, ref_ms, omp_ms,
              omp_ms > 0 ? ref_ms / omp_ms : 0.0);
}

}  // namespace

int main(int argc, char** argv) {
  int dim = 64;
  int count = 48;
  int repeats = 5;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--dim" && i + 1 < argc) dim = std::atoi(argv[++i]);
    else if (a == "--count" && i + 1 < argc) count = std::atoi(argv[++i]);
    else if (a == "--repeats" && i + 1 < argc) repeats = std::atoi(argv[++i]);
  }
  std::printf("dim=%d count=%d repeats=%d\n", dim, count, repeats);

  Rng rng(12345);
  std::vector<Mat> a, b;
  std::vector<double> w;
  std::vector<cplx> cw;
  for (int i = 0; i < count; ++i) {
    a.push_back(random_square(rng, dim));
    b.push_back(random_square(rng, dim));
    w.push_back(1.0 / (i + 1));
    cw.push_back(cplx(1.0 / (i + 1), 0.0));
  }
  Mat u = random_square(rng, dim);
  std::vector<Vec> tuple;
  for (int i = 0; i < 4; ++i) {
    Vec v(dim);
    for (int j = 0; j < dim; ++j) v(j) = rng.cnormal();
    tuple.push_back(v);
  }

  namespace ref = grouprep::kernels::reference;
  namespace omp = grouprep::kernels::omp;

  Mat sink;
  report("weighted_sum",
         time_ms([&] { sink = ref::weighted_sum(a, cw); }, repeats),
         time_ms([&] { sink = omp::weighted_sum(a, cw); }, repeats));
  report("conj_average",
         time_ms([&] { sink = ref::conj_average(a, u); }, repeats),
         time_ms([&] { sink = omp::conj_average(a, u); }, repeats));
  report("procrustes_accum",
         time_ms([&] { sink = ref::procrustes_accum(a, b, u, w); }, repeats),
         time_ms([&] { sink = omp::procrustes_accum(a, b, u, w); }, repeats));
  report("orbit_columns",
         time_ms([&] { sink = ref::orbit_columns(a, tuple); }, repeats),
         time_ms([&] { sink = omp::orbit_columns(a, tuple); }, repeats));
  std::vector<double> norms;
  report("conj_defect_norms",
         time_ms([&] { norms = ref::conj_defect_norms(a, b, u); }, repeats),
         time_ms([&] { norms = omp::conj_defect_norms(a, b, u); }, repeats));
  std::printf("checksum %.6f %.6f\n", sink.norm(), norms.empty() ? 0.0 : norms[0]);
  return 0;
}
