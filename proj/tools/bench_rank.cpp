// timing harness comparing the serial elimination kernel against the
// OpenMP one; not registered as a test
#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fatplanes/fp_matrix.hpp"
#include "fatplanes/prime_field.hpp"
#include "fatplanes/rng.hpp"

using namespace fatplanes;

namespace {

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

}  // namespace

int main() {
  PrimeField f(32003);
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not available, parallel path runs serially\n");
#endif

  std::printf("\nsingle-matrix elimination\n");
  std::printf("%8s %8s %12s %12s %9s %6s\n", "rows", "cols", "serial_ms",
              "parallel_ms", "speedup", "agree");
  const int sizes[][2] = {{128, 192}, {256, 384}, {384, 576}, {512, 768}};
  bool all_agree = true;
  for (const auto& sz : sizes) {
    PrimeFieldMatrix m = random_matrix(sz[0], sz[1], f, 0x9d5ull + sz[0]);
    double t0 = now_seconds();
    size_t rs = mat_rank_serial(m);
    double t1 = now_seconds();
    size_t rp = mat_rank_parallel(m);
    double t2 = now_seconds();
    bool agree = rs == rp;
    all_agree = all_agree && agree;
    double serial_ms = (t1 - t0) * 1e3;
    double parallel_ms = (t2 - t1) * 1e3;
    std::printf("%8d %8d %12.2f %12.2f %8.2fx %6s\n", sz[0], sz[1], serial_ms,
                parallel_ms, parallel_ms > 0 ? serial_ms / parallel_ms : 0.0,
                agree ? "yes" : "NO");
  }

  std::printf("\nbatch of independent trials (32 ranks of 192x288)\n");
  const int batch = 32;
  std::vector<PrimeFieldMatrix> mats;
  mats.reserve(batch);
  for (int i = 0; i < batch; ++i)
    mats.push_back(random_matrix(192, 288, f, child_seed(0xb0b5ull, i)));

  std::vector<size_t> serial_ranks(batch), parallel_ranks(batch);
  double t0 = now_seconds();
  for (int i = 0; i < batch; ++i) serial_ranks[i] = mat_rank_serial(mats[i]);
  double t1 = now_seconds();
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int i = 0; i < batch; ++i) parallel_ranks[i] = mat_rank_serial(mats[i]);
  double t2 = now_seconds();
  bool batch_agree = serial_ranks == parallel_ranks;
  all_agree = all_agree && batch_agree;
  std::printf("serial loop   : %8.2f ms\n", (t1 - t0) * 1e3);
  std::printf("parallel loop : %8.2f ms\n", (t2 - t1) * 1e3);
  std::printf("agreement     : %s\n", batch_agree ? "yes" : "NO");

  std::printf("\n%s\n", all_agree ? "all kernels agree" : "KERNEL MISMATCH");
  return all_agree ? 0 : 1;
}
