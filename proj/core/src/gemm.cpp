#include "fontgan/gemm.hpp"

#include <algorithm>
#include <cstring>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fontgan {

namespace {

inline void axpy(double* __restrict c, double a, const double* __restrict b, int64_t n) {
  for (int64_t j = 0; j < n; ++j) c[j] += a * b[j];
}

// dot with 8 independent accumulators; lanes combine in a fixed tree so the
// result does not depend on how the caller was scheduled
inline double dot8(const double* __restrict a, const double* __restrict b, int64_t n) {
  double acc[8] = {0, 0, 0, 0, 0, 0, 0, 0};
  int64_t k = 0;
  for (; k + 8 <= n; k += 8) {
    for (int j = 0; j < 8; ++j) acc[j] += a[k + j] * b[k + j];
  }
  for (int j = 0; k < n; ++k, ++j) acc[j] += a[k] * b[k];
  return ((acc[0] + acc[1]) + (acc[2] + acc[3])) + ((acc[4] + acc[5]) + (acc[6] + acc[7]));
}

inline int64_t thread_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace

void gemm_nn(int64_t m, int64_t n, int64_t k, const double* a, const double* b,
             double* c, double beta) {
  if (beta == 0.0) std::memset(c, 0, static_cast<size_t>(m * n) * sizeof(double));
  const int64_t nt = thread_count();
  if (m >= 2 * nt || n < 16) {
    // each thread owns a stripe of C rows
#pragma omp parallel for schedule(static)
    for (int64_t i = 0; i < m; ++i) {
      double* ci = c + i * n;
      const double* ai = a + i * k;
      for (int64_t l = 0; l < k; ++l) axpy(ci, ai[l], b + l * n, n);
    }
  } else {
    // few rows: split C columns instead, k outermost so each B row streams once
#pragma omp parallel
    {
#ifdef _OPENMP
      const int64_t tid = omp_get_thread_num();
      const int64_t tn = omp_get_num_threads();
#else
      const int64_t tid = 0, tn = 1;
#endif
      const int64_t chunk = (n + tn - 1) / tn;
      const int64_t j0 = std::min(n, tid * chunk);
      const int64_t j1 = std::min(n, j0 + chunk);
      if (j0 < j1) {
        for (int64_t l = 0; l < k; ++l) {
          const double* bl = b + l * n;
          for (int64_t i = 0; i < m; ++i) axpy(c + i * n + j0, a[i * k + l], bl + j0, j1 - j0);
        }
      }
    }
  }
}

void gemm_nt(int64_t m, int64_t n, int64_t k, const double* a, const double* b,
             double* c, double beta) {
  if (m >= n) {
#pragma omp parallel for schedule(static)
    for (int64_t i = 0; i < m; ++i) {
      const double* ai = a + i * k;
      double* ci = c + i * n;
      for (int64_t j = 0; j < n; ++j) {
        double d = dot8(ai, b + j * k, k);
        ci[j] = beta == 0.0 ? d : ci[j] + d;
      }
    }
  } else {
#pragma omp parallel for schedule(static)
    for (int64_t j = 0; j < n; ++j) {
      const double* bj = b + j * k;
      for (int64_t i = 0; i < m; ++i) {
        double d = dot8(a + i * k, bj, k);
        c[i * n + j] = beta == 0.0 ? d : c[i * n + j] + d;
      }
    }
  }
}

void gemm_tn(int64_t m, int64_t n, int64_t k, const double* a, const double* b,
             double* c, double beta) {
  if (beta == 0.0) std::memset(c, 0, static_cast<size_t>(m * n) * sizeof(double));
#pragma omp parallel for schedule(static)
  for (int64_t i = 0; i < m; ++i) {
    double* ci = c + i * n;
    for (int64_t l = 0; l < k; ++l) axpy(ci, a[l * m + i], b + l * n, n);
  }
}

}  // namespace fontgan
