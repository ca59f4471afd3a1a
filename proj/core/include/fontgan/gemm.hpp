#pragma once

#include <cstdint>

namespace fontgan {

// Row-major dense matrix kernels. Every output element is accumulated in
// ascending-k order by exactly one thread, so results are bit-identical
// regardless of thread count. beta is 0 (overwrite) or 1 (accumulate).

// C[m,n] = A[m,k] * B[k,n] + beta*C
void gemm_nn(int64_t m, int64_t n, int64_t k, const double* a, const double* b,
             double* c, double beta);

// C[m,n] = A[m,k] * B[n,k]^T + beta*C
void gemm_nt(int64_t m, int64_t n, int64_t k, const double* a, const double* b,
             double* c, double beta);

// C[m,n] = A[k,m]^T * B[k,n] + beta*C
void gemm_tn(int64_t m, int64_t n, int64_t k, const double* a, const double* b,
             double* c, double beta);

}  // namespace fontgan
