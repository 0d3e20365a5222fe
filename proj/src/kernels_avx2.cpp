#include <immintrin.h>

#include "varietas/kernels.hpp"

namespace varietas::kernels {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

// Two complex products per lane pair: (mr xr - mi xi, mi xr + mr xi).
inline __m256d cmul(__m256d m, __m256d x) {
    __m256d xr = _mm256_movedup_pd(x);
    __m256d xi = _mm256_permute_pd(x, 0xF);
    __m256d ms = _mm256_permute_pd(m, 0x5);
    return _mm256_addsub_pd(_mm256_mul_pd(m, xr), _mm256_mul_pd(ms, xi));
}

void complex_matvec_avx2(std::size_t k, const cplx* m, const cplx* x, cplx* y) {
    const double* xd = reinterpret_cast<const double*>(x);
    for (std::size_t i = 0; i < k; ++i) {
        const double* row = reinterpret_cast<const double*>(m + i * k);
        __m256d acc = _mm256_setzero_pd();
        std::size_t j = 0;
        for (; j + 2 <= k; j += 2) acc = _mm256_add_pd(acc, cmul(_mm256_loadu_pd(row + 2 * j), _mm256_loadu_pd(xd + 2 * j)));
        __m128d s = _mm_add_pd(_mm256_castpd256_pd128(acc), _mm256_extractf128_pd(acc, 1));
        double re = _mm_cvtsd_f64(s), im = _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
        for (; j < k; ++j) {
            re += row[2 * j] * xd[2 * j] - row[2 * j + 1] * xd[2 * j + 1];
            im += row[2 * j] * xd[2 * j + 1] + row[2 * j + 1] * xd[2 * j];
        }
        y[i] = {re, im};
    }
}

void real_matvec_avx2(std::size_t k, const double* m, const double* x, double* y) {
    for (std::size_t i = 0; i < k; ++i) {
        const double* row = m + i * k;
        __m256d acc = _mm256_setzero_pd();
        std::size_t j = 0;
        for (; j + 4 <= k; j += 4) acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(row + j), _mm256_loadu_pd(x + j)));
        double s = hsum(acc);
        for (; j < k; ++j) s += row[j] * x[j];
        y[i] = s;
    }
}

double norm2_avx2(std::size_t n, const cplx* x) {
    const double* d = reinterpret_cast<const double*>(x);
    const std::size_t len = 2 * n;
    __m256d acc = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= len; j += 4) {
        __m256d v = _mm256_loadu_pd(d + j);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
    }
    double s = hsum(acc);
    for (; j < len; ++j) s += d[j] * d[j];
    return s;
}

const KernelSet kAvx2{"avx2", complex_matvec_avx2, real_matvec_avx2, norm2_avx2};

}  // namespace

const KernelSet& avx2_kernels() { return kAvx2; }

}  // namespace varietas::kernels
