#include "varietas/kernels.hpp"

#include <cstdlib>
#include <string>

namespace varietas::kernels {

namespace {

void complex_matvec_scalar(std::size_t k, const cplx* m, const cplx* x, cplx* y) {
    for (std::size_t i = 0; i < k; ++i) {
        double re = 0, im = 0;
        const cplx* row = m + i * k;
        for (std::size_t j = 0; j < k; ++j) {
            re += row[j].real() * x[j].real() - row[j].imag() * x[j].imag();
            im += row[j].real() * x[j].imag() + row[j].imag() * x[j].real();
        }
        y[i] = {re, im};
    }
}

void real_matvec_scalar(std::size_t k, const double* m, const double* x, double* y) {
    for (std::size_t i = 0; i < k; ++i) {
        double s = 0;
        for (std::size_t j = 0; j < k; ++j) s += m[i * k + j] * x[j];
        y[i] = s;
    }
}

double norm2_scalar(std::size_t n, const cplx* x) {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return s;
}

const KernelSet kScalar{"scalar", complex_matvec_scalar, real_matvec_scalar, norm2_scalar};

}  // namespace

#ifdef VARIETAS_HAVE_AVX2
const KernelSet& avx2_kernels();
#endif

const KernelSet& scalar() { return kScalar; }

const KernelSet* avx2() {
#ifdef VARIETAS_HAVE_AVX2
    return &avx2_kernels();
#else
    return nullptr;
#endif
}

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

const KernelSet& active() {
    static const KernelSet* chosen = [] {
        const char* env = std::getenv("VARIETAS_KERNEL");
        if (env && std::string(env) == "scalar") return &kScalar;
        if (avx2() && cpu_has_avx2()) return avx2();
        return &kScalar;
    }();
    return *chosen;
}

std::vector<const KernelSet*> available() {
    std::vector<const KernelSet*> out{&kScalar};
    if (avx2() && cpu_has_avx2()) out.push_back(avx2());
    return out;
}

}  // namespace varietas::kernels
