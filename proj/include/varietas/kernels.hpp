#pragma once

// Dense numeric kernels used by the quantum automaton simulator.

#include <complex>
#include <cstddef>
#include <string_view>
#include <vector>

namespace varietas::kernels {

using cplx = std::complex<double>;

/// y = M x for a row-major k x k complex matrix.
using ComplexMatvec = void (*)(std::size_t k, const cplx* m, const cplx* x, cplx* y);
/// y = M x for a row-major k x k real matrix.
using RealMatvec = void (*)(std::size_t k, const double* m, const double* x, double* y);
/// Sum of |x_i|^2.
using Norm2 = double (*)(std::size_t n, const cplx* x);

struct KernelSet {
    std::string_view name;
    ComplexMatvec complex_matvec;
    RealMatvec real_matvec;
    Norm2 norm2;
};

const KernelSet& scalar();
/// nullptr when the binary was built without AVX2 support.
const KernelSet* avx2();

bool cpu_has_avx2();

/// AVX2 when the CPU supports it, unless VARIETAS_KERNEL=scalar. VARIETAS_KERNEL=avx2 on a CPU
/// without AVX2 falls back to scalar.
const KernelSet& active();

/// All kernel sets usable on this machine, scalar first.
std::vector<const KernelSet*> available();

}  // namespace varietas::kernels
