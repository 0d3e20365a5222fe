#include <doctest.h>

#include <cmath>
#include <random>

#include "varietas/kernels.hpp"

using namespace varietas::kernels;

namespace {

double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("kernel sets are listed scalar first") {
    auto all = available();
    REQUIRE_FALSE(all.empty());
    CHECK(all.front()->name == "scalar");
    if (cpu_has_avx2() && avx2()) CHECK(all.size() == 2);
    CHECK(active().complex_matvec != nullptr);
}

TEST_CASE("kernels agree with the scalar reference") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-1, 1);
    const auto& ref = scalar();
    for (const KernelSet* k : available())
        for (std::size_t n = 1; n <= 17; ++n) {
            std::vector<cplx> m(n * n), x(n), y1(n), y2(n);
            std::vector<double> rm(n * n), rx(n), ry1(n), ry2(n);
            for (auto& z : m) z = {u(rng), u(rng)};
            for (auto& z : x) z = {u(rng), u(rng)};
            for (auto& v : rm) v = u(rng);
            for (auto& v : rx) v = u(rng);
            ref.complex_matvec(n, m.data(), x.data(), y1.data());
            k->complex_matvec(n, m.data(), x.data(), y2.data());
            ref.real_matvec(n, rm.data(), rx.data(), ry1.data());
            k->real_matvec(n, rm.data(), rx.data(), ry2.data());
            for (std::size_t i = 0; i < n; ++i) {
                REQUIRE(rel_err(y2[i].real(), y1[i].real()) <= 1e-12);
                REQUIRE(rel_err(y2[i].imag(), y1[i].imag()) <= 1e-12);
                REQUIRE(rel_err(ry2[i], ry1[i]) <= 1e-12);
            }
            REQUIRE(rel_err(k->norm2(n, x.data()), ref.norm2(n, x.data())) <= 1e-12);
        }
}

TEST_CASE("complex product convention") {
    for (const KernelSet* k : available()) {
        std::vector<cplx> m{{0, 1}, {2, 0}, {1, 1}, {0, -1}}, x{{1, 2}, {3, -1}}, y(2);
        k->complex_matvec(2, m.data(), x.data(), y.data());
        CHECK(y[0] == cplx(0, 1) * cplx(1, 2) + cplx(2, 0) * cplx(3, -1));
        CHECK(y[1] == cplx(1, 1) * cplx(1, 2) + cplx(0, -1) * cplx(3, -1));
    }
}
