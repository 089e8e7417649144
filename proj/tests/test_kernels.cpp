#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "hywig/kernels.hpp"
#include "hywig/operators.hpp"
#include "hywig/states.hpp"

using namespace hywig;

namespace {

constexpr double SQRT3 = 1.7320508075688772;

// independent displacement route: expm(alpha a^dag - conj(alpha) a)
ComplexOperator displacement_expm(cd alpha, int dim) {
    const ComplexOperator a = annihilation(dim);
    return matrix_exponential(alpha * dagger(a) - std::conj(alpha) * a);
}

double low_block_gap(const ComplexOperator& a, const ComplexOperator& b, int block) {
    double m = 0.0;
    for (int i = 0; i < block; ++i)
        for (int j = 0; j < block; ++j) m = std::max(m, std::abs(a.at(i, j) - b.at(i, j)));
    return m;
}

double entry_gap(const ComplexOperator& a, const ComplexOperator& b) {
    REQUIRE(a.entries.size() == b.entries.size());
    double m = 0.0;
    for (std::size_t i = 0; i < a.entries.size(); ++i)
        m = std::max(m, std::abs(a.entries[i] - b.entries[i]));
    return m;
}

// (1 + sqrt(3) n.sigma)/2 for the rotated Bloch axis the kernel points along
ComplexOperator dv_kernel_closed_form(double theta, double phi) {
    const double nx = -std::sin(theta) * std::cos(phi);
    const double ny = std::sin(theta) * std::sin(phi);
    const double nz = std::cos(theta);
    ComplexOperator k(1, 2);
    k.at(0, 0) = 0.5 * (1.0 + SQRT3 * nz);
    k.at(1, 1) = 0.5 * (1.0 - SQRT3 * nz);
    k.at(0, 1) = 0.5 * SQRT3 * (nx - cd(0, 1) * ny);
    k.at(1, 0) = 0.5 * SQRT3 * (nx + cd(0, 1) * ny);
    return k;
}

} // namespace

TEST_CASE("displacement closed form matches the exponential route") {
    const cd alpha(0.8, -0.6);
    const ComplexOperator fast = displacement(alpha, 25);
    const ComplexOperator slow = displacement_expm(alpha, 25);
    // truncation corrupts the expm route near the boundary, so compare low indices
    CHECK(low_block_gap(fast, slow, 12) < 1e-10);

    CHECK(entry_gap(displacement(0.0, 10), identity(10)) == 0.0);
}

TEST_CASE("displacement truncation diagnostics") {
    CHECK_THROWS_AS(displacement(4.0, 10), truncation_failure);
    CHECK_NOTHROW(displacement(4.0, 10, strictness::warn));
    CHECK_NOTHROW(displacement(0.5, 10));
}

TEST_CASE("parity flips coherent amplitudes") {
    const ComplexOperator p = cv_parity(20);
    const PureState flipped = p * coherent(1.1, 20);
    const PureState target = coherent(-1.1, 20);
    for (int n = 0; n < 20; ++n)
        CHECK(std::abs(flipped.amplitudes[n] - target.amplitudes[n]) < 1e-12);
}

TEST_CASE("cv kernel equals the displaced parity conjugation on low indices") {
    const cd alpha(0.3, 0.2);
    const int d = 24;
    const ComplexOperator direct = cv_kernel(alpha, d);
    const ComplexOperator dop = displacement_expm(alpha, d);
    const ComplexOperator conj_route = 2.0 * (dop * cv_parity(d) * dagger(dop));
    CHECK(low_block_gap(direct, conj_route, 10) < 1e-9);

    CHECK(hermiticity_defect(direct) < 1e-14);
}

TEST_CASE("fock-state field values follow the Laguerre form") {
    // W_n(alpha) = 2 (-1)^n L_n(4|alpha|^2) exp(-2|alpha|^2)
    const cd alpha(0.7, -0.3);
    const double x = 4.0 * std::norm(alpha);
    const double l2 = 1.0 - 2.0 * x + 0.5 * x * x;
    const double expected = 2.0 * l2 * std::exp(-2.0 * std::norm(alpha));
    const cd got = trace_product(density(fock(2, 30)), cv_kernel(alpha, 30));
    CHECK(std::abs(got - cd(expected)) < 1e-10);

    CHECK(std::abs(trace_product(density(fock(0, 16)), cv_kernel(0.0, 16)) - cd(2.0)) < 1e-14);
    CHECK(std::abs(trace_product(density(fock(1, 16)), cv_kernel(0.0, 16)) - cd(-2.0)) < 1e-14);
}

TEST_CASE("qubit kernel closed form and frozen orientation") {
    for (double theta : {0.0, 0.4, 1.2, 2.2, 3.14159})
        for (double phi : {0.0, 0.9, 2.5, 5.8}) {
            const ComplexOperator k = dv_kernel(theta, phi);
            CHECK(entry_gap(k, dv_kernel_closed_form(theta, phi)) < 1e-14);
            CHECK(hermiticity_defect(k) < 1e-15);
            CHECK(std::abs(trace(k) - cd(1.0)) < 1e-14);
        }

    // orientation pin: the x-axis field value of sigma_x at the equator
    const cd sx_val = trace_product(pauli(axis::x), dv_kernel(1.5707963267948966, 0.0));
    CHECK(std::abs(sx_val - cd(-SQRT3)) < 1e-12);

    // the third Euler angle hits the diagonal parity first and drops out
    CHECK(entry_gap(dv_kernel(0.7, 1.9, 0.0), dv_kernel(0.7, 1.9, 1.3)) < 1e-14);
}

TEST_CASE("dv_kernel_entries mirror the operator entries") {
    const double theta = 1.1, phi = 4.2;
    const ComplexOperator k = dv_kernel(theta, phi);
    const DvKernelEntries e = dv_kernel_entries(theta, phi);
    CHECK(std::abs(k.at(0, 0).real() - e.pee) < 1e-15);
    CHECK(std::abs(k.at(1, 1).real() - e.pgg) < 1e-15);
    CHECK(std::abs(k.at(1, 0) - cd(e.ger, e.gei)) < 1e-15);
}

TEST_CASE("hybrid kernel is the tensor of the factors") {
    const cd alpha(0.4, 0.1);
    const double theta = 0.8, phi = 2.0;
    const ComplexOperator h = hybrid_kernel(alpha, theta, phi, 6);
    const ComplexOperator cv = cv_kernel(alpha, 6);
    const ComplexOperator dv = dv_kernel(theta, phi);
    double m = 0.0;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    m = std::max(m, std::abs(h.at(i * 2 + k, j * 2 + l) -
                                             cv.at(i, j) * dv.at(k, l)));
    CHECK(m < 1e-14);
}

TEST_CASE("diagonal-buffer contraction equals the direct kernel trace") {
    const int d = 18;
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);

    ComplexOperator herm(d, 1);
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            const cd z(u(rng), i == j ? 0.0 : u(rng));
            herm.at(i, j) = z;
            herm.at(j, i) = std::conj(z);
        }

    ComplexOperator rho(d, 2);
    for (auto& z : rho.entries) z = cd(u(rng), u(rng));

    const BlockDiagonals hb = extract_block_diagonals(herm, 0, 0);
    CHECK(hb.hermitian);
    const BlockDiagonals eg = extract_block_diagonals(rho, 0, 1);
    CHECK_FALSE(eg.hermitian);

    ComplexOperator eg_block(d, 1);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) eg_block.at(i, j) = rho.at(i * 2 + 0, j * 2 + 1);

    CvKernelEvaluator eval(d);
    const BlockDiagonals* blocks[] = {&hb, &eg};
    for (cd alpha : {cd(0.0, 0.0), cd(0.45, -0.8), cd(-2.1, 1.4), cd(3.9, 3.2)}) {
        cd out[2];
        eval.contract(alpha, blocks, 2, out);
        const ComplexOperator k = cv_kernel(alpha, d);
        const cd want_h = trace_product(herm, k);
        const cd want_eg = trace_product(eg_block, k);
        CHECK(std::abs(out[0] - want_h) < 1e-12 * std::max(1.0, std::abs(want_h)));
        CHECK(std::abs(out[1] - want_eg) < 1e-12 * std::max(1.0, std::abs(want_eg)));
        CHECK(out[0].imag() == doctest::Approx(0.0).epsilon(1e-12)); // Hermitian block
    }
}
