#include "hywig/simd/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace hywig::simd {
namespace {

cd dot_bilinear(const cd* a, const cd* b, std::size_t n) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        re += ar * br - ai * bi;
        im += ar * bi + ai * br;
    }
    return {re, im};
}

cd dot_conj(const cd* a, const cd* b, std::size_t n) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        re += ar * br + ai * bi;
        im += ar * bi - ai * br;
    }
    return {re, im};
}

double dot_real(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

double neg_part_dot(const double* w, const double* f, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += w[i] * std::max(0.0, -f[i]);
    return s;
}

double max_abs(const double* a, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(a[i]));
    return m;
}

void axpy(double s, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += s * x[i];
}

void qubit_trace(double cee, double cgg, double cr, double ci,
                 const double* pee, const double* pgg,
                 const double* pr, const double* pi,
                 double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        out[i] = cee * pee[i] + cgg * pgg[i] + 2.0 * (cr * pr[i] - ci * pi[i]);
}

} // namespace

const backend& scalar_backend() {
    static const backend b{"scalar",   dot_bilinear, dot_conj, dot_real,
                           neg_part_dot, max_abs,     axpy,     qubit_trace};
    return b;
}

} // namespace hywig::simd
