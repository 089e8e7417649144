#pragma once

#include <complex>
#include <cstddef>

// Hot inner loops of the grid evaluators. A scalar reference backend always
// exists; on x86 an AVX2+FMA backend is compiled in a separate translation
// unit and selected at runtime. Backends must agree to floating-point
// reassociation tolerance (covered by equivalence tests).

namespace hywig::simd {

using cd = std::complex<double>;

struct backend {
    const char* name;
    // sum a[i]*b[i], no conjugation (Frobenius-style trace contraction
    // against a pre-transposed factor)
    cd (*dot_bilinear)(const cd* a, const cd* b, std::size_t n);
    // sum conj(a[i])*b[i]
    cd (*dot_conj)(const cd* a, const cd* b, std::size_t n);
    // sum a[i]*b[i]
    double (*dot_real)(const double* a, const double* b, std::size_t n);
    // sum w[i]*max(0, -f[i])
    double (*neg_part_dot)(const double* w, const double* f, std::size_t n);
    // max |a[i]|, 0 for empty
    double (*max_abs)(const double* a, std::size_t n);
    // y[i] += s*x[i]
    void (*axpy)(double s, const double* x, double* y, std::size_t n);
    // out[i] = cee*pee[i] + cgg*pgg[i] + 2*(cr*pr[i] - ci*pi[i])
    // (trace of a 2x2 operator block against cached kernel entries per node)
    void (*qubit_trace)(double cee, double cgg, double cr, double ci,
                        const double* pee, const double* pgg,
                        const double* pr, const double* pi,
                        double* out, std::size_t n);
};

const backend& scalar_backend();
#if HYWIG_HAVE_AVX2_TU
const backend& avx2_backend();
bool avx2_supported();
#endif

// runtime-selected backend (AVX2 when the CPU supports it)
const backend& active_backend();

} // namespace hywig::simd
