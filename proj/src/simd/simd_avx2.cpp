// AVX2+FMA backend. Compiled with -mavx2 -mfma on x86 only; selection happens
// at runtime in simd_dispatch.cpp, so this TU must not be entered on CPUs
// without AVX2.

#include "hywig/simd/kernels.hpp"

#if HYWIG_HAVE_AVX2_TU

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace hywig::simd {
namespace {

inline void reduce4(__m256d v, double out[4]) { _mm256_storeu_pd(out, v); }

cd dot_bilinear(const cd* a, const cd* b, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    __m256d p0 = _mm256_setzero_pd(), q0 = _mm256_setzero_pd();
    __m256d p1 = _mm256_setzero_pd(), q1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d va0 = _mm256_loadu_pd(pa + 2 * i);
        __m256d vb0 = _mm256_loadu_pd(pb + 2 * i);
        __m256d va1 = _mm256_loadu_pd(pa + 2 * i + 4);
        __m256d vb1 = _mm256_loadu_pd(pb + 2 * i + 4);
        p0 = _mm256_fmadd_pd(va0, vb0, p0);
        q0 = _mm256_fmadd_pd(va0, _mm256_shuffle_pd(vb0, vb0, 0x5), q0);
        p1 = _mm256_fmadd_pd(va1, vb1, p1);
        q1 = _mm256_fmadd_pd(va1, _mm256_shuffle_pd(vb1, vb1, 0x5), q1);
    }
    p0 = _mm256_add_pd(p0, p1);
    q0 = _mm256_add_pd(q0, q1);
    double pp[4], qq[4];
    reduce4(p0, pp);
    reduce4(q0, qq);
    double re = (pp[0] - pp[1]) + (pp[2] - pp[3]);
    double im = (qq[0] + qq[1]) + (qq[2] + qq[3]);
    for (; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        re += ar * br - ai * bi;
        im += ar * bi + ai * br;
    }
    return {re, im};
}

cd dot_conj(const cd* a, const cd* b, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    __m256d p0 = _mm256_setzero_pd(), q0 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d va = _mm256_loadu_pd(pa + 2 * i);
        __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        p0 = _mm256_fmadd_pd(va, vb, p0);
        q0 = _mm256_fmadd_pd(va, _mm256_shuffle_pd(vb, vb, 0x5), q0);
    }
    double pp[4], qq[4];
    reduce4(p0, pp);
    reduce4(q0, qq);
    double re = (pp[0] + pp[1]) + (pp[2] + pp[3]);
    double im = (qq[0] - qq[1]) + (qq[2] - qq[3]);
    for (; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        re += ar * br + ai * bi;
        im += ar * bi - ai * br;
    }
    return {re, im};
}

double dot_real(const double* a, const double* b, std::size_t n) {
    __m256d s0 = _mm256_setzero_pd(), s1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        s0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), s0);
        s1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), s1);
    }
    for (; i + 4 <= n; i += 4)
        s0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), s0);
    double ss[4];
    reduce4(_mm256_add_pd(s0, s1), ss);
    double s = (ss[0] + ss[1]) + (ss[2] + ss[3]);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

double neg_part_dot(const double* w, const double* f, std::size_t n) {
    const __m256d zero = _mm256_setzero_pd();
    __m256d s0 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d neg = _mm256_max_pd(zero, _mm256_sub_pd(zero, _mm256_loadu_pd(f + i)));
        s0 = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), neg, s0);
    }
    double ss[4];
    reduce4(s0, ss);
    double s = (ss[0] + ss[1]) + (ss[2] + ss[3]);
    for (; i < n; ++i) s += w[i] * std::max(0.0, -f[i]);
    return s;
}

double max_abs(const double* a, std::size_t n) {
    const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    __m256d m0 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        m0 = _mm256_max_pd(m0, _mm256_and_pd(mask, _mm256_loadu_pd(a + i)));
    double mm[4];
    reduce4(m0, mm);
    double m = std::max(std::max(mm[0], mm[1]), std::max(mm[2], mm[3]));
    for (; i < n; ++i) m = std::max(m, std::abs(a[i]));
    return m;
}

void axpy(double s, const double* x, double* y, std::size_t n) {
    const __m256d vs = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(vs, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    for (; i < n; ++i) y[i] += s * x[i];
}

void qubit_trace(double cee, double cgg, double cr, double ci,
                 const double* pee, const double* pgg,
                 const double* pr, const double* pi,
                 double* out, std::size_t n) {
    const __m256d vee = _mm256_set1_pd(cee);
    const __m256d vgg = _mm256_set1_pd(cgg);
    const __m256d vr = _mm256_set1_pd(2.0 * cr);
    const __m256d vi = _mm256_set1_pd(2.0 * ci);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d t = _mm256_mul_pd(vee, _mm256_loadu_pd(pee + i));
        t = _mm256_fmadd_pd(vgg, _mm256_loadu_pd(pgg + i), t);
        t = _mm256_fmadd_pd(vr, _mm256_loadu_pd(pr + i), t);
        t = _mm256_fnmadd_pd(vi, _mm256_loadu_pd(pi + i), t);
        _mm256_storeu_pd(out + i, t);
    }
    for (; i < n; ++i)
        out[i] = cee * pee[i] + cgg * pgg[i] + 2.0 * (cr * pr[i] - ci * pi[i]);
}

} // namespace

const backend& avx2_backend() {
    static const backend b{"avx2",     dot_bilinear, dot_conj, dot_real,
                           neg_part_dot, max_abs,     axpy,     qubit_trace};
    return b;
}

} // namespace hywig::simd

#endif // HYWIG_HAVE_AVX2_TU
