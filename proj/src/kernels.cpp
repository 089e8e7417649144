#include "hywig/kernels.hpp"

#include <cmath>
#include <iostream>

#include "hywig/simd/kernels.hpp"

namespace hywig {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

// Smallest m with Poisson(x) mass below m at least 1 - tol; the column-0
// unitarity defect of the truncated D(alpha) equals this tail mass.
int poisson_required_dim(double x, double tol) {
    double term = std::exp(-x);
    double cum = term;
    int n = 0;
    while (cum < 1.0 - tol) {
        ++n;
        term *= x / n;
        cum += term;
        if (n > 1000000) throw numeric_failure("displacement: tail search did not converge");
    }
    return n + 1;
}

// Closed-form matrix elements, built one subdiagonal at a time:
//   <n+d|D(alpha)|n> = sqrt(n!/(n+d)!) alpha^d  e^{-x/2} L_n^{(d)}(x)
//   <n|D(alpha)|n+d> = sqrt(n!/(n+d)!) (-conj(alpha))^d e^{-x/2} L_n^{(d)}(x)
// with x = |alpha|^2. Prefactors advance through ratios, the Laguerre values
// through the three-term recurrence; no factorial is ever formed.
ComplexOperator displacement_matrix(cd alpha, int dim) {
    ComplexOperator r(dim, 1);
    const double x = std::norm(alpha);
    if (x == 0.0) return identity(dim);
    const double lx = 0.5 * std::log(x);
    const double psi = std::arg(alpha);
    for (int d = 0; d < dim; ++d) {
        double p = d == 0 ? std::exp(-x / 2.0)
                          : std::exp(-x / 2.0 + d * lx - 0.5 * std::lgamma(d + 1.0));
        if (p == 0.0) continue;
        const cd up = std::polar(1.0, d * psi);
        const cd down = std::polar(1.0, -d * psi) * (d % 2 ? -1.0 : 1.0);
        double lm1 = 0.0, l = 1.0; // L_{n-1}, L_n
        for (int n = 0; n + d < dim; ++n) {
            r.at(n + d, n) = p * l * up;
            r.at(n, n + d) = p * l * down;
            const double lnext = ((2.0 * n + 1.0 + d - x) * l - (n + d) * lm1) / (n + 1.0);
            lm1 = l;
            l = lnext;
            p *= std::sqrt((n + 1.0) / (n + 1.0 + d));
        }
    }
    return r;
}

} // namespace

ComplexOperator displacement(cd alpha, int dim_field, strictness strict) {
    if (dim_field < 1) throw invalid_input("displacement: dim_field must be >= 1");
    const double x = std::norm(alpha);
    if (!std::isfinite(x)) throw invalid_input("displacement: alpha must be finite");
    const int required = poisson_required_dim(x, 1e-8);
    if (dim_field < required) {
        const std::string msg = "displacement(|alpha|=" + std::to_string(std::abs(alpha)) +
                                "): dim_field " + std::to_string(dim_field) +
                                " truncates the displaced vacuum; requires dim_field >= " +
                                std::to_string(required);
        if (strict == strictness::error) throw truncation_failure(msg, required);
        std::cerr << "warning: " << msg << "\n";
    }
    return displacement_matrix(alpha, dim_field);
}

ComplexOperator cv_parity(int dim_field) {
    ComplexOperator r(dim_field, 1);
    for (int n = 0; n < dim_field; ++n) r.at(n, n) = n % 2 ? -1.0 : 1.0;
    return r;
}

ComplexOperator cv_kernel(cd alpha, int dim_field) {
    ComplexOperator r = displacement_matrix(2.0 * alpha, dim_field);
    for (int m = 0; m < dim_field; ++m)
        for (int n = 0; n < dim_field; ++n) r.at(m, n) *= n % 2 ? -2.0 : 2.0;
    return r;
}

ComplexOperator dv_parity() {
    ComplexOperator r(1, 2);
    r.at(0, 0) = (1.0 + kSqrt3) / 2.0;
    r.at(1, 1) = (1.0 - kSqrt3) / 2.0;
    return r;
}

ComplexOperator dv_kernel(double theta, double phi, double cap_phi) {
    // U = Rz(phi) Ry(theta) Rz(Phi), each factor exp(i sigma t / 2)
    const cd ep = std::polar(1.0, phi / 2.0);
    const cd eP = std::polar(1.0, cap_phi / 2.0);
    const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
    const cd u00 = ep * c * eP, u01 = ep * s * std::conj(eP);
    const cd u10 = -std::conj(ep) * s * eP, u11 = std::conj(ep) * c * std::conj(eP);
    const double lp = (1.0 + kSqrt3) / 2.0, lm = (1.0 - kSqrt3) / 2.0;
    ComplexOperator r(1, 2);
    r.at(0, 0) = lp * u00 * std::conj(u00) + lm * u01 * std::conj(u01);
    r.at(0, 1) = lp * u00 * std::conj(u10) + lm * u01 * std::conj(u11);
    r.at(1, 0) = lp * u10 * std::conj(u00) + lm * u11 * std::conj(u01);
    r.at(1, 1) = lp * u10 * std::conj(u10) + lm * u11 * std::conj(u11);
    return r;
}

DvKernelEntries dv_kernel_entries(double theta, double phi) {
    const ComplexOperator k = dv_kernel(theta, phi);
    return {k.at(0, 0).real(), k.at(1, 1).real(), k.at(1, 0).real(), k.at(1, 0).imag()};
}

ComplexOperator hybrid_kernel(cd alpha, double theta, double phi, int dim_field) {
    return tensor(cv_kernel(alpha, dim_field), dv_kernel(theta, phi));
}

BlockDiagonals extract_block_diagonals(const ComplexOperator& op, int row_level,
                                       int col_level) {
    const int na = op.dim_atom, nf = op.dim_field;
    if (row_level >= na || col_level >= na)
        throw invalid_input("extract_block_diagonals: atom level out of range");
    BlockDiagonals b;
    b.dim = nf;
    b.upper.assign(static_cast<std::size_t>(nf) * nf, cd(0));
    b.lower.assign(static_cast<std::size_t>(nf) * nf, cd(0));
    double defect = 0.0;
    for (int d = 0; d < nf; ++d)
        for (int n = 0; n + d < nf; ++n) {
            const cd u = op.at(n * na + row_level, (n + d) * na + col_level);
            const cd l = op.at((n + d) * na + row_level, n * na + col_level);
            b.upper[static_cast<std::size_t>(d) * nf + n] = u;
            b.lower[static_cast<std::size_t>(d) * nf + n] = l;
            defect = std::max(defect, std::abs(l - std::conj(u)));
        }
    if (row_level == col_level && defect <= 1e-12) {
        b.hermitian = true;
        b.lower.clear();
        b.lower.shrink_to_fit();
    }
    return b;
}

CvKernelEvaluator::CvKernelEvaluator(int dim) : dim_(dim), k_(dim) {
    if (dim < 1) throw invalid_input("CvKernelEvaluator: dim must be >= 1");
}

void CvKernelEvaluator::contract(cd alpha, const BlockDiagonals* const* blocks,
                                 int nblocks, cd* out) {
    const auto& be = simd::active_backend();
    const cd xi = 2.0 * alpha;
    const double x = std::norm(xi);
    const double lx = x > 0.0 ? 0.5 * std::log(x) : 0.0;
    const double psi = std::arg(xi);
    for (int b = 0; b < nblocks; ++b) {
        if (blocks[b]->dim != dim_)
            throw invalid_input("CvKernelEvaluator: block dim mismatch");
        out[b] = cd(0);
    }
    const int dmax = x == 0.0 ? 1 : dim_;
    for (int d = 0; d < dmax; ++d) {
        double p = d == 0 ? std::exp(-x / 2.0)
                          : std::exp(-x / 2.0 + d * lx - 0.5 * std::lgamma(d + 1.0));
        if (p == 0.0) continue;
        const cd phase = std::polar(2.0, d * psi); // folds in the kernel's factor 2
        const int len = dim_ - d;
        double lm1 = 0.0, l = 1.0;
        for (int n = 0; n < len; ++n) {
            k_[n] = (n % 2 ? -p : p) * l * phase;
            const double lnext = ((2.0 * n + 1.0 + d - x) * l - (n + d) * lm1) / (n + 1.0);
            lm1 = l;
            l = lnext;
            p *= std::sqrt((n + 1.0) / (n + 1.0 + d));
        }
        for (int b = 0; b < nblocks; ++b) {
            const BlockDiagonals& bd = *blocks[b];
            const cd* up = bd.upper.data() + static_cast<std::size_t>(d) * dim_;
            const cd s1 = be.dot_bilinear(up, k_.data(), len);
            if (d == 0) {
                out[b] += s1;
            } else if (bd.hermitian) {
                out[b] += 2.0 * s1.real();
            } else {
                const cd* lo = bd.lower.data() + static_cast<std::size_t>(d) * dim_;
                out[b] += s1 + std::conj(be.dot_conj(lo, k_.data(), len));
            }
        }
    }
}

} // namespace hywig
