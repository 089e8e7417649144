#include "hywig/operators.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace hywig {

namespace {

using EMat = Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const EMat> as_eigen(const ComplexOperator& a) {
    return {a.entries.data(), a.dim(), a.dim()};
}

void require_same_shape(const ComplexOperator& a, const ComplexOperator& b) {
    if (a.dim_field != b.dim_field || a.dim_atom != b.dim_atom)
        throw invalid_input("operator shape mismatch");
}

} // namespace

ComplexOperator identity(int dim_field, int dim_atom) {
    ComplexOperator r(dim_field, dim_atom);
    for (int i = 0; i < r.dim(); ++i) r.at(i, i) = 1.0;
    return r;
}

ComplexOperator annihilation(int dim_field) {
    if (dim_field < 2) throw invalid_input("annihilation requires dim_field >= 2");
    ComplexOperator r(dim_field, 1);
    for (int n = 1; n < dim_field; ++n) r.at(n - 1, n) = std::sqrt(double(n));
    return r;
}

ComplexOperator pauli(axis ax) {
    ComplexOperator r(1, 2);
    switch (ax) {
    case axis::x: r.at(0, 1) = 1.0; r.at(1, 0) = 1.0; break;
    case axis::y: r.at(0, 1) = cd(0, -1); r.at(1, 0) = cd(0, 1); break;
    case axis::z: r.at(0, 0) = 1.0; r.at(1, 1) = -1.0; break;
    }
    return r;
}

ComplexOperator tensor(const ComplexOperator& a, const ComplexOperator& b) {
    // Field-major order admits kron(A, B) only when A's atom factor or B's
    // field factor is trivial; otherwise index groups would interleave.
    if (a.dim_atom != 1 && b.dim_field != 1)
        throw invalid_input("tensor: factors incompatible with field-major basis order");
    const int da = a.dim(), db = b.dim();
    ComplexOperator r(a.dim_field * b.dim_field, a.dim_atom * b.dim_atom);
    for (int i1 = 0; i1 < da; ++i1)
        for (int j1 = 0; j1 < da; ++j1) {
            const cd aij = a.at(i1, j1);
            if (aij == cd(0)) continue;
            for (int i2 = 0; i2 < db; ++i2)
                for (int j2 = 0; j2 < db; ++j2)
                    r.at(i1 * db + i2, j1 * db + j2) = aij * b.at(i2, j2);
        }
    return r;
}

ComplexOperator partial_trace(const ComplexOperator& rho, subsystem keep) {
    if (rho.dim_atom == 1) throw invalid_input("partial_trace: no atom factor to trace over");
    const int nf = rho.dim_field, na = rho.dim_atom;
    if (keep == subsystem::field) {
        ComplexOperator r(nf, 1);
        for (int m = 0; m < nf; ++m)
            for (int n = 0; n < nf; ++n) {
                cd s = 0;
                for (int a = 0; a < na; ++a) s += rho.at(m * na + a, n * na + a);
                r.at(m, n) = s;
            }
        return r;
    }
    ComplexOperator r(1, na);
    for (int a = 0; a < na; ++a)
        for (int b = 0; b < na; ++b) {
            cd s = 0;
            for (int n = 0; n < nf; ++n) s += rho.at(n * na + a, n * na + b);
            r.at(a, b) = s;
        }
    return r;
}

ComplexOperator matrix_exponential(const ComplexOperator& a) {
    for (const cd& v : a.entries)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw numeric_failure("matrix_exponential: non-finite entry");
    ComplexOperator r(a.dim_field, a.dim_atom);
    Eigen::Map<EMat>(r.entries.data(), a.dim(), a.dim()) = as_eigen(a).exp();
    return r;
}

ComplexOperator dagger(const ComplexOperator& a) {
    ComplexOperator r(a.dim_field, a.dim_atom);
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) r.at(i, j) = std::conj(a.at(j, i));
    return r;
}

cd trace(const ComplexOperator& a) {
    cd s = 0;
    for (int i = 0; i < a.dim(); ++i) s += a.at(i, i);
    return s;
}

cd trace_product(const ComplexOperator& a, const ComplexOperator& b) {
    require_same_shape(a, b);
    cd s = 0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) s += a.at(i, j) * b.at(j, i);
    return s;
}

ComplexOperator operator+(const ComplexOperator& a, const ComplexOperator& b) {
    require_same_shape(a, b);
    ComplexOperator r = a;
    for (std::size_t i = 0; i < r.entries.size(); ++i) r.entries[i] += b.entries[i];
    return r;
}

ComplexOperator operator-(const ComplexOperator& a, const ComplexOperator& b) {
    require_same_shape(a, b);
    ComplexOperator r = a;
    for (std::size_t i = 0; i < r.entries.size(); ++i) r.entries[i] -= b.entries[i];
    return r;
}

ComplexOperator operator*(const ComplexOperator& a, const ComplexOperator& b) {
    require_same_shape(a, b);
    ComplexOperator r(a.dim_field, a.dim_atom);
    Eigen::Map<EMat>(r.entries.data(), r.dim(), r.dim()) = as_eigen(a) * as_eigen(b);
    return r;
}

ComplexOperator operator*(cd s, const ComplexOperator& a) {
    ComplexOperator r = a;
    for (cd& v : r.entries) v *= s;
    return r;
}

PureState operator*(const ComplexOperator& a, const PureState& v) {
    if (a.dim() != v.dim()) throw invalid_input("operator/state dim mismatch");
    PureState r(v.dim_field, v.dim_atom);
    for (int i = 0; i < a.dim(); ++i) {
        cd s = 0;
        for (int j = 0; j < a.dim(); ++j) s += a.at(i, j) * v.amplitudes[j];
        r.amplitudes[i] = s;
    }
    return r;
}

cd inner(const PureState& a, const PureState& b) {
    if (a.dim() != b.dim()) throw invalid_input("state dim mismatch");
    cd s = 0;
    for (int i = 0; i < a.dim(); ++i) s += std::conj(a.amplitudes[i]) * b.amplitudes[i];
    return s;
}

double norm(const PureState& a) { return std::sqrt(std::real(inner(a, a))); }

PureState normalized(const PureState& a) {
    const double n = norm(a);
    if (n == 0.0) throw numeric_failure("cannot normalize zero state");
    PureState r = a;
    for (cd& v : r.amplitudes) v /= n;
    return r;
}

double fidelity(const PureState& a, const PureState& b) {
    return std::norm(inner(a, b));
}

double hermiticity_defect(const ComplexOperator& a) {
    double d = 0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = i; j < a.dim(); ++j)
            d = std::max(d, std::abs(a.at(i, j) - std::conj(a.at(j, i))));
    return d;
}

bool is_hermitian(const ComplexOperator& a, double tol) {
    return hermiticity_defect(a) <= tol;
}

double min_eigenvalue(const ComplexOperator& a, double herm_tol) {
    if (hermiticity_defect(a) > herm_tol)
        throw numeric_failure("min_eigenvalue: input not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(as_eigen(a),
                                                       Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw numeric_failure("min_eigenvalue: eigensolver failed");
    return es.eigenvalues().minCoeff();
}

double purity(const ComplexOperator& rho) {
    // rho Hermitian: Tr[rho^2] = sum |rho_ij|^2
    double s = 0;
    for (const cd& v : rho.entries) s += std::norm(v);
    return s;
}

void check_density_invariants(const ComplexOperator& rho, const std::string& label) {
    const double hd = hermiticity_defect(rho);
    if (hd > 1e-12)
        throw verification_failure(label + ": hermiticity defect " + std::to_string(hd));
    const cd tr = trace(rho);
    if (std::abs(tr - cd(1.0)) > 1e-10)
        throw verification_failure(label + ": trace deviates from 1 by " +
                                   std::to_string(std::abs(tr - cd(1.0))));
    const double mev = min_eigenvalue(rho);
    if (mev < -1e-10)
        throw verification_failure(label + ": negative eigenvalue " + std::to_string(mev));
}

} // namespace hywig
