#pragma once

#include <vector>

#include "hywig/types.hpp"

// Dense complex linear algebra over truncated Hilbert spaces.
//
// Basis convention (fixed everywhere): field-major, index = n_fock * dim_atom
// + atom_level, with atom_level 0 = |e> and 1 = |g>. dim_atom = 1 means the
// atom factor is absent. All values are immutable after construction as far
// as the library is concerned; nothing here mutates shared state.

namespace hywig {

enum class axis { x, y, z };
enum class subsystem { field, atom };

struct ComplexOperator {
    int dim_field = 1;
    int dim_atom = 1;
    std::vector<cd> entries; // row-major, square of side dim_field*dim_atom

    ComplexOperator() = default;
    ComplexOperator(int nf, int na)
        : dim_field(nf), dim_atom(na),
          entries(static_cast<std::size_t>(nf) * na * nf * na) {
        if (nf < 1 || na < 1 || na > 2)
            throw invalid_input("operator dims must satisfy dim_field >= 1, dim_atom in {1,2}");
    }

    int dim() const { return dim_field * dim_atom; }
    cd& at(int r, int c) { return entries[static_cast<std::size_t>(r) * dim() + c]; }
    const cd& at(int r, int c) const { return entries[static_cast<std::size_t>(r) * dim() + c]; }
};

struct PureState {
    int dim_field = 1;
    int dim_atom = 1;
    std::vector<cd> amplitudes;

    PureState() = default;
    PureState(int nf, int na)
        : dim_field(nf), dim_atom(na), amplitudes(static_cast<std::size_t>(nf) * na) {}

    int dim() const { return dim_field * dim_atom; }
};

ComplexOperator identity(int dim_field, int dim_atom = 1);

// <m|a|n> = sqrt(n) delta_{m,n-1}. Truncation artifact: [a, a^dag] equals the
// identity on the top-left (dim_field-1) block, but its bottom-right diagonal
// entry is 1 - dim_field.
ComplexOperator annihilation(int dim_field);

ComplexOperator pauli(axis ax);

// Kronecker product respecting the field-major basis order. Allowed shapes:
// A carries no atom factor, or B carries no field factor.
ComplexOperator tensor(const ComplexOperator& a, const ComplexOperator& b);

ComplexOperator partial_trace(const ComplexOperator& rho, subsystem keep);

// Scaling-and-squaring Pade evaluation (delegated to Eigen).
ComplexOperator matrix_exponential(const ComplexOperator& a);

ComplexOperator dagger(const ComplexOperator& a);
cd trace(const ComplexOperator& a);

// Tr[A B] without forming the product.
cd trace_product(const ComplexOperator& a, const ComplexOperator& b);

ComplexOperator operator+(const ComplexOperator& a, const ComplexOperator& b);
ComplexOperator operator-(const ComplexOperator& a, const ComplexOperator& b);
ComplexOperator operator*(const ComplexOperator& a, const ComplexOperator& b);
ComplexOperator operator*(cd s, const ComplexOperator& a);
PureState operator*(const ComplexOperator& a, const PureState& v);

cd inner(const PureState& a, const PureState& b); // <a|b>
double norm(const PureState& a);
PureState normalized(const PureState& a);
double fidelity(const PureState& a, const PureState& b); // |<a|b>|^2

// max_{ij} |A_ij - conj(A_ji)|
double hermiticity_defect(const ComplexOperator& a);
bool is_hermitian(const ComplexOperator& a, double tol = 1e-12);

// Smallest eigenvalue; input must be Hermitian within tol (checked).
double min_eigenvalue(const ComplexOperator& a, double herm_tol = 1e-9);

double purity(const ComplexOperator& rho); // Re Tr[rho^2]

// Throws verification_failure unless rho is Hermitian (1e-12), unit trace
// (1e-10) and PSD (eigenvalues >= -1e-10).
void check_density_invariants(const ComplexOperator& rho, const std::string& label);

} // namespace hywig
