#pragma once

#include <vector>

#include "hywig/operators.hpp"

// Displaced parity kernels. The CV kernel obeys the exact identity
//
//   2 D(alpha) Pi D(-alpha) = 2 D(2 alpha) Pi
//
// (parity conjugation of a displacement flips its sign, and the two
// displacements compose with vanishing phase), so kernel entries are
// closed-form Laguerre expressions that stay exact under truncation. The
// conjugation product is kept in the tests as an independent cross-check on
// low-index blocks.

namespace hywig {

struct SpherePoint {
    double theta = 0.0; // [0, pi]
    double phi = 0.0;   // [0, 2 pi)
};

// <m|D(alpha)|n> via associated-Laguerre closed forms with log-factorial
// prefactors; overflow-safe to dim_field ~200. The truncation diagnostic
// checks that a coherent displacement of the vacuum keeps tail population
// below 1e-8 inside the truncation; `strict` picks warning vs error.
ComplexOperator displacement(cd alpha, int dim_field,
                             strictness strict = strictness::error);

ComplexOperator cv_parity(int dim_field); // diag(+1, -1, ...)

// 2 D(2 alpha) Pi; Hermitian by construction.
ComplexOperator cv_kernel(cd alpha, int dim_field);

ComplexOperator dv_parity(); // (1 + sqrt(3) sigma_z) / 2

// U(theta, phi, Phi) dv_parity U^dag with the half-angle Euler convention
// U = exp(i sigma_z phi/2) exp(i sigma_y theta/2) exp(i sigma_z Phi/2).
// Phi never contributes (it acts on the diagonal parity first); the default
// argument keeps it visible for the independence check.
ComplexOperator dv_kernel(double theta, double phi, double cap_phi = 0.0);

// The four real numbers determining the qubit kernel: diagonal entries and
// the (g,e) entry split into re/im. Enough to contract any 2x2 block.
struct DvKernelEntries {
    double pee, pgg; // diagonal (real)
    double ger, gei; // entry (1,0) = <g|Pi|e>
};
DvKernelEntries dv_kernel_entries(double theta, double phi);

ComplexOperator hybrid_kernel(cd alpha, double theta, double phi, int dim_field);

// --- grid-evaluation core -------------------------------------------------
//
// Tr[B K(alpha)] for dim x dim field blocks B without materializing K:
// kernel values along each subdiagonal come from a stable three-term
// Laguerre recurrence, and the block's diagonals are pre-extracted into
// contiguous buffers so the contraction is a handful of SIMD dot products
// per diagonal.

struct BlockDiagonals {
    int dim = 0;
    bool hermitian = false;
    std::vector<cd> upper; // upper[d*dim + n] = B(n, n+d), n < dim-d
    std::vector<cd> lower; // lower[d*dim + n] = B(n+d, n); empty if hermitian
};

// Extract the field block B(m,n) = op((m, row_level), (n, col_level)).
// row_level/col_level index the atom factor; pass 0,0 for field-only ops.
BlockDiagonals extract_block_diagonals(const ComplexOperator& op, int row_level,
                                       int col_level);

class CvKernelEvaluator {
public:
    explicit CvKernelEvaluator(int dim);

    // out[k] = Tr[B_k K(alpha)] for every block in one kernel sweep.
    void contract(cd alpha, const BlockDiagonals* const* blocks, int nblocks,
                  cd* out);

private:
    int dim_;
    std::vector<cd> k_; // kernel values along the current diagonal
};

} // namespace hywig
