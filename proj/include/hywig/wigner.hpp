#pragma once

#include "hywig/fields.hpp"
#include "hywig/kernels.hpp"

// Wigner field evaluation W_A(Omega) = Tr[A Pi(Omega)] over grids, plus the
// scalar diagnostics built from the quadrature weights. Real-valued
// evaluators require a Hermitian operator (defect <= 1e-10) and assert that
// the imaginary residue stays below 1e-10; non-Hermitian operators must go
// through the *_complex variants so a complex field is never silently
// realified.

namespace hywig {

Field evaluate_cv(const ComplexOperator& a, const CvGrid& grid,
                  const std::string& label = "");
Field evaluate_dv(const ComplexOperator& a, const SphereGrid& grid,
                  const std::string& label = "");
Field evaluate_hybrid(const ComplexOperator& rho, const CvGrid& cv,
                      const SphereGrid& sphere, const std::string& label = "");

std::vector<cd> evaluate_cv_complex(const ComplexOperator& a, const CvGrid& grid);
std::vector<cd> evaluate_dv_complex(const ComplexOperator& a, const SphereGrid& grid);

// quadrature sum; equals Tr[A] up to quadrature/truncation error
double integrate(const Field& f);

// integrate out the other subsystem of a hybrid field
Field marginal(const Field& hybrid, field_kind keep);

// integral of the negative part, (|W| - W) / 2
double negativity_volume(const Field& f);

// per-alpha max |W| over the sphere (the transparency weight)
Field max_abs_per_alpha(const Field& hybrid);

double field_max_abs(const Field& f);

// weighted cosine similarity of two fields on the same grid
double field_correlation(const Field& a, const Field& b);

} // namespace hywig
