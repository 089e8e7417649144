#include "hywig/wigner.hpp"

#include <cmath>

#include "hywig/simd/kernels.hpp"

namespace hywig {

namespace {

struct DvKernelCache {
    std::vector<double> pee, pgg, ger, gei; // one entry per sphere node

    explicit DvKernelCache(const SphereGrid& g) {
        const std::size_t n = g.size();
        pee.resize(n);
        pgg.resize(n);
        ger.resize(n);
        gei.resize(n);
        for (int i = 0; i < g.n_theta; ++i)
            for (int j = 0; j < g.n_phi; ++j) {
                const DvKernelEntries e = dv_kernel_entries(g.theta[i], g.phi[j]);
                const std::size_t k = static_cast<std::size_t>(i) * g.n_phi + j;
                pee[k] = e.pee;
                pgg[k] = e.pgg;
                ger[k] = e.ger;
                gei[k] = e.gei;
            }
    }
};

void require_hermitian(const ComplexOperator& a, const char* who) {
    if (hermiticity_defect(a) > 1e-10)
        throw invalid_input(std::string(who) +
                            ": operator is not Hermitian; its Wigner field is "
                            "complex-valued, use the _complex variant");
}

void check_imag_residue(double max_imag, const char* who) {
    if (max_imag > 1e-10)
        throw numeric_failure(std::string(who) + ": imaginary residue " +
                              std::to_string(max_imag) + " exceeds 1e-10");
}

std::vector<cd> cv_complex_impl(const ComplexOperator& a, const CvGrid& grid) {
    if (a.dim_atom != 1) throw invalid_input("evaluate_cv: operator must be field-only");
    const BlockDiagonals bd = extract_block_diagonals(a, 0, 0);
    const BlockDiagonals* blocks[1] = {&bd};
    std::vector<cd> out(grid.size());
#ifdef _OPENMP
#pragma omp parallel
#endif
    {
        CvKernelEvaluator ev(a.dim_field);
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
        for (int i = 0; i < grid.n_re; ++i)
            for (int j = 0; j < grid.n_im; ++j)
                ev.contract(grid.node(i, j), blocks, 1,
                            &out[static_cast<std::size_t>(i) * grid.n_im + j]);
    }
    return out;
}

std::vector<cd> dv_complex_impl(const ComplexOperator& a, const SphereGrid& grid) {
    if (a.dim_field != 1 || a.dim_atom != 2)
        throw invalid_input("evaluate_dv: operator must be atom-only");
    std::vector<cd> out(grid.size());
    for (int i = 0; i < grid.n_theta; ++i)
        for (int j = 0; j < grid.n_phi; ++j) {
            const ComplexOperator k = dv_kernel(grid.theta[i], grid.phi[j]);
            out[static_cast<std::size_t>(i) * grid.n_phi + j] = trace_product(a, k);
        }
    return out;
}

} // namespace

Field evaluate_cv(const ComplexOperator& a, const CvGrid& grid, const std::string& label) {
    require_hermitian(a, "evaluate_cv");
    const std::vector<cd> c = cv_complex_impl(a, grid);
    Field f;
    f.kind = field_kind::cv;
    f.cv_grid = grid;
    f.state_label = label;
    f.trace_target = trace(a).real();
    f.values.resize(c.size());
    double mi = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        f.values[i] = c[i].real();
        mi = std::max(mi, std::abs(c[i].imag()));
    }
    check_imag_residue(mi, "evaluate_cv");
    return f;
}

Field evaluate_dv(const ComplexOperator& a, const SphereGrid& grid, const std::string& label) {
    require_hermitian(a, "evaluate_dv");
    if (a.dim_field != 1 || a.dim_atom != 2)
        throw invalid_input("evaluate_dv: operator must be atom-only");
    Field f;
    f.kind = field_kind::dv;
    f.sphere_grid = grid;
    f.state_label = label;
    f.trace_target = trace(a).real();
    f.values.resize(grid.size());
    const DvKernelCache cache(grid);
    simd::active_backend().qubit_trace(a.at(0, 0).real(), a.at(1, 1).real(),
                                       a.at(0, 1).real(), a.at(0, 1).imag(),
                                       cache.pee.data(), cache.pgg.data(),
                                       cache.ger.data(), cache.gei.data(),
                                       f.values.data(), f.values.size());
    return f;
}

std::vector<cd> evaluate_cv_complex(const ComplexOperator& a, const CvGrid& grid) {
    return cv_complex_impl(a, grid);
}

std::vector<cd> evaluate_dv_complex(const ComplexOperator& a, const SphereGrid& grid) {
    return dv_complex_impl(a, grid);
}

Field evaluate_hybrid(const ComplexOperator& rho, const CvGrid& cv,
                      const SphereGrid& sphere, const std::string& label) {
    if (rho.dim_atom != 2)
        throw invalid_input("evaluate_hybrid: operator must carry both factors");
    require_hermitian(rho, "evaluate_hybrid");
    const BlockDiagonals ee = extract_block_diagonals(rho, 0, 0);
    const BlockDiagonals gg = extract_block_diagonals(rho, 1, 1);
    const BlockDiagonals eg = extract_block_diagonals(rho, 0, 1);
    const BlockDiagonals* blocks[3] = {&ee, &gg, &eg};
    const DvKernelCache cache(sphere);
    const auto& be = simd::active_backend();

    Field f;
    f.kind = field_kind::hybrid;
    f.cv_grid = cv;
    f.sphere_grid = sphere;
    f.state_label = label;
    f.trace_target = trace(rho).real();
    f.values.resize(cv.size() * sphere.size());
    const std::size_t ns = sphere.size();
    double max_imag = 0.0;
#ifdef _OPENMP
#pragma omp parallel reduction(max : max_imag)
#endif
    {
        CvKernelEvaluator ev(rho.dim_field);
        cd c[3];
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
        for (int i = 0; i < cv.n_re; ++i)
            for (int j = 0; j < cv.n_im; ++j) {
                ev.contract(cv.node(i, j), blocks, 3, c);
                max_imag = std::max(max_imag,
                                    std::max(std::abs(c[0].imag()), std::abs(c[1].imag())));
                double* slice =
                    f.values.data() + (static_cast<std::size_t>(i) * cv.n_im + j) * ns;
                // W = C_ee P_ee + C_gg P_gg + 2 Re[C_eg P_ge]
                be.qubit_trace(c[0].real(), c[1].real(), c[2].real(), c[2].imag(),
                               cache.pee.data(), cache.pgg.data(), cache.ger.data(),
                               cache.gei.data(), slice, ns);
            }
    }
    check_imag_residue(max_imag, "evaluate_hybrid");
    return f;
}

double integrate(const Field& f) {
    const auto& be = simd::active_backend();
    switch (f.kind) {
    case field_kind::cv:
        return be.dot_real(f.cv_grid->weights.data(), f.values.data(), f.values.size());
    case field_kind::dv:
        return be.dot_real(f.sphere_grid->weights.data(), f.values.data(),
                           f.values.size());
    case field_kind::hybrid: {
        const std::size_t ns = f.sphere_grid->size();
        double total = 0.0;
        for (std::size_t a = 0; a < f.cv_grid->size(); ++a)
            total += f.cv_grid->weights[a] *
                     be.dot_real(f.sphere_grid->weights.data(), f.values.data() + a * ns, ns);
        return total;
    }
    }
    return 0.0;
}

Field marginal(const Field& hybrid, field_kind keep) {
    if (hybrid.kind != field_kind::hybrid)
        throw invalid_input("marginal: input must be a hybrid field");
    const auto& be = simd::active_backend();
    const std::size_t ns = hybrid.sphere_grid->size();
    Field out;
    out.state_label = hybrid.state_label;
    out.trace_target = hybrid.trace_target;
    if (keep == field_kind::cv) {
        out.kind = field_kind::cv;
        out.cv_grid = hybrid.cv_grid;
        out.values.resize(hybrid.cv_grid->size());
        for (std::size_t a = 0; a < out.values.size(); ++a)
            out.values[a] = be.dot_real(hybrid.sphere_grid->weights.data(),
                                        hybrid.values.data() + a * ns, ns);
    } else if (keep == field_kind::dv) {
        out.kind = field_kind::dv;
        out.sphere_grid = hybrid.sphere_grid;
        out.values.assign(ns, 0.0);
        for (std::size_t a = 0; a < hybrid.cv_grid->size(); ++a)
            be.axpy(hybrid.cv_grid->weights[a], hybrid.values.data() + a * ns,
                    out.values.data(), ns);
    } else {
        throw invalid_input("marginal: keep must be cv or dv");
    }
    return out;
}

double negativity_volume(const Field& f) {
    const auto& be = simd::active_backend();
    switch (f.kind) {
    case field_kind::cv:
        return be.neg_part_dot(f.cv_grid->weights.data(), f.values.data(),
                               f.values.size());
    case field_kind::dv:
        return be.neg_part_dot(f.sphere_grid->weights.data(), f.values.data(),
                               f.values.size());
    case field_kind::hybrid: {
        const std::size_t ns = f.sphere_grid->size();
        double total = 0.0;
        for (std::size_t a = 0; a < f.cv_grid->size(); ++a)
            total += f.cv_grid->weights[a] *
                     be.neg_part_dot(f.sphere_grid->weights.data(),
                                     f.values.data() + a * ns, ns);
        return total;
    }
    }
    return 0.0;
}

Field max_abs_per_alpha(const Field& hybrid) {
    if (hybrid.kind != field_kind::hybrid)
        throw invalid_input("max_abs_per_alpha: input must be a hybrid field");
    const auto& be = simd::active_backend();
    const std::size_t ns = hybrid.sphere_grid->size();
    Field out;
    out.kind = field_kind::cv;
    out.cv_grid = hybrid.cv_grid;
    out.state_label = hybrid.state_label;
    out.trace_target = hybrid.trace_target;
    out.values.resize(hybrid.cv_grid->size());
    for (std::size_t a = 0; a < out.values.size(); ++a)
        out.values[a] = be.max_abs(hybrid.values.data() + a * ns, ns);
    return out;
}

double field_max_abs(const Field& f) {
    return simd::active_backend().max_abs(f.values.data(), f.values.size());
}

double field_correlation(const Field& a, const Field& b) {
    if (a.kind != b.kind || a.values.size() != b.values.size())
        throw invalid_input("field_correlation: mismatched fields");
    const std::vector<double>* w = nullptr;
    switch (a.kind) {
    case field_kind::cv: w = &a.cv_grid->weights; break;
    case field_kind::dv: w = &a.sphere_grid->weights; break;
    case field_kind::hybrid:
        throw invalid_input("field_correlation: 2-D fields only");
    }
    double ab = 0.0, aa = 0.0, bb = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        const double wi = (*w)[i];
        ab += wi * a.values[i] * b.values[i];
        aa += wi * a.values[i] * a.values[i];
        bb += wi * b.values[i] * b.values[i];
    }
    if (aa == 0.0 || bb == 0.0) throw numeric_failure("field_correlation: zero field");
    return ab / std::sqrt(aa * bb);
}

} // namespace hywig
