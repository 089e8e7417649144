#include "hywig/verify.hpp"

#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hywig/dynamics.hpp"
#include "hywig/kernels.hpp"
#include "hywig/render.hpp"
#include "hywig/states.hpp"
#include "hywig/wigner.hpp"

namespace hywig {

namespace {

const double PI = std::acos(-1.0);
constexpr double kSqrt3 = 1.7320508075688772;

double max_entry_gap(const ComplexOperator& a, const ComplexOperator& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.entries.size(); ++i)
        m = std::max(m, std::abs(a.entries[i] - b.entries[i]));
    return m;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

struct Runner {
    std::vector<CheckResult> results;

    void check(const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
        CheckResult r;
        r.name = name;
        try {
            auto [ok, detail] = body();
            r.passed = ok;
            r.detail = detail;
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("exception: ") + e.what();
        }
        results.push_back(std::move(r));
    }

    // convenience for "value must not exceed tol" checks
    void check_le(const std::string& name, const std::function<double()>& value, double tol) {
        check(name, [&]() -> std::pair<bool, std::string> {
            const double v = value();
            return {v <= tol, fmt(v) + " (tol " + fmt(tol) + ")"};
        });
    }
};

} // namespace

VerifyHooks::VerifyHooks()
    : dv_parity([] { return hywig::dv_parity(); }),
      dv_kernel([](double t, double p, double cp) { return hywig::dv_kernel(t, p, cp); }) {}

std::vector<CheckResult> run_verification(const VerifyHooks& hooks) {
    Runner r;

    // qubit parity and kernel
    r.check_le("dv_parity_diagonal", [&] {
        const ComplexOperator p = hooks.dv_parity();
        return std::max({std::abs(p.at(0, 0) - (1.0 + kSqrt3) / 2.0),
                         std::abs(p.at(1, 1) - (1.0 - kSqrt3) / 2.0), std::abs(p.at(0, 1)),
                         std::abs(p.at(1, 0))});
    }, 1e-14);
    r.check_le("dv_parity_unit_trace",
               [&] { return std::abs(trace(hooks.dv_parity()) - cd(1.0)); }, 1e-14);
    r.check_le("pole_kernel_matches_parity", [&] {
        double m = 0.0;
        for (double phi : {0.0, 1.1, 4.4})
            m = std::max(m, max_entry_gap(hooks.dv_kernel(0.0, phi, 0.0), hooks.dv_parity()));
        return m;
    }, 1e-12);
    r.check_le("excited_state_peak", [&] {
        const ComplexOperator rho = density(qubit(1.0, 0.0));
        return std::abs(trace_product(rho, hooks.dv_parity()) - cd((1.0 + kSqrt3) / 2.0));
    }, 1e-12);
    r.check_le("dv_kernel_phi_independent", [&] {
        double m = 0.0;
        for (double th : {0.4, 1.3, 2.8})
            for (double ph : {0.0, 2.2})
                m = std::max(m, max_entry_gap(hooks.dv_kernel(th, ph, 0.0),
                                              hooks.dv_kernel(th, ph, 1.3)));
        return m;
    }, 1e-12);
    r.check_le("dv_kernel_hermitian", [&] {
        double m = 0.0;
        for (double th : {0.3, 1.7})
            for (double ph : {0.9, 5.1}) m = std::max(m, hermiticity_defect(hooks.dv_kernel(th, ph, 0.0)));
        return m;
    }, 1e-12);

    // field parity / displacement / CV kernel
    r.check_le("cv_parity_involution", [&] {
        const ComplexOperator p = cv_parity(12);
        return max_entry_gap(p * p, identity(12));
    }, 1e-15);
    r.check_le("parity_flips_coherent", [&] {
        const PureState v = cv_parity(24) * coherent(1.3, 24);
        const PureState w = coherent(-1.3, 24);
        double m = 0.0;
        for (int i = 0; i < 24; ++i) m = std::max(m, std::abs(v.amplitudes[i] - w.amplitudes[i]));
        return m;
    }, 1e-10);
    r.check_le("displacement_identity_at_zero",
               [&] { return max_entry_gap(displacement(0.0, 16), identity(16)); }, 1e-15);
    r.check_le("displacement_vacuum_gives_coherent", [&] {
        const PureState v = displacement(cd(1.1, -0.4), 30) * fock(0, 30);
        const PureState w = coherent(cd(1.1, -0.4), 30);
        double m = 0.0;
        for (int i = 0; i < 30; ++i) m = std::max(m, std::abs(v.amplitudes[i] - w.amplitudes[i]));
        return m;
    }, 1e-8);
    r.check_le("displacement_inverse_low_block", [&] {
        const ComplexOperator p = displacement(1.2, 60) * displacement(-1.2, 60);
        const ComplexOperator id = identity(60);
        double m = 0.0;
        for (int i = 0; i < 15; ++i)
            for (int j = 0; j < 15; ++j) m = std::max(m, std::abs(p.at(i, j) - id.at(i, j)));
        return m;
    }, 1e-8);
    r.check_le("cv_kernel_hermitian",
               [&] { return hermiticity_defect(cv_kernel(cd(0.7, -1.3), 24)); }, 1e-12);
    r.check_le("cv_kernel_vacuum_center", [&] {
        return std::abs(trace_product(density(fock(0, 16)), cv_kernel(0.0, 16)) - cd(2.0));
    }, 1e-12);
    r.check_le("cv_kernel_fock1_center", [&] {
        return std::abs(trace_product(density(fock(1, 16)), cv_kernel(0.0, 16)) - cd(-2.0));
    }, 1e-12);
    r.check_le("coherent_mean_photon", [&] {
        const PureState v = coherent(1.5, 24);
        double n = 0.0;
        for (int i = 0; i < 24; ++i) n += i * std::norm(v.amplitudes[i]);
        return std::abs(n - 2.25);
    }, 1e-6);

    // quadrature
    r.check_le("sphere_weights_total", [&] {
        double m = 0.0;
        for (auto kind : {sphere_kind::gauss_legendre, sphere_kind::uniform_midpoint,
                          sphere_kind::uniform_inclusive}) {
            const SphereGrid g(kind, 32, 64);
            double s = 0.0;
            for (double w : g.weights) s += w;
            m = std::max(m, std::abs(s - 2.0));
        }
        return m;
    }, 1e-10);
    r.check_le("cv_weights_total", [&] {
        const CvGrid g = CvGrid::square(5.0, 81);
        double s = 0.0;
        for (double w : g.weights) s += w;
        return std::abs(s - 100.0 / PI);
    }, 1e-10);
    r.check_le("dv_field_unit_integral", [&] {
        const SphereGrid g(sphere_kind::gauss_legendre, 32, 64);
        const ComplexOperator rho = density(qubit(1.0, 0.0));
        double s = 0.0;
        for (int i = 0; i < g.n_theta; ++i)
            for (int j = 0; j < g.n_phi; ++j)
                s += g.weights[static_cast<std::size_t>(i) * g.n_phi + j] *
                     trace_product(rho, hooks.dv_kernel(g.theta[i], g.phi[j], 0.0)).real();
        return std::abs(s - 1.0);
    }, 1e-10);
    r.check_le("cv_field_unit_integral", [&] {
        const Field f = evaluate_cv(density(fock(0, 12)), CvGrid::square(5.0, 101));
        return std::abs(integrate(f) - 1.0);
    }, 1e-6);
    r.check_le("pauli_fields_zero_integral", [&] {
        const SphereGrid g(sphere_kind::gauss_legendre, 16, 32);
        double m = 0.0;
        for (auto ax : {axis::x, axis::y, axis::z})
            m = std::max(m, std::abs(integrate(evaluate_dv(pauli(ax), g))));
        return m;
    }, 1e-10);

    // hybrid structure
    r.check_le("hybrid_product_factorizes", [&] {
        const CvGrid cv = CvGrid::square(3.0, 11);
        const SphereGrid sph(sphere_kind::gauss_legendre, 8, 16);
        const ComplexOperator rho = density(product(fock(0, 8), qubit(1.0, 0.0)));
        const Field h = evaluate_hybrid(rho, cv, sph);
        const Field wf = evaluate_cv(density(fock(0, 8)), cv);
        const Field wa = evaluate_dv(density(qubit(1.0, 0.0)), sph);
        double m = 0.0;
        for (int i = 0; i < cv.n_re; ++i)
            for (int j = 0; j < cv.n_im; ++j)
                for (int k = 0; k < sph.n_theta; ++k)
                    for (int l = 0; l < sph.n_phi; ++l)
                        m = std::max(m, std::abs(h.at_hybrid(i, j, k, l) -
                                                 wf.at_cv(i, j) * wa.at_dv(k, l)));
        return m;
    }, 1e-9);
    r.check_le("marginal_matches_partial_trace", [&] {
        const CvGrid cv = CvGrid::square(4.0, 41);
        const SphereGrid sph(sphere_kind::gauss_legendre, 16, 32);
        const ComplexOperator rho = density(bell_fock(1, 6));
        const Field h = evaluate_hybrid(rho, cv, sph);
        const Field mdv = marginal(h, field_kind::dv);
        const Field ref = evaluate_dv(partial_trace(rho, subsystem::atom), sph);
        double m = 0.0;
        for (std::size_t i = 0; i < mdv.values.size(); ++i)
            m = std::max(m, std::abs(mdv.values[i] - ref.values[i]));
        return m;
    }, 1e-6);

    // dynamics
    r.check_le("jc_vacuum_matches_closed_form", [&] {
        const JcModel m{1.0, 8};
        const PureState init = product(fock(0, 8), qubit(1.0, 0.0));
        double gap = 0.0;
        for (double t : {0.3, 1.1, 2.5, 5.9}) {
            const PureState a = evolve(m, init, t);
            const PureState b = analytic_vacuum_evolution(1.0, t, 8);
            for (int i = 0; i < a.dim(); ++i)
                gap = std::max(gap, std::abs(a.amplitudes[i] - b.amplitudes[i]));
        }
        return gap;
    }, 1e-12);
    r.check("jc_bell_fock_quarter_period", [&]() -> std::pair<bool, std::string> {
        const JcModel m{1.0, 8};
        const PureState init = product(fock(0, 8), qubit(1.0, 0.0));
        const double f1 = fidelity(evolve(m, init, PI / 4.0), bell_fock(-1, 8));
        const double f2 = fidelity(evolve(m, init, 3.0 * PI / 4.0), bell_fock(1, 8));
        const bool ok = f1 >= 1.0 - 1e-10 && f2 >= 1.0 - 1e-10;
        return {ok, "fidelities " + fmt(f1) + ", " + fmt(f2)};
    });
    r.check_le("jc_norm_preserved", [&] {
        const JcModel m{1.0, 20};
        const PureState init = product(coherent(1.0, 20), qubit(0.6, cd(0.0, 0.8)));
        double gap = 0.0;
        for (double t : {0.5, 3.0, 12.0, 40.0})
            gap = std::max(gap, std::abs(norm(evolve(m, init, t)) - 1.0));
        return gap;
    }, 1e-8);

    // rendering geometry and determinism
    r.check_le("lambert_pole_center", [&] {
        const auto p = lambert_project(0.0, 1.0);
        return std::hypot(p[0], p[1]);
    }, 1e-15);
    r.check_le("lambert_equator_radius", [&] {
        const auto p = lambert_project(PI / 2.0, 0.7);
        return std::abs(std::hypot(p[0], p[1]) - 1.0 / std::sqrt(2.0));
    }, 1e-12);
    r.check("png_deterministic", [&]() -> std::pair<bool, std::string> {
        const SphereGrid g(sphere_kind::gauss_legendre, 8, 16);
        const Field f = evaluate_dv(density(qubit(1.0, 1.0)), g);
        RenderSpec spec;
        apply_auto_limits(spec, f);
        const auto a = encode_png(render_dv_disc(f, spec, 1.0, 64));
        const auto b = encode_png(render_dv_disc(f, spec, 1.0, 64));
        return {a == b, a == b ? "byte-identical" : "outputs differ"};
    });

    return r.results;
}

std::string verification_report_json(const std::vector<CheckResult>& results) {
    nlohmann::json j;
    j["checks"] = nlohmann::json::array();
    int passed = 0;
    for (const auto& c : results) {
        j["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        if (c.passed) ++passed;
    }
    j["passed"] = passed;
    j["failed"] = static_cast<int>(results.size()) - passed;
    return j.dump(2);
}

} // namespace hywig
