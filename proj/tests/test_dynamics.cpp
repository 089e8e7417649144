#include <doctest.h>

#include <cmath>
#include <random>

#include "hywig/dynamics.hpp"
#include "hywig/states.hpp"

using namespace hywig;

namespace {
const double PI = std::acos(-1.0);
} // namespace

TEST_CASE("hamiltonian couples (n,e) to (n+1,g) with strength omega sqrt(n+1)") {
    const JcModel m{1.3, 5};
    const ComplexOperator h = jc_hamiltonian(m);
    CHECK(hermiticity_defect(h) < 1e-14);
    for (int n = 0; n + 1 < 5; ++n) {
        const int ie = n * 2 + 0, ig = (n + 1) * 2 + 1;
        CHECK(std::abs(h.at(ie, ig) - cd(1.3 * std::sqrt(n + 1.0))) < 1e-13);
    }
    // nothing couples |0,g>
    for (int r = 0; r < 10; ++r) CHECK(std::abs(h.at(r, 1)) < 1e-15);
}

TEST_CASE("vacuum evolution matches the two-level closed form at random times") {
    const JcModel m{1.0, 10};
    const PureState init = product(fock(0, 10), qubit(1.0, 0.0));
    std::mt19937 rng(321);
    std::uniform_real_distribution<double> u(0.0, 20.0);
    for (int k = 0; k < 50; ++k) {
        const double t = u(rng);
        const PureState a = evolve(m, init, t);
        const PureState b = analytic_vacuum_evolution(1.0, t, 10);
        CHECK(fidelity(a, b) > 1.0 - 1e-12);
        CHECK(std::abs(norm(a) - 1.0) < 1e-12);
    }
}

TEST_CASE("entangled pair states appear at quarter and three-quarter period") {
    const JcModel m{1.0, 8};
    const PureState init = product(fock(0, 8), qubit(1.0, 0.0));
    CHECK(fidelity(evolve(m, init, PI / 4.0), bell_fock(-1, 8)) > 1.0 - 1e-12);
    CHECK(fidelity(evolve(m, init, 3.0 * PI / 4.0), bell_fock(1, 8)) > 1.0 - 1e-12);
    // full period returns to the start up to a global phase
    CHECK(fidelity(evolve(m, init, PI), init) > 1.0 - 1e-12);
}

TEST_CASE("dark and frozen levels stay put") {
    const JcModel m{1.0, 6};
    const PureState dark = product(fock(0, 6), qubit(0.0, 1.0));
    CHECK(fidelity(evolve(m, dark, 7.7), dark) > 1.0 - 1e-14);

    // the top excited level has no partner inside the truncation
    PureState top(6, 2);
    top.amplitudes[5 * 2 + 0] = 1.0;
    CHECK(fidelity(evolve(m, top, 2.5), top) > 1.0 - 1e-14);
}

TEST_CASE("energy is conserved along a coherent-field run") {
    const JcModel m{1.0, 30};
    const ComplexOperator h = jc_hamiltonian(m);
    const PureState init = product(coherent(2.0, 30), qubit(1.0, 0.0));
    const auto energy = [&](const PureState& p) {
        const PureState hp = h * p;
        return inner(p, hp).real();
    };
    const double e0 = energy(init);
    for (double t : {1.0, 5.0, 17.0})
        CHECK(energy(evolve(m, init, t)) == doctest::Approx(e0).epsilon(1e-10));
}

TEST_CASE("inversion series tracks sigma_z expectations") {
    const JcModel m{1.0, 8};
    const PureState init = product(fock(0, 8), qubit(1.0, 0.0));
    const std::vector<double> ts{0.0, PI / 4.0, PI / 2.0};
    const auto inv = inversion_series(m, init, ts);
    CHECK(inv[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(inv[1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(inv[2] == doctest::Approx(-1.0).epsilon(1e-12));

    const EvolutionResult r = evolve_series(m, init, ts);
    REQUIRE(r.states.size() == 3);
    CHECK(r.inversion[2] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(fidelity(r.states[1], bell_fock(-1, 8)) > 1.0 - 1e-12);
}

TEST_CASE("revival scan lands on the frozen crest") {
    const JcModel m{1.0, 60};
    const double t_r = estimate_revival_time(m, 3.0);
    CHECK(std::abs(t_r - 19.96) < 0.1);

    const auto ts = revival_snapshot_times(t_r);
    REQUIRE(ts.size() == 3);
    CHECK(ts[0] == doctest::Approx(t_r / 9.0));
    CHECK(ts[1] == doctest::Approx(t_r / 2.0));
    CHECK(ts[2] == doctest::Approx(t_r));

    // the revived crest carries positive inversion
    const PureState init = product(coherent(3.0, 60), qubit(1.0, 0.0));
    CHECK(inversion(evolve(m, init, t_r)) > 0.3);
}

TEST_CASE("no revival stands out for a near-vacuum field") {
    const JcModel m{1.0, 20};
    CHECK_THROWS_AS(estimate_revival_time(m, 0.4), estimation_failure);
}

TEST_CASE("reduced-qubit purity climbs from the collapse toward the revival") {
    const JcModel m{1.0, 60};
    const double t_r = 19.96;
    const PureState init = product(coherent(3.0, 60), qubit(1.0, 0.0));
    const auto reduced_purity = [&](double t) {
        return purity(partial_trace(density(evolve(m, init, t)), subsystem::atom));
    };
    const double early = reduced_purity(t_r / 9.0);
    const double mid = reduced_purity(t_r / 2.0);
    CHECK(std::abs(early - 0.528) < 0.02);
    CHECK(std::abs(mid - 0.954) < 0.02);
    CHECK(mid > early);
}
