#include "hywig/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "hywig/states.hpp"

namespace hywig {

namespace {

const double PI = std::acos(-1.0);

void require_jc_state(const JcModel& m, const PureState& psi) {
    if (psi.dim_atom != 2) throw invalid_input("evolve: state must carry the atom factor");
    if (psi.dim_field != m.dim_field) throw invalid_input("evolve: dim_field mismatch");
    if (m.dim_field < 2) throw invalid_input("evolve: dim_field must be >= 2");
    if (!(m.omega > 0.0)) throw invalid_input("evolve: omega must be positive");
}

} // namespace

ComplexOperator jc_hamiltonian(const JcModel& m) {
    if (m.dim_field < 2) throw invalid_input("jc_hamiltonian: dim_field must be >= 2");
    if (!(m.omega > 0.0)) throw invalid_input("jc_hamiltonian: omega must be positive");
    ComplexOperator sminus(1, 2), splus(1, 2);
    sminus.at(1, 0) = 1.0; // |g><e|
    splus.at(0, 1) = 1.0;  // |e><g|
    const ComplexOperator a = annihilation(m.dim_field);
    return cd(m.omega, 0.0) * (tensor(dagger(a), sminus) + tensor(a, splus));
}

PureState evolve(const JcModel& m, const PureState& initial, double t) {
    require_jc_state(m, initial);
    if (!std::isfinite(t)) throw invalid_input("evolve: time must be finite");
    PureState out = initial;
    for (int n = 0; n + 1 < m.dim_field; ++n) {
        const double g = m.omega * std::sqrt(n + 1.0);
        const double c = std::cos(g * t), s = std::sin(g * t);
        const int ie = n * 2, ig = (n + 1) * 2 + 1;
        const cd ce = initial.amplitudes[ie], cg = initial.amplitudes[ig];
        out.amplitudes[ie] = c * ce - cd(0, s) * cg;
        out.amplitudes[ig] = -cd(0, s) * ce + c * cg;
    }
    return out;
}

PureState analytic_vacuum_evolution(double omega, double t, int dim_field) {
    if (dim_field < 2) throw invalid_input("analytic_vacuum_evolution: dim_field must be >= 2");
    PureState psi(dim_field, 2);
    psi.amplitudes[0] = std::cos(omega * t);
    psi.amplitudes[1 * 2 + 1] = cd(0, -std::sin(omega * t));
    return psi;
}

double inversion(const PureState& psi) {
    if (psi.dim_atom != 2) throw invalid_input("inversion: state must carry the atom factor");
    double z = 0.0;
    for (int n = 0; n < psi.dim_field; ++n) {
        z += std::norm(psi.amplitudes[n * 2]);
        z -= std::norm(psi.amplitudes[n * 2 + 1]);
    }
    return z;
}

std::vector<double> inversion_series(const JcModel& m, const PureState& initial,
                                     const std::vector<double>& times) {
    std::vector<double> z(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) z[i] = inversion(evolve(m, initial, times[i]));
    return z;
}

EvolutionResult evolve_series(const JcModel& m, const PureState& initial,
                              const std::vector<double>& times) {
    EvolutionResult r;
    r.times = times;
    r.states.reserve(times.size());
    r.inversion.reserve(times.size());
    for (double t : times) {
        r.states.push_back(evolve(m, initial, t));
        r.inversion.push_back(inversion(r.states.back()));
    }
    return r;
}

double estimate_revival_time(const JcModel& m, double beta) {
    if (!(beta > 0.0)) throw invalid_input("estimate_revival_time: beta must be positive");
    const double w = m.omega;
    const double lo = PI * beta / w, hi = 4.0 * PI * beta / w;
    const double pad = 2.0 * PI / w; // half the smoothing window
    const double dt = 0.01 / w;
    const double t0 = std::max(0.0, lo - pad);
    const std::size_t count = static_cast<std::size_t>((hi + pad - t0) / dt) + 1;
    std::vector<double> ts(count);
    for (std::size_t i = 0; i < count; ++i) ts[i] = t0 + i * dt;

    const PureState initial = product(coherent(beta, m.dim_field), qubit(1.0, 0.0));
    const std::vector<double> inv = inversion_series(m, initial, ts);

    // centered moving RMS via prefix sums
    std::vector<double> cs(count + 1, 0.0);
    for (std::size_t i = 0; i < count; ++i) cs[i + 1] = cs[i] + inv[i] * inv[i];
    const std::size_t win = static_cast<std::size_t>(std::lround((4.0 * PI / w) / dt));
    const auto rms_at = [&](std::size_t i) {
        const std::size_t a = i > win / 2 ? i - win / 2 : 0;
        const std::size_t b = std::min(count, i + win / 2);
        return std::sqrt((cs[b] - cs[a]) / (b - a));
    };

    std::size_t i_lo = count, i_hi = 0;
    for (std::size_t i = 0; i < count; ++i)
        if (ts[i] >= lo && ts[i] <= hi) {
            i_lo = std::min(i_lo, i);
            i_hi = std::max(i_hi, i);
        }
    if (i_lo >= i_hi) throw estimation_failure("estimate_revival_time: empty scan window");

    std::size_t best = i_lo;
    double rmax = -1.0, rmin = 1e300;
    for (std::size_t i = i_lo; i <= i_hi; ++i) {
        const double r = rms_at(i);
        if (r > rmax) {
            rmax = r;
            best = i;
        }
        rmin = std::min(rmin, r);
    }
    if (rmax < 1.3 * rmin)
        throw estimation_failure("estimate_revival_time: envelope shows no revival (max/min " +
                                 std::to_string(rmax / rmin) + ")");
    if (best == i_lo || best == i_hi)
        throw estimation_failure("estimate_revival_time: envelope maximal at window edge");

    // snap to the nearest crest of the raw inversion
    std::size_t crest = count;
    double dist = 1e300;
    for (std::size_t i = 1; i + 1 < count; ++i) {
        if (ts[i] < lo || ts[i] > hi) continue;
        if (inv[i] >= inv[i - 1] && inv[i] >= inv[i + 1]) {
            const double d = std::abs(ts[i] - ts[best]);
            if (d < dist) {
                dist = d;
                crest = i;
            }
        }
    }
    if (crest == count)
        throw estimation_failure("estimate_revival_time: no inversion crest in window");
    return ts[crest];
}

std::vector<double> revival_snapshot_times(double t_r) {
    return {t_r / 9.0, t_r / 2.0, t_r};
}

} // namespace hywig
