#pragma once

#include <vector>

#include "hywig/operators.hpp"

// Jaynes-Cummings dynamics, H = omega (a^dag sigma_- + a sigma_+). H only
// couples (n, e) <-> (n+1, g), so evolution is exact 2x2 rotations inside
// those blocks: block frequency g_n = omega sqrt(n+1). |0,g> is dark, and
// the top level (dim_field-1, e) is frozen by the truncation.

namespace hywig {

struct JcModel {
    double omega = 1.0;
    int dim_field = 60;
};

ComplexOperator jc_hamiltonian(const JcModel& m);

PureState evolve(const JcModel& m, const PureState& initial, double t);

// cos(omega t)|0,e> - i sin(omega t)|1,g>
PureState analytic_vacuum_evolution(double omega, double t, int dim_field);

double inversion(const PureState& psi); // <sigma_z>

std::vector<double> inversion_series(const JcModel& m, const PureState& initial,
                                     const std::vector<double>& times);

struct EvolutionResult {
    std::vector<double> times;
    std::vector<PureState> states;
    std::vector<double> inversion;
};

EvolutionResult evolve_series(const JcModel& m, const PureState& initial,
                              const std::vector<double>& times);

// Scan of the smoothed |<sigma_z>| envelope (moving RMS, window 4 pi/omega)
// over [pi beta/omega, 4 pi beta/omega], then snapped to the nearest crest of
// the raw inversion so the reported time sits on a Rabi maximum rather than
// on an arbitrary phase of the carrier. The textbook estimate 2 pi beta /
// omega seeds the window; the scan is the contract. Throws
// estimation_failure when no revival stands out (envelope flat or maximal at
// the window edge).
double estimate_revival_time(const JcModel& m, double beta);

// t_r/9, t_r/2, t_r
std::vector<double> revival_snapshot_times(double t_r);

} // namespace hywig
