#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hywig/operators.hpp"

namespace hywig {

PureState fock(int n, int dim_field);

// Analytic amplitudes e^{-|beta|^2/2} beta^n / sqrt(n!), renormalized after
// truncation. Throws truncation_failure (naming the required dimension) when
// the truncated norm falls below 1 - 1e-10.
PureState coherent(cd beta, int dim_field);

PureState qubit(cd a, cd b); // a|e> + b|g>, renormalized

// (|beta> + phase |-beta>) / N with the overlap <beta|-beta> folded into N.
PureState cat(cd beta, int dim_field, cd phase = cd(1, 0));

// (|0>|e> +- i|1>|g>) / sqrt(2)
PureState bell_fock(int sign, int dim_field);

// (|beta>|e> + |-beta>|g>) / N
PureState bell_cat(cd beta, int dim_field);

// (1/2)(|b><b| x |e><e| + eta |b><-b| x |e><g| + eta |-b><b| x |g><e|
//       + |-b><-b| x |g><g|), trace renormalized. eta = 1 is the pure
// Bell-cat, eta = 0 the classical mixture.
ComplexOperator lossy_bell_cat(cd beta, double eta, int dim_field);

ComplexOperator classical_mix(cd beta, int dim_field);

PureState product(const PureState& field_part, const PureState& atom_part);

ComplexOperator mixture(const std::vector<double>& weights,
                        const std::vector<ComplexOperator>& ops);

ComplexOperator density(const PureState& psi);

// Canonical JSON-serializable description of any state the CLI can build.
struct StateSpec {
    std::string kind = "fock"; // fock coherent qubit cat bell_fock bell_cat
                               // lossy_bell_cat classical_mix product mixture
                               // custom_amplitudes
    int n = 0;
    cd beta{0.0, 0.0};
    cd a{1.0, 0.0}, b{0.0, 0.0};
    double eta = 1.0;
    cd phase{1.0, 0.0};
    int sign = 1;
    int dim_field = 0; // 0 = kind-dependent default
    int dim_atom = 1;  // custom_amplitudes only
    std::vector<double> weights;
    std::vector<StateSpec> components; // product: {field, atom}; mixture members
    std::vector<cd> amplitudes;        // custom_amplitudes

    bool operator==(const StateSpec& o) const;
};

// Smallest truncation keeping tail population below ~1e-12 for the kind.
int default_dim_field(const StateSpec& spec);

struct BuiltState {
    std::optional<PureState> pure; // engaged unless the spec is mixed
    ComplexOperator rho;
    std::string label;
};

BuiltState build_state(const StateSpec& spec);

std::string to_json_string(const StateSpec& spec);
StateSpec state_spec_from_json(const std::string& text);

} // namespace hywig
