#include "hywig/states.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace hywig {

namespace {

using nlohmann::json;

std::string fmt_complex(cd v) {
    std::ostringstream os;
    if (v.imag() == 0.0) {
        os << v.real();
    } else {
        os << v.real() << (v.imag() < 0 ? "-" : "+") << std::abs(v.imag()) << "i";
    }
    return os.str();
}

// Smallest m with sum_{n<m} |c_n|^2 >= 1 - 1e-10 for coherent amplitudes.
int coherent_required_dim(double abs_beta) {
    const double x = abs_beta * abs_beta;
    double term = std::exp(-x); // Poisson pmf at n = 0
    double cum = term;
    int n = 0;
    while (cum < 1.0 - 1e-10) {
        ++n;
        term *= x / n;
        cum += term;
        if (n > 100000) throw numeric_failure("coherent: tail search did not converge");
    }
    return n + 1;
}

} // namespace

PureState fock(int n, int dim_field) {
    if (n < 0 || n >= dim_field)
        throw invalid_input("fock: level " + std::to_string(n) + " out of range for dim_field " +
                            std::to_string(dim_field));
    PureState psi(dim_field, 1);
    psi.amplitudes[n] = 1.0;
    return psi;
}

PureState coherent(cd beta, int dim_field) {
    if (dim_field < 1) throw invalid_input("coherent: dim_field must be >= 1");
    const double x = std::norm(beta);
    if (x > 900.0) throw invalid_input("coherent: |beta| too large for double-precision amplitudes");
    PureState psi(dim_field, 1);
    cd c = std::exp(-x / 2.0);
    double norm2 = 0.0;
    for (int n = 0; n < dim_field; ++n) {
        psi.amplitudes[n] = c;
        norm2 += std::norm(c);
        c *= beta / std::sqrt(double(n + 1));
    }
    if (1.0 - norm2 > 1e-10) {
        const int req = coherent_required_dim(std::abs(beta));
        throw truncation_failure("coherent(beta=" + fmt_complex(beta) + "): dim_field " +
                                     std::to_string(dim_field) + " leaves tail population " +
                                     std::to_string(1.0 - norm2) + "; requires dim_field >= " +
                                     std::to_string(req),
                                 req);
    }
    return normalized(psi);
}

PureState qubit(cd a, cd b) {
    PureState psi(1, 2);
    psi.amplitudes[0] = a;
    psi.amplitudes[1] = b;
    return normalized(psi);
}

PureState cat(cd beta, int dim_field, cd phase) {
    if (std::abs(std::abs(phase) - 1.0) > 1e-10)
        throw invalid_input("cat: phase must have unit modulus");
    const PureState plus = coherent(beta, dim_field);
    const PureState minus = coherent(-beta, dim_field);
    PureState psi(dim_field, 1);
    for (int i = 0; i < dim_field; ++i)
        psi.amplitudes[i] = plus.amplitudes[i] + phase * minus.amplitudes[i];
    return normalized(psi);
}

PureState bell_fock(int sign, int dim_field) {
    if (sign != 1 && sign != -1) throw invalid_input("bell_fock: sign must be +1 or -1");
    if (dim_field < 2) throw invalid_input("bell_fock: dim_field must be >= 2");
    PureState psi(dim_field, 2);
    const double r = 1.0 / std::sqrt(2.0);
    psi.amplitudes[0] = r;                      // |0>|e>
    psi.amplitudes[1 * 2 + 1] = cd(0, sign * r); // +-i |1>|g>
    return psi;
}

PureState bell_cat(cd beta, int dim_field) {
    const PureState plus = coherent(beta, dim_field);
    const PureState minus = coherent(-beta, dim_field);
    PureState psi(dim_field, 2);
    for (int n = 0; n < dim_field; ++n) {
        psi.amplitudes[n * 2 + 0] = plus.amplitudes[n];
        psi.amplitudes[n * 2 + 1] = minus.amplitudes[n];
    }
    return normalized(psi);
}

ComplexOperator lossy_bell_cat(cd beta, double eta, int dim_field) {
    if (eta < 0.0 || eta > 1.0) throw invalid_input("lossy_bell_cat: eta must lie in [0,1]");
    const PureState plus = coherent(beta, dim_field);
    const PureState minus = coherent(-beta, dim_field);
    ComplexOperator rho(dim_field, 2);
    for (int m = 0; m < dim_field; ++m)
        for (int n = 0; n < dim_field; ++n) {
            const cd pp = plus.amplitudes[m] * std::conj(plus.amplitudes[n]);
            const cd mm = minus.amplitudes[m] * std::conj(minus.amplitudes[n]);
            const cd pm = plus.amplitudes[m] * std::conj(minus.amplitudes[n]);
            const cd mp = minus.amplitudes[m] * std::conj(plus.amplitudes[n]);
            rho.at(m * 2 + 0, n * 2 + 0) = 0.5 * pp;
            rho.at(m * 2 + 0, n * 2 + 1) = 0.5 * eta * pm;
            rho.at(m * 2 + 1, n * 2 + 0) = 0.5 * eta * mp;
            rho.at(m * 2 + 1, n * 2 + 1) = 0.5 * mm;
        }
    const double tr = std::real(trace(rho));
    return cd(1.0 / tr, 0.0) * rho;
}

ComplexOperator classical_mix(cd beta, int dim_field) {
    return lossy_bell_cat(beta, 0.0, dim_field);
}

PureState product(const PureState& field_part, const PureState& atom_part) {
    if (field_part.dim_atom != 1 && atom_part.dim_field != 1)
        throw invalid_input("product: factors incompatible with field-major basis order");
    const int da = field_part.dim(), db = atom_part.dim();
    PureState psi(field_part.dim_field * atom_part.dim_field,
                  field_part.dim_atom * atom_part.dim_atom);
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < db; ++j)
            psi.amplitudes[i * db + j] = field_part.amplitudes[i] * atom_part.amplitudes[j];
    return psi;
}

ComplexOperator mixture(const std::vector<double>& weights,
                        const std::vector<ComplexOperator>& ops) {
    if (weights.size() != ops.size() || ops.empty())
        throw invalid_input("mixture: weights/operators size mismatch");
    double sum = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw invalid_input("mixture: negative weight");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-10) throw invalid_input("mixture: weights must sum to 1");
    ComplexOperator r(ops[0].dim_field, ops[0].dim_atom);
    for (std::size_t k = 0; k < ops.size(); ++k) {
        if (ops[k].dim_field != r.dim_field || ops[k].dim_atom != r.dim_atom)
            throw invalid_input("mixture: component dimension mismatch");
        for (std::size_t i = 0; i < r.entries.size(); ++i)
            r.entries[i] += weights[k] * ops[k].entries[i];
    }
    return r;
}

ComplexOperator density(const PureState& psi) {
    ComplexOperator rho(psi.dim_field, psi.dim_atom);
    for (int i = 0; i < psi.dim(); ++i)
        for (int j = 0; j < psi.dim(); ++j)
            rho.at(i, j) = psi.amplitudes[i] * std::conj(psi.amplitudes[j]);
    return rho;
}

bool StateSpec::operator==(const StateSpec& o) const {
    return kind == o.kind && n == o.n && beta == o.beta && a == o.a && b == o.b &&
           eta == o.eta && phase == o.phase && sign == o.sign && dim_field == o.dim_field &&
           dim_atom == o.dim_atom && weights == o.weights && components == o.components &&
           amplitudes == o.amplitudes;
}

int default_dim_field(const StateSpec& spec) {
    const auto beta_dim = [&] {
        const double ab = std::abs(spec.beta);
        return static_cast<int>(std::ceil(ab * ab + 7.0 * ab + 10.0));
    };
    if (spec.kind == "fock") return spec.n + 6;
    if (spec.kind == "qubit") return 1;
    if (spec.kind == "bell_fock") return 8;
    if (spec.kind == "coherent" || spec.kind == "cat" || spec.kind == "bell_cat" ||
        spec.kind == "lossy_bell_cat" || spec.kind == "classical_mix")
        return beta_dim();
    if (spec.kind == "product" || spec.kind == "mixture") {
        int d = 1;
        for (const auto& c : spec.components)
            d = std::max(d, c.dim_field > 0 ? c.dim_field : default_dim_field(c));
        return d;
    }
    if (spec.kind == "custom_amplitudes")
        return static_cast<int>(spec.amplitudes.size()) / std::max(1, spec.dim_atom);
    throw invalid_input("unknown state kind: " + spec.kind);
}

BuiltState build_state(const StateSpec& spec) {
    const int dim = spec.dim_field > 0 ? spec.dim_field : default_dim_field(spec);
    BuiltState out;
    if (spec.kind == "fock") {
        out.pure = fock(spec.n, dim);
        out.label = "fock(" + std::to_string(spec.n) + ")";
    } else if (spec.kind == "coherent") {
        out.pure = coherent(spec.beta, dim);
        out.label = "coherent(" + fmt_complex(spec.beta) + ")";
    } else if (spec.kind == "qubit") {
        out.pure = qubit(spec.a, spec.b);
        out.label = "qubit(" + fmt_complex(spec.a) + "," + fmt_complex(spec.b) + ")";
    } else if (spec.kind == "cat") {
        out.pure = cat(spec.beta, dim, spec.phase);
        out.label = "cat(" + fmt_complex(spec.beta) + ")";
    } else if (spec.kind == "bell_fock") {
        out.pure = bell_fock(spec.sign, dim);
        out.label = spec.sign > 0 ? "bell_fock(+)" : "bell_fock(-)";
    } else if (spec.kind == "bell_cat") {
        out.pure = bell_cat(spec.beta, dim);
        out.label = "bell_cat(" + fmt_complex(spec.beta) + ")";
    } else if (spec.kind == "lossy_bell_cat") {
        out.rho = lossy_bell_cat(spec.beta, spec.eta, dim);
        std::ostringstream os;
        os << "lossy_bell_cat(" << fmt_complex(spec.beta) << ",eta=" << spec.eta << ")";
        out.label = os.str();
    } else if (spec.kind == "classical_mix") {
        out.rho = classical_mix(spec.beta, dim);
        out.label = "classical_mix(" + fmt_complex(spec.beta) + ")";
    } else if (spec.kind == "product") {
        if (spec.components.size() != 2)
            throw invalid_input("product: expected exactly 2 components");
        BuiltState f = build_state(spec.components[0]);
        BuiltState a = build_state(spec.components[1]);
        if (!f.pure || !a.pure) throw invalid_input("product: components must be pure states");
        out.pure = product(*f.pure, *a.pure);
        out.label = "product(" + f.label + "," + a.label + ")";
    } else if (spec.kind == "mixture") {
        if (spec.weights.size() != spec.components.size())
            throw invalid_input("mixture: weights/components size mismatch");
        std::vector<ComplexOperator> ops;
        std::string lbl = "mixture(";
        for (std::size_t k = 0; k < spec.components.size(); ++k) {
            BuiltState c = build_state(spec.components[k]);
            ops.push_back(c.rho);
            lbl += (k ? "," : "") + c.label;
        }
        out.rho = mixture(spec.weights, ops);
        out.label = lbl + ")";
    } else if (spec.kind == "custom_amplitudes") {
        if (spec.amplitudes.empty()) throw invalid_input("custom_amplitudes: empty amplitude list");
        const int na = spec.dim_atom;
        const int nf = spec.dim_field > 0 ? spec.dim_field
                                          : static_cast<int>(spec.amplitudes.size()) / na;
        if (static_cast<std::size_t>(nf) * na != spec.amplitudes.size())
            throw invalid_input("custom_amplitudes: size does not match dims");
        PureState psi(nf, na);
        psi.amplitudes = spec.amplitudes;
        out.pure = normalized(psi);
        out.label = "custom";
    } else {
        throw invalid_input("unknown state kind: " + spec.kind);
    }
    if (out.pure) out.rho = density(*out.pure);
    return out;
}

namespace {

json cplx_json(cd v) { return json::array({v.real(), v.imag()}); }

cd cplx_from(const json& j) {
    if (j.is_number()) return cd(j.get<double>(), 0.0);
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw invalid_input("complex values must be [re, im] pairs");
    return cd(j[0].get<double>(), j[1].get<double>());
}

json spec_to_json(const StateSpec& s) {
    json j;
    j["kind"] = s.kind;
    if (s.dim_field > 0) j["dim_field"] = s.dim_field;
    if (s.kind == "fock") {
        j["n"] = s.n;
    } else if (s.kind == "coherent" || s.kind == "bell_cat" || s.kind == "classical_mix") {
        j["beta"] = cplx_json(s.beta);
    } else if (s.kind == "qubit") {
        j["a"] = cplx_json(s.a);
        j["b"] = cplx_json(s.b);
    } else if (s.kind == "cat") {
        j["beta"] = cplx_json(s.beta);
        j["phase"] = cplx_json(s.phase);
    } else if (s.kind == "bell_fock") {
        j["sign"] = s.sign;
    } else if (s.kind == "lossy_bell_cat") {
        j["beta"] = cplx_json(s.beta);
        j["eta"] = s.eta;
    } else if (s.kind == "product" || s.kind == "mixture") {
        if (s.kind == "mixture") j["weights"] = s.weights;
        json comps = json::array();
        for (const auto& c : s.components) comps.push_back(spec_to_json(c));
        j["components"] = comps;
    } else if (s.kind == "custom_amplitudes") {
        j["dim_atom"] = s.dim_atom;
        json amps = json::array();
        for (cd v : s.amplitudes) amps.push_back(cplx_json(v));
        j["amplitudes"] = amps;
    }
    return j;
}

StateSpec spec_from_json(const json& j) {
    static const std::set<std::string> kinds = {
        "fock",     "coherent",       "qubit",         "cat",
        "bell_fock", "bell_cat",      "lossy_bell_cat", "classical_mix",
        "product",  "mixture",        "custom_amplitudes"};
    StateSpec s;
    if (!j.is_object() || !j.contains("kind"))
        throw invalid_input("state spec must be an object with a \"kind\" field");
    s.kind = j.at("kind").get<std::string>();
    if (!kinds.count(s.kind)) throw invalid_input("unknown state kind: " + s.kind);
    s.dim_field = j.value("dim_field", 0);
    if (s.kind == "fock") {
        s.n = j.value("n", 0);
    } else if (s.kind == "coherent" || s.kind == "bell_cat" || s.kind == "classical_mix") {
        if (j.contains("beta")) s.beta = cplx_from(j.at("beta"));
    } else if (s.kind == "qubit") {
        if (j.contains("a")) s.a = cplx_from(j.at("a"));
        if (j.contains("b")) s.b = cplx_from(j.at("b"));
    } else if (s.kind == "cat") {
        if (j.contains("beta")) s.beta = cplx_from(j.at("beta"));
        if (j.contains("phase")) s.phase = cplx_from(j.at("phase"));
    } else if (s.kind == "bell_fock") {
        s.sign = j.value("sign", 1);
    } else if (s.kind == "lossy_bell_cat") {
        if (j.contains("beta")) s.beta = cplx_from(j.at("beta"));
        s.eta = j.value("eta", 1.0);
    } else if (s.kind == "product" || s.kind == "mixture") {
        if (s.kind == "mixture" && j.contains("weights"))
            s.weights = j.at("weights").get<std::vector<double>>();
        if (j.contains("components"))
            for (const auto& c : j.at("components")) s.components.push_back(spec_from_json(c));
    } else if (s.kind == "custom_amplitudes") {
        s.dim_atom = j.value("dim_atom", 1);
        if (j.contains("amplitudes"))
            for (const auto& v : j.at("amplitudes")) s.amplitudes.push_back(cplx_from(v));
    }
    return s;
}

} // namespace

std::string to_json_string(const StateSpec& spec) { return spec_to_json(spec).dump(); }

StateSpec state_spec_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_failure(std::string("state spec: ") + e.what(), e.byte);
    }
    return spec_from_json(j);
}

} // namespace hywig
