#include "hywig/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hywig/dynamics.hpp"
#include "hywig/fields.hpp"
#include "hywig/render.hpp"
#include "hywig/states.hpp"
#include "hywig/verify.hpp"
#include "hywig/wigner.hpp"

namespace hywig {
namespace {

using nlohmann::json;

const double PI = std::acos(-1.0);

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw invalid_input("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

json load_json_file(const std::string& path) {
    const std::string text = slurp(path);
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_failure("malformed JSON in " + path, e.byte);
    }
}

double parse_real(const std::string& s) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        while (used < s.size() && std::isspace(static_cast<unsigned char>(s[used]))) ++used;
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::logic_error&) {
        throw invalid_input("cannot parse number '" + s + "'");
    }
}

cd parse_complex(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) return cd(parse_real(s), 0.0);
    return cd(parse_real(s.substr(0, comma)), parse_real(s.substr(comma + 1)));
}

std::vector<double> parse_real_list(const std::string& s) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto comma = s.find(',', start);
        const std::string part =
            s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (!part.empty()) out.push_back(parse_real(part));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (out.empty()) throw invalid_input("empty number list '" + s + "'");
    return out;
}

std::string fmt_time(double t) {
    std::ostringstream os;
    os.precision(6);
    os << t;
    return os.str();
}

// ---- state dumps (JSON: label, dims, then amplitudes or a density matrix) ----

json complex_array(const std::vector<cd>& v) {
    json a = json::array();
    for (const cd& z : v) a.push_back({z.real(), z.imag()});
    return a;
}

std::vector<cd> complex_vector(const json& a) {
    std::vector<cd> out;
    out.reserve(a.size());
    for (const auto& e : a) out.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
    return out;
}

void write_state_dump(const std::string& path, const BuiltState& st, const StateSpec* spec) {
    json j;
    j["label"] = st.label;
    j["dim_field"] = st.rho.dim_field;
    j["dim_atom"] = st.rho.dim_atom;
    if (st.pure)
        j["pure"] = complex_array(st.pure->amplitudes);
    else
        j["density"] = complex_array(st.rho.entries);
    if (spec) j["spec"] = json::parse(to_json_string(*spec));
    std::ofstream out(path, std::ios::binary);
    if (!out) throw invalid_input("cannot write " + path);
    out << j.dump() << "\n";
    if (!out) throw numeric_failure("write failed: " + path);
}

BuiltState read_state_dump(const std::string& path) {
    const std::string text = slurp(path);
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_failure("malformed state dump " + path, e.byte);
    }
    BuiltState st;
    try {
        st.label = j.value("label", "state");
        const int nf = j.at("dim_field").get<int>();
        const int na = j.at("dim_atom").get<int>();
        if (nf < 1 || na < 1 || na > 2)
            throw invalid_input("state dump " + path + ": bad dimensions");
        const std::size_t dim = static_cast<std::size_t>(nf) * na;
        if (j.contains("pure")) {
            PureState psi(nf, na);
            psi.amplitudes = complex_vector(j["pure"]);
            if (psi.amplitudes.size() != dim)
                throw invalid_input("state dump " + path + ": amplitude count mismatch");
            st.pure = psi;
            st.rho = density(psi);
        } else {
            ComplexOperator rho(nf, na);
            rho.entries = complex_vector(j.at("density"));
            if (rho.entries.size() != dim * dim)
                throw invalid_input("state dump " + path + ": density entry count mismatch");
            st.rho = std::move(rho);
        }
    } catch (const json::exception& e) {
        throw invalid_input("state dump " + path + ": " + std::string(e.what()));
    }
    return st;
}

// ---- shared option groups ----

struct StateFlags {
    std::string kind, beta, a, b, phase, spec_file;
    int n = 0, sign = 1, dim = 0;
    double eta = 1.0;

    void add(CLI::App* cmd) {
        cmd->add_option("--kind", kind,
                        "fock | coherent | qubit | cat | bell_fock | bell_cat | "
                        "lossy_bell_cat | classical_mix");
        cmd->add_option("--n", n, "Fock index for --kind fock");
        cmd->add_option("--beta", beta, "field amplitude, 're' or 're,im'");
        cmd->add_option("--a", a, "|e> amplitude for --kind qubit");
        cmd->add_option("--b", b, "|g> amplitude for --kind qubit");
        cmd->add_option("--eta", eta, "coherence retention in [0,1] for lossy_bell_cat");
        cmd->add_option("--phase", phase, "cat superposition phase, 're' or 're,im'");
        cmd->add_option("--sign", sign, "bell_fock sign, +1 or -1");
        cmd->add_option("--dim", dim, "Fock-space truncation (0 = per-kind default)");
        cmd->add_option("--spec", spec_file, "StateSpec JSON file");
    }

    // flags > config > spec-file contents; returns false when no source names a kind
    bool resolve(const CLI::App* cmd, const json& cfg, StateSpec& out) const {
        bool have = false;
        if (cmd->count("--spec") > 0) {
            out = state_spec_from_json(slurp(spec_file));
            have = true;
        } else if (cfg.contains("state")) {
            if (cfg["state"].is_string())
                out = state_spec_from_json(slurp(cfg["state"].get<std::string>()));
            else
                out = state_spec_from_json(cfg["state"].dump());
            have = true;
        }
        if (cmd->count("--kind") > 0) {
            out.kind = kind;
            have = true;
        }
        if (cmd->count("--n") > 0) out.n = n;
        if (cmd->count("--beta") > 0) out.beta = parse_complex(beta);
        if (cmd->count("--a") > 0) out.a = parse_complex(a);
        if (cmd->count("--b") > 0) out.b = parse_complex(b);
        if (cmd->count("--eta") > 0) out.eta = eta;
        if (cmd->count("--phase") > 0) out.phase = parse_complex(phase);
        if (cmd->count("--sign") > 0) out.sign = sign;
        if (cmd->count("--dim") > 0) out.dim_field = dim;
        return have;
    }
};

struct GridFlags {
    double half_width = 6.0;
    int nodes = 0; // 0 = kind-dependent default
    double re_min = 0, re_max = 0, im_min = 0, im_max = 0;
    int n_re = 0, n_im = 0;
    std::string sphere = "gauss_legendre";
    int n_theta = 0, n_phi = 0;

    void add(CLI::App* cmd) {
        cmd->add_option("--half-width", half_width, "CV window is [-w, w]^2");
        cmd->add_option("--nodes", nodes, "CV nodes per axis");
        cmd->add_option("--re-min", re_min);
        cmd->add_option("--re-max", re_max);
        cmd->add_option("--im-min", im_min);
        cmd->add_option("--im-max", im_max);
        cmd->add_option("--n-re", n_re);
        cmd->add_option("--n-im", n_im);
        cmd->add_option("--sphere-kind", sphere,
                        "gauss_legendre | uniform_midpoint | uniform_inclusive");
        cmd->add_option("--n-theta", n_theta, "polar nodes");
        cmd->add_option("--n-phi", n_phi, "azimuthal nodes");
    }

    // Hybrid evaluation touches every (alpha, sphere) pair, so its defaults
    // are coarser than the single-system ones; integrals still hold 1e-4.
    CvGrid cv(const CLI::App* cmd, const json& cfg, bool hybrid) const {
        double rlo = -6.0, rhi = 6.0, ilo = -6.0, ihi = 6.0;
        int nr = hybrid ? 61 : 201, ni = hybrid ? 61 : 201;
        if (cfg.contains("cv_grid")) {
            const json& g = cfg["cv_grid"];
            if (g.contains("half_width")) {
                const double w = g["half_width"].get<double>();
                rlo = ilo = -w;
                rhi = ihi = w;
            }
            if (g.contains("n")) nr = ni = g["n"].get<int>();
            rlo = g.value("re_min", rlo);
            rhi = g.value("re_max", rhi);
            ilo = g.value("im_min", ilo);
            ihi = g.value("im_max", ihi);
            nr = g.value("n_re", nr);
            ni = g.value("n_im", ni);
        }
        if (cmd->count("--half-width") > 0) {
            rlo = ilo = -half_width;
            rhi = ihi = half_width;
        }
        if (cmd->count("--nodes") > 0) nr = ni = nodes;
        if (cmd->count("--re-min") > 0) rlo = re_min;
        if (cmd->count("--re-max") > 0) rhi = re_max;
        if (cmd->count("--im-min") > 0) ilo = im_min;
        if (cmd->count("--im-max") > 0) ihi = im_max;
        if (cmd->count("--n-re") > 0) nr = n_re;
        if (cmd->count("--n-im") > 0) ni = n_im;
        return CvGrid(rlo, rhi, ilo, ihi, nr, ni);
    }

    SphereGrid sphere_grid(const CLI::App* cmd, const json& cfg, bool hybrid) const {
        sphere_kind k = sphere_kind::gauss_legendre;
        int nt = hybrid ? 16 : 64, np = hybrid ? 32 : 128;
        if (cfg.contains("sphere_grid")) {
            const json& g = cfg["sphere_grid"];
            if (g.contains("kind")) k = sphere_kind_from_string(g["kind"].get<std::string>());
            nt = g.value("n_theta", nt);
            np = g.value("n_phi", np);
        }
        if (cmd->count("--sphere-kind") > 0) k = sphere_kind_from_string(sphere);
        if (cmd->count("--n-theta") > 0) nt = n_theta;
        if (cmd->count("--n-phi") > 0) np = n_phi;
        return SphereGrid(k, nt, np);
    }
};

json load_config(const CLI::App* cmd, const std::string& path) {
    if (cmd->count("--config") == 0) return json::object();
    const json cfg = load_json_file(path);
    if (!cfg.is_object()) throw invalid_input("config must be a JSON object: " + path);
    return cfg;
}

strictness resolve_strictness(const CLI::App* cmd, const json& cfg, const std::string& flag) {
    std::string v = cfg.value("strictness", "warn");
    if (cmd->count("--strictness") > 0) v = flag;
    if (v == "warn") return strictness::warn;
    if (v == "error") return strictness::error;
    throw invalid_input("strictness must be 'warn' or 'error', got '" + v + "'");
}

field_kind kind_of(const BuiltState& st) {
    if (st.rho.dim_atom == 2 && st.rho.dim_field > 1) return field_kind::hybrid;
    if (st.rho.dim_atom == 2) return field_kind::dv;
    return field_kind::cv;
}

// Population on the top two Fock levels: when it is visible at this scale the
// truncated evaluation is not trustworthy.
double boundary_population(const ComplexOperator& rho) {
    const int nf = rho.dim_field, na = rho.dim_atom;
    double s = 0.0;
    for (int n = std::max(0, nf - 2); n < nf; ++n)
        for (int l = 0; l < na; ++l) s += std::abs(rho.at(n * na + l, n * na + l));
    return s;
}

void check_boundary_population(const BuiltState& st, strictness strict) {
    if (st.rho.dim_field < 3) return;
    const double tail = boundary_population(st.rho);
    if (tail <= 1e-6) return;
    std::ostringstream os;
    os << "state '" << st.label << "' holds population " << tail
       << " on the top two Fock levels; results are truncation-limited, rerun with a "
          "larger --dim";
    if (strict == strictness::error) throw numeric_failure(os.str());
    std::cerr << "warning: " << os.str() << "\n";
}

// ---- subcommand implementations ----

struct StateCmd {
    CLI::App* cmd = nullptr;
    StateFlags state;
    std::string config_path, out = "state.json";

    void add(CLI::App& app) {
        cmd = app.add_subcommand("state", "build a state, report its invariants, dump it");
        cmd->add_option("--config", config_path, "JSON job config");
        state.add(cmd);
        cmd->add_option("--out", out, "state dump path");
    }

    int run() const {
        const json cfg = load_config(cmd, config_path);
        StateSpec spec;
        if (!state.resolve(cmd, cfg, spec))
            throw invalid_input("state: provide --kind, --spec, or a config with a state block");
        const BuiltState st = build_state(spec);

        const cd tr = trace(st.rho);
        const double herm = hermiticity_defect(st.rho);
        const double mineig = min_eigenvalue(st.rho);
        const bool ok =
            std::abs(tr - cd(1.0)) <= 1e-10 && herm <= 1e-12 && mineig >= -1e-10;

        std::string out_path = out;
        if (cmd->count("--out") == 0 && cfg.contains("output_dir"))
            out_path = (std::filesystem::path(cfg["output_dir"].get<std::string>()) /
                        "state.json")
                           .string();
        write_state_dump(out_path, st, &spec);

        json rep;
        rep["label"] = st.label;
        rep["dim_field"] = st.rho.dim_field;
        rep["dim_atom"] = st.rho.dim_atom;
        rep["pure"] = st.pure.has_value();
        rep["trace"] = {tr.real(), tr.imag()};
        rep["hermiticity_defect"] = herm;
        rep["min_eigenvalue"] = mineig;
        rep["purity"] = purity(st.rho);
        rep["invariants_ok"] = ok;
        rep["output"] = out_path;
        std::cout << rep.dump(2) << "\n";

        if (!ok) throw verification_failure("density invariants violated for " + st.label);
        return 0;
    }
};

struct WignerCmd {
    CLI::App* cmd = nullptr;
    StateFlags state;
    GridFlags grids;
    std::string config_path, state_file, reduced, strict_flag, out;

    void add(CLI::App& app) {
        cmd = app.add_subcommand("wigner", "evaluate a Wigner field over a grid");
        cmd->add_option("--config", config_path, "JSON job config");
        cmd->add_option("--state", state_file, "state dump produced by `state` or `evolve`");
        state.add(cmd);
        grids.add(cmd);
        cmd->add_option("--reduced", reduced,
                        "marginalize a hybrid state to 'cv' or 'dv' before dumping");
        cmd->add_option("--strictness", strict_flag, "truncation diagnostics: warn | error");
        cmd->add_option("--out", out, "field dump path (.csv for 2-D text output)");
    }

    int run() const {
        const json cfg = load_config(cmd, config_path);
        BuiltState st;
        if (cmd->count("--state") > 0) {
            st = read_state_dump(state_file);
        } else {
            StateSpec spec;
            if (!state.resolve(cmd, cfg, spec))
                throw invalid_input(
                    "wigner: provide --state, --kind, --spec, or a config with a state block");
            st = build_state(spec);
        }
        check_boundary_population(st, resolve_strictness(cmd, cfg, strict_flag));

        const field_kind fk = kind_of(st);
        const bool hybrid = fk == field_kind::hybrid;
        Field f;
        if (fk == field_kind::cv) {
            f = evaluate_cv(st.rho, grids.cv(cmd, cfg, false), st.label);
        } else if (fk == field_kind::dv) {
            f = evaluate_dv(st.rho, grids.sphere_grid(cmd, cfg, false), st.label);
        } else {
            f = evaluate_hybrid(st.rho, grids.cv(cmd, cfg, true),
                                grids.sphere_grid(cmd, cfg, true), st.label);
        }
        if (cmd->count("--reduced") > 0) {
            if (!hybrid)
                throw invalid_input("--reduced requires a hybrid (field x atom) state");
            if (reduced == "cv")
                f = marginal(f, field_kind::cv);
            else if (reduced == "dv")
                f = marginal(f, field_kind::dv);
            else
                throw invalid_input("--reduced must be 'cv' or 'dv', got '" + reduced + "'");
        }

        std::string out_path = out;
        if (out_path.empty())
            out_path = cfg.contains("output_dir")
                           ? (std::filesystem::path(cfg["output_dir"].get<std::string>()) /
                              "field.bin")
                                 .string()
                           : "field.bin";
        if (out_path.size() >= 4 && out_path.substr(out_path.size() - 4) == ".csv")
            write_csv(out_path, f);
        else
            write_field(out_path, f);

        const double integral = integrate(f);
        json rep;
        rep["label"] = f.state_label;
        rep["kind"] = to_string(f.kind);
        rep["values"] = f.values.size();
        rep["integral"] = integral;
        rep["trace_target"] = f.trace_target;
        rep["normalization_gap"] = std::abs(integral - f.trace_target);
        rep["negativity_volume"] = negativity_volume(f);
        rep["max_abs"] = field_max_abs(f);
        rep["output"] = out_path;
        std::cout << rep.dump(2) << "\n";
        return 0;
    }
};

struct EvolveCmd {
    CLI::App* cmd = nullptr;
    GridFlags grids;
    std::string config_path, times_flag, out_dir = ".";
    double omega = 1.0, beta = 3.0;
    int dim = 60;
    bool fig6 = false, auto_fig7 = false, no_fields = false;

    void add(CLI::App& app) {
        cmd = app.add_subcommand(
            "evolve", "run the resonant atom-field model and dump snapshots");
        cmd->add_option("--config", config_path, "JSON job config");
        cmd->add_option("--omega", omega, "coupling rate");
        cmd->add_option("--beta", beta, "initial coherent amplitude (ignored by --fig6)");
        cmd->add_option("--dim", dim, "Fock-space truncation");
        cmd->add_flag("--fig6", fig6,
                      "vacuum run: snapshots at t = pi/(4 omega) and 3 pi/(4 omega)");
        cmd->add_flag("--auto-fig7", auto_fig7,
                      "estimate the revival time t_r, snapshot at t_r/9, t_r/2, t_r");
        cmd->add_option("--times", times_flag, "explicit snapshot times, comma separated");
        cmd->add_option("--out-dir", out_dir, "directory for dumps and manifest");
        cmd->add_flag("--no-fields", no_fields, "dump states only");
        grids.add(cmd);
    }

    int run() const {
        const json cfg = load_config(cmd, config_path);
        const json evo = cfg.value("evolution", json::object());

        double w = evo.value("omega", 1.0);
        double b = evo.value("beta", 3.0);
        int nf = evo.value("dim_field", 60);
        if (cmd->count("--omega") > 0) w = omega;
        if (cmd->count("--beta") > 0) b = beta;
        if (cmd->count("--dim") > 0) nf = dim;
        if (!(w > 0.0)) throw invalid_input("evolve: omega must be positive");
        if (nf < 2) throw invalid_input("evolve: dim must be at least 2");

        // mode: flags beat the config's "times" entry (array, "fig6", "auto-fig7")
        std::string mode;
        std::vector<double> times;
        if (evo.contains("times")) {
            if (evo["times"].is_array()) {
                mode = "times";
                times = evo["times"].get<std::vector<double>>();
            } else {
                mode = evo["times"].get<std::string>();
                if (mode != "fig6" && mode != "auto-fig7")
                    throw invalid_input("evolution.times must be an array, 'fig6', or 'auto-fig7'");
            }
        }
        const int picked = (fig6 ? 1 : 0) + (auto_fig7 ? 1 : 0) +
                           (cmd->count("--times") > 0 ? 1 : 0);
        if (picked > 1)
            throw invalid_input("evolve: pick one of --fig6, --auto-fig7, --times");
        if (fig6) mode = "fig6";
        if (auto_fig7) mode = "auto-fig7";
        if (cmd->count("--times") > 0) {
            mode = "times";
            times = parse_real_list(times_flag);
        }
        if (mode.empty())
            throw invalid_input("evolve: pick one of --fig6, --auto-fig7, --times");

        const JcModel model{w, nf};
        json manifest;
        manifest["omega"] = w;
        manifest["dim_field"] = nf;
        manifest["mode"] = mode;

        PureState initial;
        if (mode == "fig6") {
            initial = product(fock(0, nf), qubit(1.0, 0.0));
            times = {PI / (4.0 * w), 3.0 * PI / (4.0 * w)};
            manifest["beta"] = 0.0;
        } else {
            initial = product(coherent(b, nf), qubit(1.0, 0.0));
            manifest["beta"] = b;
            if (mode == "auto-fig7") {
                const double t_r = estimate_revival_time(model, b);
                times = revival_snapshot_times(t_r);
                manifest["revival_time"] = t_r;
            }
        }
        if (times.empty()) throw invalid_input("evolve: no snapshot times");

        std::filesystem::create_directories(out_dir);
        manifest["snapshots"] = json::array();
        for (std::size_t i = 0; i < times.size(); ++i) {
            const double t = times[i];
            BuiltState st;
            st.pure = evolve(model, initial, t);
            st.rho = density(*st.pure);
            st.label = (mode == "fig6" ? "jc_vacuum(t=" : "jc(t=") + fmt_time(t) + ")";

            const std::string stem = "snap" + std::to_string(i);
            const auto state_path = std::filesystem::path(out_dir) / (stem + "_state.json");
            write_state_dump(state_path.string(), st, nullptr);

            json snap;
            snap["t"] = t;
            snap["inversion"] = inversion(*st.pure);
            snap["state"] = state_path.string();
            if (!no_fields) {
                const Field f = evaluate_hybrid(st.rho, grids.cv(cmd, cfg, true),
                                                grids.sphere_grid(cmd, cfg, true), st.label);
                const auto field_path = std::filesystem::path(out_dir) / (stem + "_field.bin");
                write_field(field_path.string(), f);
                snap["field"] = field_path.string();
            }
            manifest["snapshots"].push_back(std::move(snap));
        }

        const auto manifest_path = std::filesystem::path(out_dir) / "manifest.json";
        std::ofstream mf(manifest_path);
        if (!mf) throw invalid_input("cannot write " + manifest_path.string());
        mf << manifest.dump(2) << "\n";
        std::cout << manifest.dump(2) << "\n";
        return 0;
    }
};

struct RenderCmd {
    CLI::App* cmd = nullptr;
    std::string config_path, input, out, limits, manifest_path, neg_color, pos_color,
        disc_grid;
    int image_size = 0, disc_resolution = 0;
    double transparency_norm = 0.0;
    bool equator = false;

    void add(CLI::App& app) {
        cmd = app.add_subcommand("render", "render a field dump to .png or .svg");
        cmd->add_option("--config", config_path, "JSON job config");
        cmd->add_option("--input", input, "field dump path")->required();
        cmd->add_option("--out", out, "output image path, .png or .svg")->required();
        cmd->add_option("--limits", limits, "'auto' or 'vmin,vmax'");
        cmd->add_option("--image-size", image_size, "edge pixels for heatmaps and discs");
        cmd->add_option("--disc-grid", disc_grid, "'nx,ny' Lambert discs across the window");
        cmd->add_option("--disc-resolution", disc_resolution, "pixels per disc tile");
        cmd->add_option("--transparency-norm", transparency_norm,
                        "max|W| that maps to a fully opaque disc");
        cmd->add_option("--neg-color", neg_color, "'r,g,b' endpoint for negative values");
        cmd->add_option("--pos-color", pos_color, "'r,g,b' endpoint for positive values");
        cmd->add_flag("--equator", equator, "overdraw the equator circle");
        cmd->add_option("--manifest", manifest_path, "also write the run manifest here");
    }

    static Rgb parse_rgb(const std::string& s) {
        const std::vector<double> v = parse_real_list(s);
        if (v.size() != 3) throw invalid_input("color must be 'r,g,b', got '" + s + "'");
        for (double c : v)
            if (c < 0 || c > 255) throw invalid_input("color channels must be in [0, 255]");
        return Rgb{static_cast<std::uint8_t>(v[0]), static_cast<std::uint8_t>(v[1]),
                   static_cast<std::uint8_t>(v[2])};
    }

    int run() const {
        const json cfg = load_config(cmd, config_path);
        const Field f = read_field(input);

        RenderSpec spec;
        bool limits_from_config = false;
        if (cfg.contains("render")) {
            spec = render_spec_from_json(cfg["render"].dump());
            limits_from_config =
                cfg["render"].contains("vmin") || cfg["render"].contains("vmax");
        }
        if (cmd->count("--image-size") > 0) spec.image_size = image_size;
        if (cmd->count("--disc-resolution") > 0) spec.disc_resolution = disc_resolution;
        if (cmd->count("--transparency-norm") > 0) spec.transparency_norm = transparency_norm;
        if (cmd->count("--equator") > 0) spec.equator = equator;
        if (cmd->count("--neg-color") > 0) spec.neg_color = parse_rgb(neg_color);
        if (cmd->count("--pos-color") > 0) spec.pos_color = parse_rgb(pos_color);
        if (cmd->count("--disc-grid") > 0) {
            const std::vector<double> v = parse_real_list(disc_grid);
            if (v.size() != 2) throw invalid_input("--disc-grid wants 'nx,ny'");
            spec.disc_nx = static_cast<int>(v[0]);
            spec.disc_ny = static_cast<int>(v[1]);
        }
        if (cmd->count("--limits") > 0) {
            if (limits == "auto") {
                apply_auto_limits(spec, f);
            } else {
                const std::vector<double> v = parse_real_list(limits);
                if (v.size() != 2) throw invalid_input("--limits wants 'auto' or 'vmin,vmax'");
                spec.vmin = v[0];
                spec.vmax = v[1];
            }
        } else if (!limits_from_config) {
            apply_auto_limits(spec, f);
        }

        const bool png = out.size() >= 4 && out.substr(out.size() - 4) == ".png";
        const bool svg = out.size() >= 4 && out.substr(out.size() - 4) == ".svg";
        if (!png && !svg)
            throw invalid_input("unknown output extension (want .png or .svg): " + out);

        std::uint32_t crc = 0;
        if (png) {
            Image img;
            if (f.kind == field_kind::cv)
                img = render_cv(f, spec);
            else if (f.kind == field_kind::dv)
                img = render_dv_disc(f, spec);
            else
                img = render_hybrid(f, spec);
            const std::vector<std::uint8_t> bytes = encode_png(img);
            std::ofstream os(out, std::ios::binary);
            if (!os) throw invalid_input("cannot write " + out);
            os.write(reinterpret_cast<const char*>(bytes.data()),
                     static_cast<std::streamsize>(bytes.size()));
            if (!os) throw numeric_failure("write failed: " + out);
            crc = content_crc32(bytes);
        } else {
            write_svg(out, f, spec);
            const std::string text = slurp(out);
            crc = content_crc32(
                std::vector<std::uint8_t>(text.begin(), text.end()));
        }

        json rep;
        rep["input"] = input;
        rep["output"] = out;
        rep["kind"] = to_string(f.kind);
        rep["crc32"] = crc;
        rep["spec"] = json::parse(render_spec_to_json(spec));
        if (cmd->count("--manifest") > 0) {
            std::ofstream mf(manifest_path);
            if (!mf) throw invalid_input("cannot write " + manifest_path);
            mf << rep.dump(2) << "\n";
        }
        std::cout << rep.dump(2) << "\n";
        return 0;
    }
};

struct VerifyCmd {
    CLI::App* cmd = nullptr;

    void add(CLI::App& app) {
        cmd = app.add_subcommand("verify", "run the self-check suite, exit 4 on any failure");
    }

    int run() const {
        const std::vector<CheckResult> results = run_verification();
        std::cout << verification_report_json(results) << "\n";
        for (const CheckResult& c : results)
            if (!c.passed) return 4;
        return 0;
    }
};

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Wigner functions for field, qubit, and hybrid field-qubit states"};
    app.require_subcommand(1);

    StateCmd state_cmd;
    WignerCmd wigner_cmd;
    EvolveCmd evolve_cmd;
    RenderCmd render_cmd;
    VerifyCmd verify_cmd;
    state_cmd.add(app);
    wigner_cmd.add(app);
    evolve_cmd.add(app);
    render_cmd.add(app);
    verify_cmd.add(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (state_cmd.cmd->parsed()) return state_cmd.run();
        if (wigner_cmd.cmd->parsed()) return wigner_cmd.run();
        if (evolve_cmd.cmd->parsed()) return evolve_cmd.run();
        if (render_cmd.cmd->parsed()) return render_cmd.run();
        if (verify_cmd.cmd->parsed()) return verify_cmd.run();
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

} // namespace hywig
