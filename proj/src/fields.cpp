#include "hywig/fields.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include <nlohmann/json.hpp>

namespace hywig {

namespace {

using nlohmann::json;

constexpr bool kLittle = std::endian::native == std::endian::little;

uint64_t to_le64(uint64_t v) {
    if constexpr (kLittle) return v;
    uint64_t r = 0;
    for (int i = 0; i < 8; ++i) r = (r << 8) | ((v >> (8 * i)) & 0xff);
    return r;
}

void write_doubles_le(std::ostream& os, const double* p, std::size_t n) {
    if constexpr (kLittle) {
        os.write(reinterpret_cast<const char*>(p), static_cast<std::streamsize>(n * 8));
        return;
    }
    for (std::size_t i = 0; i < n; ++i) {
        uint64_t bits;
        std::memcpy(&bits, p + i, 8);
        bits = to_le64(bits);
        os.write(reinterpret_cast<const char*>(&bits), 8);
    }
}

void read_doubles_le(std::istream& is, double* p, std::size_t n) {
    if constexpr (kLittle) {
        is.read(reinterpret_cast<char*>(p), static_cast<std::streamsize>(n * 8));
        return;
    }
    for (std::size_t i = 0; i < n; ++i) {
        uint64_t bits;
        is.read(reinterpret_cast<char*>(&bits), 8);
        bits = to_le64(bits);
        std::memcpy(p + i, &bits, 8);
    }
}

json cv_grid_json(const CvGrid& g) {
    return {{"re_min", g.re_min}, {"re_max", g.re_max}, {"im_min", g.im_min},
            {"im_max", g.im_max}, {"n_re", g.n_re},     {"n_im", g.n_im}};
}

CvGrid cv_grid_from(const json& j) {
    return {j.at("re_min").get<double>(), j.at("re_max").get<double>(),
            j.at("im_min").get<double>(), j.at("im_max").get<double>(),
            j.at("n_re").get<int>(),      j.at("n_im").get<int>()};
}

json sphere_grid_json(const SphereGrid& g) {
    return {{"kind", to_string(g.kind)}, {"n_theta", g.n_theta}, {"n_phi", g.n_phi}};
}

SphereGrid sphere_grid_from(const json& j) {
    return {sphere_kind_from_string(j.at("kind").get<std::string>()),
            j.at("n_theta").get<int>(), j.at("n_phi").get<int>()};
}

} // namespace

std::string to_string(field_kind k) {
    switch (k) {
    case field_kind::cv: return "cv";
    case field_kind::dv: return "dv";
    case field_kind::hybrid: return "hybrid";
    }
    return "cv";
}

field_kind field_kind_from_string(const std::string& s) {
    if (s == "cv") return field_kind::cv;
    if (s == "dv") return field_kind::dv;
    if (s == "hybrid") return field_kind::hybrid;
    throw invalid_input("unknown field kind: " + s);
}

std::size_t Field::expected_size() const {
    switch (kind) {
    case field_kind::cv: return cv_grid->size();
    case field_kind::dv: return sphere_grid->size();
    case field_kind::hybrid: return cv_grid->size() * sphere_grid->size();
    }
    return 0;
}

double& Field::at_cv(int i, int j) {
    return values[static_cast<std::size_t>(i) * cv_grid->n_im + j];
}
double Field::at_cv(int i, int j) const {
    return values[static_cast<std::size_t>(i) * cv_grid->n_im + j];
}
double& Field::at_dv(int i, int j) {
    return values[static_cast<std::size_t>(i) * sphere_grid->n_phi + j];
}
double Field::at_dv(int i, int j) const {
    return values[static_cast<std::size_t>(i) * sphere_grid->n_phi + j];
}
double& Field::at_hybrid(int i, int j, int k, int l) {
    return *(slice(i, j) + static_cast<std::size_t>(k) * sphere_grid->n_phi + l);
}
double Field::at_hybrid(int i, int j, int k, int l) const {
    return *(slice(i, j) + static_cast<std::size_t>(k) * sphere_grid->n_phi + l);
}
double* Field::slice(int i_re, int i_im) {
    const std::size_t ns = sphere_grid->size();
    return values.data() +
           (static_cast<std::size_t>(i_re) * cv_grid->n_im + i_im) * ns;
}
const double* Field::slice(int i_re, int i_im) const {
    const std::size_t ns = sphere_grid->size();
    return values.data() +
           (static_cast<std::size_t>(i_re) * cv_grid->n_im + i_im) * ns;
}

void write_field(const std::string& path, const Field& f) {
    if (f.values.size() != f.expected_size())
        throw invalid_input("write_field: value count does not match grids");
    json h;
    h["kind"] = to_string(f.kind);
    if (f.cv_grid) h["cv_grid"] = cv_grid_json(*f.cv_grid);
    if (f.sphere_grid) h["sphere_grid"] = sphere_grid_json(*f.sphere_grid);
    h["state_label"] = f.state_label;
    h["trace_target"] = f.trace_target;
    h["count"] = f.values.size();
    const std::string header = h.dump();

    std::ofstream os(path, std::ios::binary);
    if (!os) throw invalid_input("cannot open for writing: " + path);
    const uint64_t len = to_le64(header.size());
    os.write(reinterpret_cast<const char*>(&len), 8);
    os.write(header.data(), static_cast<std::streamsize>(header.size()));
    write_doubles_le(os, f.values.data(), f.values.size());
    if (!os) throw numeric_failure("write failed: " + path);
}

Field read_field(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw invalid_input("cannot open: " + path);
    uint64_t len = 0;
    is.read(reinterpret_cast<char*>(&len), 8);
    if (!is) throw parse_failure(path + ": truncated header length prefix", 0);
    len = to_le64(len);
    if (len == 0 || len > (1u << 26)) throw parse_failure(path + ": implausible header length", 0);
    std::string header(len, '\0');
    is.read(header.data(), static_cast<std::streamsize>(len));
    if (!is) throw parse_failure(path + ": truncated header", 8);
    json h;
    try {
        h = json::parse(header);
    } catch (const json::parse_error& e) {
        throw parse_failure(path + ": bad header: " + e.what(), 8 + e.byte);
    }
    Field f;
    try {
        f.kind = field_kind_from_string(h.at("kind").get<std::string>());
        if (h.contains("cv_grid")) f.cv_grid = cv_grid_from(h.at("cv_grid"));
        if (h.contains("sphere_grid")) f.sphere_grid = sphere_grid_from(h.at("sphere_grid"));
        f.state_label = h.value("state_label", "");
        f.trace_target = h.value("trace_target", 1.0);
        if (f.kind != field_kind::dv && !f.cv_grid)
            throw invalid_input("missing cv_grid");
        if (f.kind != field_kind::cv && !f.sphere_grid)
            throw invalid_input("missing sphere_grid");
        const std::size_t count = h.at("count").get<std::size_t>();
        if (count != f.expected_size()) throw invalid_input("count does not match grids");
    } catch (const json::exception& e) {
        throw parse_failure(path + ": bad header: " + e.what(), 8);
    }
    f.values.resize(f.expected_size());
    read_doubles_le(is, f.values.data(), f.values.size());
    if (!is)
        throw parse_failure(path + ": truncated payload",
                            8 + len + static_cast<std::size_t>(is.gcount()));
    return f;
}

void write_csv(const std::string& path, const Field& f) {
    if (f.kind == field_kind::hybrid)
        throw invalid_input("write_csv: only 2-D fields have a CSV form");
    std::ofstream os(path);
    if (!os) throw invalid_input("cannot open for writing: " + path);
    os.precision(17);
    if (f.kind == field_kind::cv) {
        os << "re_alpha,im_alpha,w\n";
        for (int i = 0; i < f.cv_grid->n_re; ++i)
            for (int j = 0; j < f.cv_grid->n_im; ++j)
                os << f.cv_grid->re[i] << ',' << f.cv_grid->im[j] << ',' << f.at_cv(i, j)
                   << '\n';
    } else {
        os << "theta,phi,w\n";
        for (int i = 0; i < f.sphere_grid->n_theta; ++i)
            for (int j = 0; j < f.sphere_grid->n_phi; ++j)
                os << f.sphere_grid->theta[i] << ',' << f.sphere_grid->phi[j] << ','
                   << f.at_dv(i, j) << '\n';
    }
    if (!os) throw numeric_failure("write failed: " + path);
}

} // namespace hywig
