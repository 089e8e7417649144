#include "hywig/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>
#include <zlib.h>

#include "hywig/simd/kernels.hpp"

namespace hywig {

namespace {

const double PI = std::acos(-1.0);
constexpr double kSqrt3 = 1.7320508075688772;

void require_limits(const RenderSpec& spec) {
    if (!(spec.vmin < 0.0 && 0.0 < spec.vmax))
        throw invalid_input("render limits must satisfy vmin < 0 < vmax");
}

std::uint8_t lerp_channel(std::uint8_t from, std::uint8_t to, double t) {
    return static_cast<std::uint8_t>(std::lround(from + t * (double(to) - from)));
}

// bilinear sample of a dv field; theta clamped to the node range, phi wraps
double sample_dv(const Field& f, double theta, double phi) {
    const SphereGrid& g = *f.sphere_grid;
    const auto& tn = g.theta;
    int j = 0;
    double ft = 0.0;
    if (theta <= tn.front()) {
        j = 0;
        ft = 0.0;
    } else if (theta >= tn.back()) {
        j = g.n_theta - 2;
        ft = 1.0;
    } else {
        j = static_cast<int>(std::upper_bound(tn.begin(), tn.end(), theta) - tn.begin()) - 1;
        ft = (theta - tn[j]) / (tn[j + 1] - tn[j]);
    }
    double u = phi / (2.0 * PI) * g.n_phi;
    u -= std::floor(u / g.n_phi) * g.n_phi;
    int k = static_cast<int>(u) % g.n_phi;
    const double fp = u - std::floor(u);
    const int k2 = (k + 1) % g.n_phi;
    const double a = f.at_dv(j, k) * (1 - fp) + f.at_dv(j, k2) * fp;
    const double b = f.at_dv(j + 1, k) * (1 - fp) + f.at_dv(j + 1, k2) * fp;
    return a * (1 - ft) + b * ft;
}

double sample_cv(const Field& f, double x, double y) {
    const CvGrid& g = *f.cv_grid;
    const auto frac_index = [](double v, double lo, double hi, int n) {
        double t = (v - lo) / (hi - lo) * (n - 1);
        return std::clamp(t, 0.0, double(n - 1));
    };
    const double fx = frac_index(x, g.re_min, g.re_max, g.n_re);
    const double fy = frac_index(y, g.im_min, g.im_max, g.n_im);
    const int i = std::min(static_cast<int>(fx), g.n_re - 2);
    const int j = std::min(static_cast<int>(fy), g.n_im - 2);
    const double tx = fx - i, ty = fy - j;
    const double a = f.at_cv(i, j) * (1 - ty) + f.at_cv(i, j + 1) * ty;
    const double b = f.at_cv(i + 1, j) * (1 - ty) + f.at_cv(i + 1, j + 1) * ty;
    return a * (1 - tx) + b * tx;
}

void set_pixel(Image& img, int x, int y, std::array<std::uint8_t, 4> c) {
    std::uint8_t* p = img.rgba.data() + (static_cast<std::size_t>(y) * img.width + x) * 4;
    p[0] = c[0];
    p[1] = c[1];
    p[2] = c[2];
    p[3] = c[3];
}

void blit(Image& canvas, const Image& tile, int x0, int y0) {
    for (int y = 0; y < tile.height; ++y) {
        std::uint8_t* dst =
            canvas.rgba.data() + (static_cast<std::size_t>(y0 + y) * canvas.width + x0) * 4;
        const std::uint8_t* src =
            tile.rgba.data() + static_cast<std::size_t>(y) * tile.width * 4;
        std::memcpy(dst, src, static_cast<std::size_t>(tile.width) * 4);
    }
}

void push_u32_be(std::vector<std::uint8_t>& v, std::uint32_t x) {
    v.push_back(static_cast<std::uint8_t>(x >> 24));
    v.push_back(static_cast<std::uint8_t>(x >> 16));
    v.push_back(static_cast<std::uint8_t>(x >> 8));
    v.push_back(static_cast<std::uint8_t>(x));
}

void push_chunk(std::vector<std::uint8_t>& out, const char type[4],
                const std::vector<std::uint8_t>& data) {
    push_u32_be(out, static_cast<std::uint32_t>(data.size()));
    const std::size_t start = out.size();
    out.insert(out.end(), type, type + 4);
    out.insert(out.end(), data.begin(), data.end());
    const auto crc = static_cast<std::uint32_t>(
        ::crc32(0L, out.data() + start, static_cast<uInt>(out.size() - start)));
    push_u32_be(out, crc);
}

std::string fmt_num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

} // namespace

void apply_auto_limits(RenderSpec& spec, const Field& f) {
    double lim = 2.0;
    switch (f.kind) {
    case field_kind::cv: lim = 2.0; break;
    case field_kind::dv:
        // density fields (trace 1) cap at the kernel extreme; traceless
        // operator fields reach +-sqrt(3)
        lim = std::abs(f.trace_target) < 0.5 ? kSqrt3 : (1.0 + kSqrt3) / 2.0;
        break;
    case field_kind::hybrid: lim = 1.0 + kSqrt3; break;
    }
    spec.vmin = -lim;
    spec.vmax = lim;
}

std::array<double, 2> lambert_project(double theta, double phi) {
    const double r = std::sin(theta / 2.0);
    return {r * std::cos(phi), r * std::sin(phi)};
}

std::array<double, 2> lambert_unproject(double x, double y) {
    const double r = std::min(1.0, std::hypot(x, y));
    double phi = std::atan2(y, x);
    if (phi < 0.0) phi += 2.0 * PI;
    return {2.0 * std::asin(r), phi};
}

std::array<std::uint8_t, 4> map_color(const RenderSpec& spec, double v) {
    require_limits(spec);
    const Rgb white{255, 255, 255};
    Rgb end = white;
    double t = 0.0;
    if (v >= 0.0) {
        t = std::min(1.0, v / spec.vmax);
        end = spec.pos_color;
    } else {
        t = std::min(1.0, v / spec.vmin);
        end = spec.neg_color;
    }
    return {lerp_channel(white.r, end.r, t), lerp_channel(white.g, end.g, t),
            lerp_channel(white.b, end.b, t), 255};
}

Image render_dv_disc(const Field& dv, const RenderSpec& spec, double opacity, int size) {
    if (dv.kind != field_kind::dv) throw invalid_input("render_dv_disc: dv field required");
    require_limits(spec);
    const int sz = size > 0 ? size : spec.image_size;
    const auto alpha = static_cast<std::uint8_t>(std::lround(255.0 * std::clamp(opacity, 0.0, 1.0)));
    const double ring_half_width = 1.5 * (2.0 / sz);
    Image img(sz, sz);
    for (int py = 0; py < sz; ++py)
        for (int px = 0; px < sz; ++px) {
            const double x = (px + 0.5) / sz * 2.0 - 1.0;
            const double y = 1.0 - (py + 0.5) / sz * 2.0;
            const double r = std::hypot(x, y);
            if (r > 1.0) continue; // transparent outside the disc
            const auto tp = lambert_unproject(x, y);
            auto c = map_color(spec, sample_dv(dv, tp[0], tp[1]));
            if (spec.equator && std::abs(r - 1.0 / std::sqrt(2.0)) <= ring_half_width)
                c = {255, 255, 255, 255};
            c[3] = alpha;
            set_pixel(img, px, py, c);
        }
    return img;
}

Image render_cv(const Field& cv, const RenderSpec& spec) {
    if (cv.kind != field_kind::cv) throw invalid_input("render_cv: cv field required");
    require_limits(spec);
    const CvGrid& g = *cv.cv_grid;
    const double re_span = g.re_max - g.re_min, im_span = g.im_max - g.im_min;
    const int w = spec.image_size;
    const int h = std::max(2, static_cast<int>(std::lround(w * im_span / re_span)));
    Image img(w, h);
    for (int py = 0; py < h; ++py)
        for (int px = 0; px < w; ++px) {
            const double x = g.re_min + (px + 0.5) / w * re_span;
            const double y = g.im_max - (py + 0.5) / h * im_span;
            set_pixel(img, px, py, map_color(spec, sample_cv(cv, x, y)));
        }
    return img;
}

namespace {

// Disc lattice point i of n_out, snapped to the nearest node index of the
// n_in-node CV axis. Identity when the counts match.
int snap_index(int i, int n_out, int n_in) {
    if (n_out <= 1) return (n_in - 1) / 2;
    return static_cast<int>(std::lround(double(i) * (n_in - 1) / (n_out - 1)));
}

} // namespace

Image render_hybrid(const Field& hybrid, const RenderSpec& spec) {
    if (hybrid.kind != field_kind::hybrid)
        throw invalid_input("render_hybrid: hybrid field required");
    require_limits(spec);
    if (!(spec.transparency_norm > 0.0))
        throw invalid_input("render_hybrid: transparency_norm must be positive");
    if (spec.disc_nx < 1 || spec.disc_ny < 1)
        throw invalid_input("render_hybrid: disc grid must be at least 1x1");
    const CvGrid& g = *hybrid.cv_grid;
    const SphereGrid& s = *hybrid.sphere_grid;
    const int nx = std::min(spec.disc_nx, g.n_re);
    const int ny = std::min(spec.disc_ny, g.n_im);
    const int tile = spec.disc_resolution;
    const auto& be = simd::active_backend();
    Image canvas(nx * tile, ny * tile);
    Field slice;
    slice.kind = field_kind::dv;
    slice.sphere_grid = s;
    slice.values.resize(s.size());
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) {
            const double* src =
                hybrid.slice(snap_index(i, nx, g.n_re), snap_index(j, ny, g.n_im));
            std::copy(src, src + s.size(), slice.values.begin());
            const double peak = be.max_abs(src, s.size());
            const double opacity = std::min(1.0, peak / spec.transparency_norm);
            const Image disc = render_dv_disc(slice, spec, opacity, tile);
            blit(canvas, disc, i * tile, (ny - 1 - j) * tile);
        }
    return canvas;
}

std::vector<std::uint8_t> encode_png(const Image& img) {
    if (img.width < 1 || img.height < 1) throw invalid_input("encode_png: empty image");
    std::vector<std::uint8_t> out;
    const std::uint8_t sig[8] = {137, 80, 78, 71, 13, 10, 26, 10};
    out.insert(out.end(), sig, sig + 8);

    std::vector<std::uint8_t> ihdr;
    push_u32_be(ihdr, static_cast<std::uint32_t>(img.width));
    push_u32_be(ihdr, static_cast<std::uint32_t>(img.height));
    ihdr.push_back(8);  // bit depth
    ihdr.push_back(6);  // RGBA
    ihdr.push_back(0);  // deflate
    ihdr.push_back(0);  // adaptive filtering
    ihdr.push_back(0);  // no interlace
    push_chunk(out, "IHDR", ihdr);

    const std::size_t stride = static_cast<std::size_t>(img.width) * 4;
    std::vector<std::uint8_t> raw;
    raw.reserve((stride + 1) * img.height);
    for (int y = 0; y < img.height; ++y) {
        raw.push_back(0); // filter: none
        const std::uint8_t* row = img.rgba.data() + static_cast<std::size_t>(y) * stride;
        raw.insert(raw.end(), row, row + stride);
    }
    uLongf dlen = compressBound(static_cast<uLong>(raw.size()));
    std::vector<std::uint8_t> idat(dlen);
    if (compress2(idat.data(), &dlen, raw.data(), static_cast<uLong>(raw.size()), 9) != Z_OK)
        throw numeric_failure("encode_png: deflate failed");
    idat.resize(dlen);
    push_chunk(out, "IDAT", idat);
    push_chunk(out, "IEND", {});
    return out;
}

void write_png(const std::string& path, const Image& img) {
    const std::vector<std::uint8_t> bytes = encode_png(img);
    std::ofstream os(path, std::ios::binary);
    if (!os) throw invalid_input("cannot open for writing: " + path);
    os.write(reinterpret_cast<const char*>(bytes.data()),
             static_cast<std::streamsize>(bytes.size()));
    if (!os) throw numeric_failure("write failed: " + path);
}

std::uint32_t content_crc32(const std::vector<std::uint8_t>& bytes) {
    return static_cast<std::uint32_t>(
        ::crc32(0L, bytes.data(), static_cast<uInt>(bytes.size())));
}

std::string base64_encode(const std::uint8_t* data, std::size_t n) {
    static const char* tab = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
    std::string out;
    out.reserve((n + 2) / 3 * 4);
    for (std::size_t i = 0; i < n; i += 3) {
        const std::uint32_t b0 = data[i];
        const std::uint32_t b1 = i + 1 < n ? data[i + 1] : 0;
        const std::uint32_t b2 = i + 2 < n ? data[i + 2] : 0;
        const std::uint32_t triple = (b0 << 16) | (b1 << 8) | b2;
        out.push_back(tab[(triple >> 18) & 63]);
        out.push_back(tab[(triple >> 12) & 63]);
        out.push_back(i + 1 < n ? tab[(triple >> 6) & 63] : '=');
        out.push_back(i + 2 < n ? tab[triple & 63] : '=');
    }
    return out;
}

namespace {

void svg_image_tag(std::ostream& os, const Image& img, double x, double y, double w,
                   double h) {
    const std::vector<std::uint8_t> png = encode_png(img);
    os << "<image x=\"" << x << "\" y=\"" << y << "\" width=\"" << w << "\" height=\"" << h
       << "\" href=\"data:image/png;base64," << base64_encode(png.data(), png.size())
       << "\"/>\n";
}

void svg_frame(std::ostream& os, double x, double y, double w, double h,
               const std::string& x_label, const std::string& y_label,
               const std::string& x_lo, const std::string& x_hi, const std::string& y_lo,
               const std::string& y_hi) {
    os << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << w << "\" height=\"" << h
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    const char* style = " font-family=\"sans-serif\" font-size=\"12\"";
    os << "<text" << style << " x=\"" << x << "\" y=\"" << y + h + 16 << "\">" << x_lo
       << "</text>\n";
    os << "<text" << style << " text-anchor=\"end\" x=\"" << x + w << "\" y=\"" << y + h + 16
       << "\">" << x_hi << "</text>\n";
    os << "<text" << style << " text-anchor=\"middle\" x=\"" << x + w / 2 << "\" y=\""
       << y + h + 32 << "\">" << x_label << "</text>\n";
    os << "<text" << style << " text-anchor=\"end\" x=\"" << x - 4 << "\" y=\"" << y + h
       << "\">" << y_lo << "</text>\n";
    os << "<text" << style << " text-anchor=\"end\" x=\"" << x - 4 << "\" y=\"" << y + 12
       << "\">" << y_hi << "</text>\n";
    os << "<text" << style << " text-anchor=\"middle\" transform=\"translate(" << x - 28 << ","
       << y + h / 2 << ") rotate(-90)\">" << y_label << "</text>\n";
}

} // namespace

void write_svg(const std::string& path, const Field& f, const RenderSpec& spec) {
    require_limits(spec);
    std::ofstream os(path);
    if (!os) throw invalid_input("cannot open for writing: " + path);
    const double margin = 48.0;
    if (f.kind == field_kind::cv) {
        const Image img = render_cv(f, spec);
        const double w = img.width, h = img.height;
        os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w + 2 * margin
           << "\" height=\"" << h + 2 * margin << "\">\n";
        svg_image_tag(os, img, margin, margin, w, h);
        svg_frame(os, margin, margin, w, h, "Re alpha", "Im alpha",
                  fmt_num(f.cv_grid->re_min), fmt_num(f.cv_grid->re_max),
                  fmt_num(f.cv_grid->im_min), fmt_num(f.cv_grid->im_max));
        os << "</svg>\n";
    } else if (f.kind == field_kind::dv) {
        const Image img = render_dv_disc(f, spec);
        const double w = img.width;
        os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w + 2 * margin
           << "\" height=\"" << w + 2 * margin << "\">\n";
        svg_image_tag(os, img, margin, margin, w, w);
        os << "<circle cx=\"" << margin + w / 2 << "\" cy=\"" << margin + w / 2 << "\" r=\""
           << w / 2 << "\" fill=\"none\" stroke=\"black\"/>\n";
        os << "</svg>\n";
    } else {
        const CvGrid& g = *f.cv_grid;
        const int nx = std::min(spec.disc_nx, g.n_re);
        const int ny = std::min(spec.disc_ny, g.n_im);
        const int tile = spec.disc_resolution;
        const double w = double(nx) * tile, h = double(ny) * tile;
        os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w + 2 * margin
           << "\" height=\"" << h + 2 * margin << "\">\n";
        Field slice;
        slice.kind = field_kind::dv;
        slice.sphere_grid = *f.sphere_grid;
        slice.values.resize(f.sphere_grid->size());
        const auto& be = simd::active_backend();
        for (int i = 0; i < nx; ++i)
            for (int j = 0; j < ny; ++j) {
                const double* src =
                    f.slice(snap_index(i, nx, g.n_re), snap_index(j, ny, g.n_im));
                std::copy(src, src + slice.values.size(), slice.values.begin());
                const double peak = be.max_abs(src, slice.values.size());
                const Image disc = render_dv_disc(
                    slice, spec, std::min(1.0, peak / spec.transparency_norm), tile);
                svg_image_tag(os, disc, margin + double(i) * tile,
                              margin + double(ny - 1 - j) * tile, tile, tile);
            }
        svg_frame(os, margin, margin, w, h, "Re alpha", "Im alpha", fmt_num(g.re_min),
                  fmt_num(g.re_max), fmt_num(g.im_min), fmt_num(g.im_max));
        os << "</svg>\n";
    }
    if (!os) throw numeric_failure("write failed: " + path);
}

std::string render_spec_to_json(const RenderSpec& spec) {
    nlohmann::json j;
    j["neg_color"] = {spec.neg_color.r, spec.neg_color.g, spec.neg_color.b};
    j["pos_color"] = {spec.pos_color.r, spec.pos_color.g, spec.pos_color.b};
    j["vmin"] = spec.vmin;
    j["vmax"] = spec.vmax;
    j["disc_grid"] = {spec.disc_nx, spec.disc_ny};
    j["disc_resolution"] = spec.disc_resolution;
    j["transparency_norm"] = spec.transparency_norm;
    j["image_size"] = spec.image_size;
    j["equator"] = spec.equator;
    return j.dump();
}

RenderSpec render_spec_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_failure(std::string("render spec: ") + e.what(), e.byte);
    }
    RenderSpec s;
    try {
        if (j.contains("neg_color"))
            s.neg_color = {j["neg_color"][0].get<std::uint8_t>(),
                           j["neg_color"][1].get<std::uint8_t>(),
                           j["neg_color"][2].get<std::uint8_t>()};
        if (j.contains("pos_color"))
            s.pos_color = {j["pos_color"][0].get<std::uint8_t>(),
                           j["pos_color"][1].get<std::uint8_t>(),
                           j["pos_color"][2].get<std::uint8_t>()};
        s.vmin = j.value("vmin", s.vmin);
        s.vmax = j.value("vmax", s.vmax);
        if (j.contains("disc_grid")) {
            s.disc_nx = j["disc_grid"][0].get<int>();
            s.disc_ny = j["disc_grid"][1].get<int>();
        }
        s.disc_resolution = j.value("disc_resolution", s.disc_resolution);
        s.transparency_norm = j.value("transparency_norm", s.transparency_norm);
        s.image_size = j.value("image_size", s.image_size);
        s.equator = j.value("equator", s.equator);
    } catch (const nlohmann::json::exception& e) {
        throw invalid_input(std::string("render spec: ") + e.what());
    }
    return s;
}

} // namespace hywig
