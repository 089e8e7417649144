#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "hywig/render.hpp"
#include "hywig/states.hpp"
#include "hywig/wigner.hpp"

using namespace hywig;

namespace {
const double PI = std::acos(-1.0);
constexpr double SQRT3 = 1.7320508075688772;

std::string slurp_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    return std::string((std::istreambuf_iterator<char>(in)), {});
}
} // namespace

TEST_CASE("lambert projection geometry") {
    const auto pole = lambert_project(0.0, 1.2);
    CHECK(std::hypot(pole[0], pole[1]) < 1e-15);

    const auto equator = lambert_project(PI / 2.0, 0.3);
    CHECK(std::hypot(equator[0], equator[1]) ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-13));

    const auto south = lambert_project(PI, 2.0);
    CHECK(std::hypot(south[0], south[1]) == doctest::Approx(1.0).epsilon(1e-13));

    for (double theta : {0.3, 1.1, 2.6})
        for (double phi : {0.1, 2.0, 4.4}) {
            const auto p = lambert_project(theta, phi);
            const auto back = lambert_unproject(p[0], p[1]);
            CHECK(back[0] == doctest::Approx(theta).epsilon(1e-12));
            CHECK(back[1] == doctest::Approx(phi).epsilon(1e-12));
        }
}

TEST_CASE("lambert projection preserves area fractions") {
    // uniform samples on the unit disc must land in each polar cap with
    // probability equal to its solid-angle fraction
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const int n = 1000000;
    int cap60 = 0, hemisphere = 0;
    for (int k = 0; k < n; ++k) {
        const double r = std::sqrt(u(rng));
        const double ang = 2.0 * PI * u(rng);
        const auto tp = lambert_unproject(r * std::cos(ang), r * std::sin(ang));
        if (tp[0] < PI / 3.0) ++cap60;
        if (tp[0] < PI / 2.0) ++hemisphere;
    }
    CHECK(std::abs(double(cap60) / n - 0.25) < 1e-3);
    CHECK(std::abs(double(hemisphere) / n - 0.5) < 1e-3);
}

TEST_CASE("diverging colormap pins white at zero and saturates at the limits") {
    RenderSpec spec;
    spec.vmin = -2.0;
    spec.vmax = 2.0;

    const auto white = map_color(spec, 0.0);
    CHECK(white[0] == 255);
    CHECK(white[1] == 255);
    CHECK(white[2] == 255);
    CHECK(white[3] == 255);

    const auto hot = map_color(spec, 2.0);
    CHECK(hot[0] == spec.pos_color.r);
    CHECK(hot[1] == spec.pos_color.g);
    CHECK(hot[2] == spec.pos_color.b);
    // past the limit: clamp, never wrap
    CHECK(map_color(spec, 57.0) == hot);
    CHECK(map_color(spec, -9.0) == map_color(spec, -2.0));

    // negating the field and swapping the endpoint colors is a byte-exact mirror
    RenderSpec mirror = spec;
    std::swap(mirror.neg_color, mirror.pos_color);
    for (double v : {0.13, 0.77, 1.4, 1.99, 2.5})
        CHECK(map_color(spec, v) == map_color(mirror, -v));

    RenderSpec bad = spec;
    bad.vmin = 0.5;
    CHECK_THROWS_AS(map_color(bad, 0.1), invalid_input);
}

TEST_CASE("auto limits follow the field kind") {
    RenderSpec spec;
    const Field cv = evaluate_cv(density(fock(0, 6)), CvGrid::square(1.0, 5));
    apply_auto_limits(spec, cv);
    CHECK(spec.vmax == 2.0);

    const SphereGrid sph(sphere_kind::gauss_legendre, 6, 8);
    apply_auto_limits(spec, evaluate_dv(density(qubit(1.0, 0.0)), sph));
    CHECK(spec.vmax == doctest::Approx((1.0 + SQRT3) / 2.0));

    apply_auto_limits(spec, evaluate_dv(pauli(axis::y), sph));
    CHECK(spec.vmax == doctest::Approx(SQRT3));

    const Field hyb = evaluate_hybrid(density(bell_fock(1, 4)), CvGrid::square(1.0, 3), sph);
    apply_auto_limits(spec, hyb);
    CHECK(spec.vmax == doctest::Approx(1.0 + SQRT3));
    CHECK(spec.vmin == doctest::Approx(-(1.0 + SQRT3)));
}

TEST_CASE("disc rendering: transparency outside, equator overlay, saturated pole") {
    const SphereGrid sph(sphere_kind::uniform_inclusive, 33, 32);
    const Field f = evaluate_dv(density(qubit(1.0, 0.0)), sph);
    RenderSpec spec;
    apply_auto_limits(spec, f);

    const int sz = 64;
    const Image img = render_dv_disc(f, spec, 1.0, sz);
    CHECK(img.width == sz);
    const auto px = [&](int x, int y, int c) {
        return img.rgba[(static_cast<std::size_t>(y) * sz + x) * 4 + c];
    };
    CHECK(px(0, 0, 3) == 0);      // corner: outside the disc
    CHECK(px(31, 31, 3) == 255);  // center: opaque
    // the pole sits at the colormap limit
    CHECK(std::abs(int(px(31, 31, 0)) - int(spec.pos_color.r)) <= 2);

    RenderSpec ring = spec;
    ring.equator = true;
    const Image img2 = render_dv_disc(f, ring, 1.0, sz);
    const auto px2 = [&](int x, int y, int c) {
        return img2.rgba[(static_cast<std::size_t>(y) * sz + x) * 4 + c];
    };
    CHECK(px2(54, 31, 0) == 255);
    CHECK(px2(54, 31, 1) == 255);
    CHECK(px2(54, 31, 2) == 255);
    CHECK(img2.rgba != img.rgba);

    const Image faint = render_dv_disc(f, spec, 0.25, sz);
    CHECK(faint.rgba[(31ul * sz + 31) * 4 + 3] == 64); // round(255/4)
}

TEST_CASE("negating a field mirrors the rendering byte for byte") {
    const SphereGrid sph(sphere_kind::gauss_legendre, 12, 16);
    Field f = evaluate_dv(density(qubit(0.8, cd(0.2, 0.55))), sph);
    RenderSpec spec;
    apply_auto_limits(spec, f);
    const auto bytes = encode_png(render_dv_disc(f, spec, 1.0, 80));

    Field neg = f;
    for (double& v : neg.values) v = -v;
    RenderSpec mirror = spec;
    std::swap(mirror.neg_color, mirror.pos_color);
    const auto mirrored = encode_png(render_dv_disc(neg, mirror, 1.0, 80));
    CHECK(bytes == mirrored);
}

TEST_CASE("png encoding is deterministic and carries the right header") {
    const Field f = evaluate_cv(density(fock(1, 8)), CvGrid::square(2.0, 17));
    RenderSpec spec;
    apply_auto_limits(spec, f);
    spec.image_size = 120;
    const Image img = render_cv(f, spec);
    CHECK(img.width == 120);

    const auto a = encode_png(img);
    const auto b = encode_png(img);
    CHECK(a == b);

    const std::uint8_t sig[8] = {137, 80, 78, 71, 13, 10, 26, 10};
    for (int i = 0; i < 8; ++i) CHECK(a[i] == sig[i]);
    const auto be32 = [&](int off) {
        return (std::uint32_t(a[off]) << 24) | (std::uint32_t(a[off + 1]) << 16) |
               (std::uint32_t(a[off + 2]) << 8) | std::uint32_t(a[off + 3]);
    };
    CHECK(be32(16) == 120); // IHDR width
    CHECK(be32(20) == 120); // IHDR height
}

TEST_CASE("hybrid rendering tiles the disc lattice") {
    const Field h = evaluate_hybrid(density(bell_fock(1, 4)), CvGrid::square(2.0, 9),
                                    SphereGrid(sphere_kind::gauss_legendre, 6, 8));
    RenderSpec spec;
    apply_auto_limits(spec, h);
    spec.disc_nx = 3;
    spec.disc_ny = 5;
    spec.disc_resolution = 16;
    const Image img = render_hybrid(h, spec);
    CHECK(img.width == 3 * 16);
    CHECK(img.height == 5 * 16);
}

TEST_CASE("crc and base64 reference vectors") {
    const std::string s = "123456789";
    CHECK(content_crc32(std::vector<std::uint8_t>(s.begin(), s.end())) == 0xCBF43926u);

    const std::uint8_t man[] = {'M', 'a', 'n'};
    CHECK(base64_encode(man, 3) == "TWFu");
    CHECK(base64_encode(man, 2) == "TWE=");
    CHECK(base64_encode(man, 1) == "TQ==");
    CHECK(base64_encode(man, 0).empty());
}

TEST_CASE("svg output embeds the raster and the frame") {
    const Field f = evaluate_cv(density(fock(0, 6)), CvGrid::square(1.5, 9));
    RenderSpec spec;
    apply_auto_limits(spec, f);
    spec.image_size = 40;
    const std::string path = "test_out.svg";
    write_svg(path, f, spec);
    const std::string text = slurp_file(path);
    CHECK(text.find("<svg") != std::string::npos);
    CHECK(text.find("data:image/png;base64,") != std::string::npos);
    CHECK(text.find("Re alpha") != std::string::npos);
    std::filesystem::remove(path);
}

TEST_CASE("render spec round-trips through JSON") {
    RenderSpec spec;
    spec.vmin = -1.25;
    spec.vmax = 3.5;
    spec.disc_nx = 7;
    spec.disc_ny = 9;
    spec.equator = true;
    spec.neg_color = Rgb{1, 2, 3};
    const RenderSpec back = render_spec_from_json(render_spec_to_json(spec));
    CHECK(back.vmin == spec.vmin);
    CHECK(back.vmax == spec.vmax);
    CHECK(back.disc_nx == 7);
    CHECK(back.disc_ny == 9);
    CHECK(back.equator);
    CHECK(back.neg_color.r == 1);
    CHECK(back.neg_color.g == 2);
    CHECK(back.neg_color.b == 3);
}
