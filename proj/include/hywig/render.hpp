#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hywig/fields.hpp"

// Visualization: Lambert equal-area qubit discs, CV heatmaps, and the hybrid
// grid-of-discs with per-disc transparency. Rendering is a pure function of
// (field, spec); PNG encoding uses fixed settings and carries no timestamps,
// so identical inputs give byte-identical files.

namespace hywig {

struct Rgb {
    std::uint8_t r, g, b;
};

struct RenderSpec {
    // diverging colormap, white at zero
    Rgb neg_color{59, 76, 192};
    Rgb pos_color{180, 4, 38};
    double vmin = -2.0, vmax = 2.0;
    int disc_nx = 13, disc_ny = 13; // disc grid across the CV window
    int disc_resolution = 48;       // pixels per disc tile
    double transparency_norm = 2.7320508075688772; // 1 + sqrt(3)
    int image_size = 600;           // edge pixels for heatmaps / single discs
    bool equator = false;           // overdraw the equator circle in white
};

// Fill vmin/vmax with the conventional limits for the field: +-2 for CV,
// +-(1+sqrt(3))/2 for qubit densities, +-sqrt(3) for traceless qubit
// operators, +-(1+sqrt(3)) for hybrid fields.
void apply_auto_limits(RenderSpec& spec, const Field& f);

// Unit-disc coordinates: r = sin(theta/2), angle phi. North pole at the
// center, equator at r = 1/sqrt(2), south pole on the perimeter.
std::array<double, 2> lambert_project(double theta, double phi);
std::array<double, 2> lambert_unproject(double x, double y); // {theta, phi}

// rgba with a = 255; out-of-range values saturate at the limits
std::array<std::uint8_t, 4> map_color(const RenderSpec& spec, double v);

struct Image {
    int width = 0, height = 0;
    std::vector<std::uint8_t> rgba; // row-major, 4 bytes per pixel

    Image() = default;
    Image(int w, int h) : width(w), height(h), rgba(static_cast<std::size_t>(w) * h * 4) {}
};

// Inverse-projection sampling with bilinear interpolation on the sphere
// grid; pixels outside the unit disc are transparent.
Image render_dv_disc(const Field& dv, const RenderSpec& spec, double opacity = 1.0,
                     int size = 0);

Image render_cv(const Field& cv, const RenderSpec& spec);

// One Lambert disc per CV node of the (already disc-center-resolution)
// hybrid field; per-disc opacity = min(1, max|W| / transparency_norm).
Image render_hybrid(const Field& hybrid, const RenderSpec& spec);

std::vector<std::uint8_t> encode_png(const Image& img);
void write_png(const std::string& path, const Image& img);
std::uint32_t content_crc32(const std::vector<std::uint8_t>& bytes);

// Raster tiles embedded as base64 PNG inside a vector frame with axis labels.
void write_svg(const std::string& path, const Field& f, const RenderSpec& spec);

std::string base64_encode(const std::uint8_t* data, std::size_t n);

std::string render_spec_to_json(const RenderSpec& spec);
RenderSpec render_spec_from_json(const std::string& text);

} // namespace hywig
