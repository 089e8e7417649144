#pragma once

#include <string>
#include <vector>

#include "hywig/types.hpp"

// Phase-space discretizations carrying quadrature weights. Measures are
// fixed as d^2alpha / pi on the plane and sin(theta) dtheta dphi / (2 pi) on
// the sphere: the unique normalizations under which integrating a Wigner
// field recovers the operator trace for both kernels.

namespace hywig {

struct CvGrid {
    double re_min = -6.0, re_max = 6.0;
    double im_min = -6.0, im_max = 6.0;
    int n_re = 201, n_im = 201;

    std::vector<double> re, im; // node coordinates
    // trapezoid weights including the 1/pi measure factor, flattened
    // (i_re * n_im + i_im); sums to area/pi
    std::vector<double> weights;

    CvGrid() { init(); }
    CvGrid(double re_lo, double re_hi, double im_lo, double im_hi, int nr, int ni);
    static CvGrid square(double half_width, int n);

    cd node(int i_re, int i_im) const { return {re[i_re], im[i_im]}; }
    std::size_t size() const { return re.size() * im.size(); }

private:
    void init();
};

enum class sphere_kind {
    gauss_legendre,   // GL nodes in cos(theta); exact for high-degree fields
    uniform_midpoint, // midpoint rule in cos(theta)
    uniform_inclusive // theta uniform including both poles; trapezoid in cos
};

std::string to_string(sphere_kind k);
sphere_kind sphere_kind_from_string(const std::string& s);

struct SphereGrid {
    sphere_kind kind = sphere_kind::gauss_legendre;
    int n_theta = 64, n_phi = 128;

    std::vector<double> theta;   // ascending in theta
    std::vector<double> theta_w; // weights in the cos(theta) variable, sum 2
    std::vector<double> phi;     // uniform, phi_k = 2 pi k / n_phi
    double phi_w = 0.0;          // 1 / n_phi

    // flattened (i_theta * n_phi + i_phi), sums to 2
    std::vector<double> weights;

    SphereGrid() { init(); }
    SphereGrid(sphere_kind k, int nt, int np);

    std::size_t size() const { return theta.size() * phi.size(); }

private:
    void init();
};

// Gauss-Legendre nodes/weights on [-1, 1], ascending nodes.
void gauss_legendre_rule(int n, std::vector<double>& nodes, std::vector<double>& weights);

} // namespace hywig
