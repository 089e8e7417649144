#include "hywig/grids.hpp"

#include <cmath>

namespace hywig {

namespace {

const double PI = std::acos(-1.0);

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    return v;
}

std::vector<double> trapezoid_weights(double lo, double hi, int n) {
    const double h = (hi - lo) / (n - 1);
    std::vector<double> w(n, h);
    w.front() = w.back() = h / 2.0;
    return w;
}

} // namespace

CvGrid::CvGrid(double re_lo, double re_hi, double im_lo, double im_hi, int nr, int ni)
    : re_min(re_lo), re_max(re_hi), im_min(im_lo), im_max(im_hi), n_re(nr), n_im(ni) {
    init();
}

CvGrid CvGrid::square(double half_width, int n) {
    return {-half_width, half_width, -half_width, half_width, n, n};
}

void CvGrid::init() {
    if (n_re < 2 || n_im < 2) throw invalid_input("CvGrid: need at least 2 points per axis");
    if (!(re_min < re_max) || !(im_min < im_max))
        throw invalid_input("CvGrid: empty range");
    re = linspace(re_min, re_max, n_re);
    im = linspace(im_min, im_max, n_im);
    const auto wr = trapezoid_weights(re_min, re_max, n_re);
    const auto wi = trapezoid_weights(im_min, im_max, n_im);
    weights.resize(static_cast<std::size_t>(n_re) * n_im);
    for (int i = 0; i < n_re; ++i)
        for (int j = 0; j < n_im; ++j)
            weights[static_cast<std::size_t>(i) * n_im + j] = wr[i] * wi[j] / PI;
}

void gauss_legendre_rule(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) throw invalid_input("gauss_legendre_rule: n must be >= 1");
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev-based initial guess, then Newton on P_n
        double z = std::cos(PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
    return;
}

std::string to_string(sphere_kind k) {
    switch (k) {
    case sphere_kind::gauss_legendre: return "gauss_legendre";
    case sphere_kind::uniform_midpoint: return "uniform_midpoint";
    case sphere_kind::uniform_inclusive: return "uniform_inclusive";
    }
    return "gauss_legendre";
}

sphere_kind sphere_kind_from_string(const std::string& s) {
    if (s == "gauss_legendre") return sphere_kind::gauss_legendre;
    if (s == "uniform_midpoint") return sphere_kind::uniform_midpoint;
    if (s == "uniform_inclusive") return sphere_kind::uniform_inclusive;
    throw invalid_input("unknown sphere grid kind: " + s);
}

SphereGrid::SphereGrid(sphere_kind k, int nt, int np) : kind(k), n_theta(nt), n_phi(np) {
    init();
}

void SphereGrid::init() {
    if (n_theta < 2 || n_phi < 1)
        throw invalid_input("SphereGrid: need n_theta >= 2, n_phi >= 1");
    theta.assign(n_theta, 0.0);
    theta_w.assign(n_theta, 0.0);
    switch (kind) {
    case sphere_kind::gauss_legendre: {
        std::vector<double> u, w;
        gauss_legendre_rule(n_theta, u, w);
        // ascending u -> descending theta; store theta ascending
        for (int i = 0; i < n_theta; ++i) {
            theta[i] = std::acos(u[n_theta - 1 - i]);
            theta_w[i] = w[n_theta - 1 - i];
        }
        break;
    }
    case sphere_kind::uniform_midpoint: {
        const double h = 2.0 / n_theta;
        for (int i = 0; i < n_theta; ++i) {
            const double u = 1.0 - (i + 0.5) * h; // descending from just below the pole
            theta[i] = std::acos(u);
            theta_w[i] = h;
        }
        break;
    }
    case sphere_kind::uniform_inclusive: {
        // includes theta = 0 and theta = pi; trapezoid weights in cos(theta)
        std::vector<double> u(n_theta);
        for (int i = 0; i < n_theta; ++i) {
            theta[i] = PI * i / (n_theta - 1);
            u[i] = std::cos(theta[i]);
        }
        for (int i = 0; i < n_theta; ++i) {
            const double hi = i == 0 ? u[0] : u[i - 1];
            const double lo = i == n_theta - 1 ? u[n_theta - 1] : u[i + 1];
            theta_w[i] = (hi - lo) / 2.0;
        }
        break;
    }
    }
    phi.assign(n_phi, 0.0);
    for (int k2 = 0; k2 < n_phi; ++k2) phi[k2] = 2.0 * PI * k2 / n_phi;
    phi_w = 1.0 / n_phi;
    weights.resize(static_cast<std::size_t>(n_theta) * n_phi);
    for (int i = 0; i < n_theta; ++i)
        for (int j = 0; j < n_phi; ++j)
            weights[static_cast<std::size_t>(i) * n_phi + j] = theta_w[i] * phi_w;
}

} // namespace hywig
