#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hywig/grids.hpp"

// Evaluated Wigner fields plus their interchange format. A dump is an 8-byte
// little-endian header length, a JSON header (grids, state label, expected
// trace), then the values as little-endian float64, row-major in the index
// order below.

namespace hywig {

enum class field_kind { cv, dv, hybrid };

std::string to_string(field_kind k);
field_kind field_kind_from_string(const std::string& s);

struct Field {
    field_kind kind = field_kind::cv;
    std::optional<CvGrid> cv_grid;         // absent for dv fields
    std::optional<SphereGrid> sphere_grid; // absent for cv fields
    // cv: (i_re, i_im); dv: (i_theta, i_phi);
    // hybrid: (i_re, i_im, i_theta, i_phi)
    std::vector<double> values;
    std::string state_label;
    double trace_target = 1.0;

    std::size_t expected_size() const;

    double& at_cv(int i, int j);
    double at_cv(int i, int j) const;
    double& at_dv(int i, int j);
    double at_dv(int i, int j) const;
    double& at_hybrid(int i, int j, int k, int l);
    double at_hybrid(int i, int j, int k, int l) const;

    // contiguous (theta, phi) slice of a hybrid field at one alpha node
    double* slice(int i_re, int i_im);
    const double* slice(int i_re, int i_im) const;
};

void write_field(const std::string& path, const Field& f);
Field read_field(const std::string& path);

// 2-D fields only; columns are the two axes plus the value.
void write_csv(const std::string& path, const Field& f);

} // namespace hywig
