#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include "qtiming/grid.hpp"

namespace qtiming {

/// A complex temporal mode amplitude sampled on a uniform time grid.
struct SampledMode {
    TimeGrid grid;
    std::vector<std::complex<double>> amplitude;
    std::string label;

    std::size_t size() const { return amplitude.size(); }
};

/// <a|b> = sum_k conj(a_k) b_k * t_step. Grids must match.
std::complex<double> inner_product(const SampledMode& a, const SampledMode& b);

/// sqrt(sum |a_k|^2 * t_step)
double grid_norm(const SampledMode& m);

/// Divide by the grid norm in place.
void normalize(SampledMode& m);

/// CSV dump: header `t_seconds,re_amplitude,im_amplitude`, 17 significant digits.
void write_mode_csv(const SampledMode& m, std::ostream& out);

}  // namespace qtiming
