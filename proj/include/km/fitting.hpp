#pragma once

#include <cstddef>
#include <vector>

namespace km {

struct SinusoidFit {
    std::size_t ell = 0;
    double r = 0.0;        // amplitude >= 0
    double psi = 0.0;      // phase in (-pi, pi]; 0 when r = 0
    double theta = 0.0;    // offset, reported in (-pi, pi]
    double residual = 0.0; // rms misfit
};

/// Linear least squares of u_i against {cos 2 pi ell x_i, sin 2 pi ell x_i, 1}
/// on the midpoint grid x_i = (2i-1)/(2n). r sin(2 pi ell x + psi) + theta
/// reproduces the fitted projection: r = sqrt(C^2+S^2), psi = atan2(C, S).
SinusoidFit fit_sinusoid(const std::vector<double>& u, std::size_t ell);

/// Fit over ell in [1, ell_max], minimal residual wins; ties go to smaller ell.
SinusoidFit select_mode(const std::vector<double>& u, std::size_t ell_max = 32);

} // namespace km
