#pragma once

#include "rsheat/boundary.hpp"
#include "rsheat/quadrature.hpp"

// The convolution kernel K_theta, the inverse Laplace transform of
// (log sqrt(zeta) + kappa)^{-1}, split as
//
//   K_theta(t) = M(t) + K1(t) + R(t)
//
//   M(t)  = 2 int_1^inf e^{-ty} ((log y + 2 kappa)^2 + pi^2)^{-1} dy
//   K1(t) = the smooth remainder of the imaginary-axis integral, assembled
//           from the segment i[-1, 1] and the two unit quarter-circle arcs
//   R(t)  = 2 zeta0 exp(zeta0 t), zeta0 = e^{-2 kappa}, the residue at the
//           real pole of the transform (present for every finite kappa).

namespace rsheat::ktheta {

struct KernelOptions {
    bool include_residue = true;
    quad::QuadSpec contour_spec{};
    quad::QuadSpec tail_spec{};
};

struct KThetaValue {
    double main_part = 0.0;
    double smooth_part = 0.0;
    double residue_part = 0.0;
    double total = 0.0;
    double est_error = 0.0;
};

/// M(t) for t > 0. Friedrichs parameters raise DomainError.
quad::QuadResult m_main_result(double t, const BoundaryParam& bp, const quad::QuadSpec& spec = {});
double m_main(double t, const BoundaryParam& bp, const quad::QuadSpec& spec = {});

/// K1(t) for t >= 0 from the contour pieces, conjugate pairs folded into real parts.
quad::QuadResult k1_smooth_result(double t, const BoundaryParam& bp, const KernelOptions& opts = {});
double k1_smooth(double t, const BoundaryParam& bp, const KernelOptions& opts = {});

/// The same K1 evaluated with every contour piece integrated separately as a
/// complex number; `imag` measures how well the pieces cancel.
struct ComplexValue {
    double real = 0.0;
    double imag = 0.0;
};
ComplexValue k1_unpaired(double t, const BoundaryParam& bp, const quad::QuadSpec& spec = {});

/// K1 from the branch cut on (0, 1]: 2 int_0^1 e^{-ty} ((log y + 2 kappa)^2 + pi^2)^{-1} dy.
double k1_branch_cut(double t, const BoundaryParam& bp, const quad::QuadSpec& spec = {});

/// R(t) when opts.include_residue, otherwise 0.
double residue_term(double t, const BoundaryParam& bp, const KernelOptions& opts = {});

KThetaValue k_theta(double t, const BoundaryParam& bp, const KernelOptions& opts = {});

struct LaplaceParts {
    double main_part = 0.0;
    double smooth_part = 0.0;
    double residue_part = 0.0;
    double total = 0.0;
    double est_error = 0.0;
};

/// Numerical int_0^inf e^{-zeta t} K_theta(t) dt. The residue part is taken
/// in closed form; requires zeta > zeta0 when the residue is included.
LaplaceParts laplace_of_k_parts(double zeta, const BoundaryParam& bp, const KernelOptions& opts = {});
double laplace_of_k(double zeta, const BoundaryParam& bp, const KernelOptions& opts = {});

/// (log sqrt(zeta) + kappa)^{-1} for real zeta > 0, zeta != zeta0.
double laplace_target(double zeta, const BoundaryParam& bp);

/// |(1/2 pi) int_0^delta e^{t(x + iR)} (log sqrt(x + iR) + kappa)^{-1} dx|, the
/// horizontal segment closing the Bromwich line Re zeta = delta at height R.
double bromwich_horizontal_segment(double t, double height, double delta, const BoundaryParam& bp,
                                   const quad::QuadSpec& spec = {});

}  // namespace rsheat::ktheta
