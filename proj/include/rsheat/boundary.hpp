#pragma once

#include <numbers>

namespace rsheat {

/// Self-adjoint boundary condition at the singular end x = 0:
///   cos(theta) c_+(f) + sin(theta) c_-(f) = 0,   theta in [0, pi),
/// where f ~ c_+ sqrt(x) + c_- sqrt(x) log x. theta = pi/2 is the
/// Friedrichs extension; every other theta carries the finite constant
///   kappa = gamma - log 2 + tan(theta).
class BoundaryParam {
public:
    /// Throws DomainError unless theta is finite and in [0, pi).
    explicit BoundaryParam(double theta);

    static BoundaryParam friedrichs() { return BoundaryParam(std::numbers::pi / 2); }

    double theta() const noexcept { return theta_; }
    bool is_friedrichs() const noexcept { return friedrichs_; }

    /// kappa_theta; throws DomainError for the Friedrichs extension.
    double kappa() const;
    /// Location e^{-2 kappa} of the real pole of (log sqrt(zeta) + kappa)^{-1}.
    double pole() const;

private:
    double theta_;
    double kappa_;
    bool friedrichs_;
};

}  // namespace rsheat
