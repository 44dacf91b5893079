#include "rsheat/boundary.hpp"

#include <cmath>

#include "rsheat/errors.hpp"
#include "rsheat/specfun.hpp"

namespace rsheat {

BoundaryParam::BoundaryParam(double theta) : theta_(theta), kappa_(0.0), friedrichs_(false) {
    if (!std::isfinite(theta) || theta < 0.0 || theta >= std::numbers::pi) {
        throw DomainError("boundary angle must lie in [0, pi)");
    }
    friedrichs_ = theta == std::numbers::pi / 2;
    if (!friedrichs_) kappa_ = specfun::kGammaMinusLog2 + std::tan(theta);
}

double BoundaryParam::kappa() const {
    if (friedrichs_) throw DomainError("kappa is undefined for the Friedrichs extension");
    return kappa_;
}

double BoundaryParam::pole() const { return std::exp(-2.0 * kappa()); }

}  // namespace rsheat
