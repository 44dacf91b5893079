#pragma once

#include <vector>

namespace rsheat::detail {

struct LeastSquaresSolution {
    std::vector<double> coefficients;
    std::vector<double> residuals;          // data - model, per row
    std::vector<double> standard_errors;    // sqrt(diag(sigma^2 (A^T A)^{-1}))
};

/// Householder QR least squares on a row-major design (rows x cols).
/// Throws FitError when a column is numerically dependent on the others.
LeastSquaresSolution least_squares(const std::vector<std::vector<double>>& design, const std::vector<double>& rhs);

}  // namespace rsheat::detail
