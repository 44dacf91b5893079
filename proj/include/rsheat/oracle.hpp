#pragma once

#include <ostream>
#include <vector>

#include "rsheat/boundary.hpp"

// Spectrum of the operator on (0, 1) with the boundary condition theta at
// x = 0 and Dirichlet at x = 1. Eigenfunctions are sqrt(x) times a cylinder
// function of order 0, so the eigenvalues are roots of explicit secular
// functions of Bessel functions.

namespace rsheat::oracle {

/// (log lambda + 2 kappa) J0(sqrt lambda) - pi Y0(sqrt lambda); J0(sqrt lambda)
/// for the Friedrichs extension. Tends to 2 tan(theta) as lambda -> 0.
double secular_positive(double lambda, const BoundaryParam& bp);
double secular_positive_derivative(double lambda, const BoundaryParam& bp);

/// (log mu + kappa) I0(mu) + K0(mu), for lambda = -mu^2. Tends to tan(theta)
/// as mu -> 0. The Friedrichs extension has no negative eigenvalue and
/// raises DomainError.
double secular_negative(double mu, const BoundaryParam& bp);
double secular_negative_derivative(double mu, const BoundaryParam& bp);
/// secular_negative(mu) e^{-mu}, finite for large mu.
double secular_negative_scaled(double mu, const BoundaryParam& bp);

struct Spectrum {
    double theta = 0.0;
    /// Strictly increasing.
    std::vector<double> eigenvalues;
    /// |secular function| at each eigenvalue (scaled form for negative ones).
    std::vector<double> residuals;
    double lambda_max = 0.0;
    int negative_count = 0;

    /// Weyl-type bound on sum_{lambda > lambda_max} e^{-t lambda}.
    double tail_bound(double t) const;
};

struct ScanOptions {
    /// Sample points per interlacing cell.
    int points_per_cell = 200;
    /// Resolution doublings tried before giving up on completeness.
    int max_attempts = 4;
    /// Compare against a scan this many times finer.
    int refinement_factor = 10;
};

/// All eigenvalues <= lambda_max. Requires lambda_max >= 100 and tol <= 1e-8.
/// Throws CompletenessError if a finer scan keeps finding extra roots.
Spectrum eigenvalues(const BoundaryParam& bp, double lambda_max = 4000.0, double tol = 1e-12,
                     const ScanOptions& scan = {});

/// Number of sign changes of the secular function found on (0, lambda_max]
/// with the given resolution. Used to check completeness.
int count_positive_roots(const BoundaryParam& bp, double lambda_max, int points_per_cell);

/// Root of secular_negative, if any.
struct BoundState {
    bool exists = false;
    double mu = 0.0;
    /// |K0(mu) / d/dmu[(log mu + kappa) I0(mu)]|, the size of the shift of mu
    /// away from the half-line value e^{-kappa}.
    double perturbation_bound = 0.0;
};
BoundState bound_state(const BoundaryParam& bp, double tol = 1e-12);

struct OracleTrace {
    double value = 0.0;
    double tail_error = 0.0;
};

/// sum_n e^{-t lambda_n} with the tail bound as error. Requires
/// t lambda_max >= 30, else InsufficientSpectrumError.
OracleTrace oracle_trace(double t, const Spectrum& spectrum);

/// CSV with header index,lambda,secular_residual.
void write_csv(std::ostream& out, const Spectrum& spectrum);

}  // namespace rsheat::oracle
