#pragma once

#include <functional>

namespace rsheat::quad {

enum class TailPolicy {
    fixed_upper_limit,  ///< integrate directly in y up to a cutoff
    exp_substitution,   ///< integrate in u = log y
};

struct QuadSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    int max_subdivisions = 2000;
    TailPolicy tail_cutoff_policy = TailPolicy::exp_substitution;
    /// Number of equal pieces the interval is split into before adaptation.
    int initial_intervals = 1;

    /// Throws DomainError unless tolerances are positive and counts >= 1.
    void validate() const;
};

struct QuadResult {
    double value = 0.0;
    double est_error = 0.0;
    long evaluations = 0;

    QuadResult& operator+=(const QuadResult& other) {
        value += other.value;
        est_error += other.est_error;
        evaluations += other.evaluations;
        return *this;
    }
};

inline QuadResult operator+(QuadResult a, const QuadResult& b) { return a += b; }

/// Integrable endpoint singularities. A flagged endpoint is smoothed by a
/// polynomial change of variables before adaptation.
struct EndpointFlags {
    bool left_singular = false;
    bool right_singular = false;
};

using Integrand = std::function<double(double)>;

/// Adaptive 15-point Gauss-Kronrod integration of f over [a, b].
/// Throws ConvergenceError (carrying the partial result) when the
/// subdivision budget runs out.
QuadResult integrate(const Integrand& f, double a, double b, const QuadSpec& spec = {},
                     EndpointFlags flags = {});

/// Integral of f over [a, inf) through x = a + (1 - s)/s.
QuadResult integrate_to_infinity(const Integrand& f, double a, const QuadSpec& spec = {});

/// int_1^inf e^{-t y} g(y) / ((log y + kappa2)^2 + pi^2) dy for t > 0 and
/// |g| <= g_bound on [1, inf). Truncated where t y - log y reaches 46; the
/// truncation bound is folded into est_error.
QuadResult integrate_log_tail(const Integrand& g, double t, double kappa2, const QuadSpec& spec = {},
                              double g_bound = 1.0);

/// Upper cutoff u_max (in u = log y) used by integrate_log_tail.
double log_tail_cutoff(double t);

/// int_U^inf du / ((u + kappa2)^2 + pi^2), in closed form.
double lorentz_tail(double u_lower, double kappa2);

}  // namespace rsheat::quad
