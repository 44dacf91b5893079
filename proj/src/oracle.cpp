#include "rsheat/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>

#include "rsheat/errors.hpp"
#include "rsheat/specfun.hpp"

namespace rsheat::oracle {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMuMin = 1e-4;
constexpr double kLambdaMin = 1e-8;
constexpr int kMuPoints = 400;

using Fn = std::function<double(double)>;

/// Safeguarded Newton on a sign-changing bracket [a, b].
double refine_root(const Fn& f, const Fn& df, double a, double b, double tol) {
    double fa = f(a);
    const double fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    double x = 0.5 * (a + b);
    for (int it = 0; it < 200; ++it) {
        const double fx = f(x);
        if (fx == 0.0) return x;
        if ((fx < 0.0) == (fa < 0.0)) {
            a = x;
            fa = fx;
        } else {
            b = x;
        }
        const double d = df(x);
        double next = d != 0.0 ? x - fx / d : a;
        const bool newton = next > a && next < b && std::isfinite(next);
        if (!newton) next = 0.5 * (a + b);
        const double step = std::abs(next - x);
        x = next;
        // A small bisection step says nothing about the distance to the root.
        if ((newton && step <= tol * std::max(1.0, std::abs(x))) || (b - a) <= 4.0 * 2.2e-16 * std::abs(x)) return x;
    }
    return x;
}

/// Cell edges (in k = sqrt(lambda)) that interlace with the roots.
std::vector<double> cell_edges(const BoundaryParam& bp, double k_max) {
    std::vector<double> edges{0.0};
    for (int n = 1;; ++n) {
        const double z = bp.is_friedrichs() ? specfun::bessel_y0_zero(n) : specfun::bessel_j0_zero(n);
        if (z >= k_max) break;
        edges.push_back(z);
    }
    edges.push_back(k_max);
    return edges;
}

std::vector<double> scan_grid(const BoundaryParam& bp, double lambda_max, int points_per_cell) {
    const double k_max = std::sqrt(lambda_max);
    const auto edges = cell_edges(bp, k_max);
    std::vector<double> grid;
    // Log grid into the first cell so the lambda -> 0 end is resolved. Below
    // kLambdaMin rounding in the secular function exceeds its size at theta = 0.
    const double first = edges[1] / points_per_cell;
    const double ratio = kLambdaMin / (first * first);
    for (int i = 0; i < points_per_cell; ++i) {
        const double k = first * std::sqrt(std::pow(ratio, 1.0 - static_cast<double>(i) / points_per_cell));
        grid.push_back(k * k);
    }
    for (std::size_t c = 0; c + 1 < edges.size(); ++c) {
        const double a = edges[c], b = edges[c + 1];
        for (int i = (c == 0 ? 1 : 0); i < points_per_cell; ++i) {
            const double k = a + (b - a) * i / points_per_cell;
            grid.push_back(k * k);
        }
    }
    grid.push_back(lambda_max);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

struct Bracket {
    double a, b;
};

std::vector<Bracket> sign_changes(const Fn& f, const std::vector<double>& grid) {
    std::vector<Bracket> out;
    double prev = f(grid[0]);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double cur = f(grid[i]);
        if (prev == 0.0 || (prev < 0.0) != (cur < 0.0)) {
            if (cur != 0.0 || prev != 0.0) out.push_back({grid[i - 1], grid[i]});
        }
        prev = cur;
    }
    return out;
}

}  // namespace

double secular_positive(double lambda, const BoundaryParam& bp) {
    if (!std::isfinite(lambda) || !(lambda > 0.0)) throw DomainError("secular_positive: lambda must be > 0");
    const double k = std::sqrt(lambda);
    if (bp.is_friedrichs()) return specfun::bessel_j0(k);
    return (std::log(lambda) + 2.0 * bp.kappa()) * specfun::bessel_j0(k) - kPi * specfun::bessel_y0(k);
}

double secular_positive_derivative(double lambda, const BoundaryParam& bp) {
    if (!std::isfinite(lambda) || !(lambda > 0.0)) throw DomainError("secular_positive: lambda must be > 0");
    const double k = std::sqrt(lambda);
    const double j1 = specfun::bessel_j1(k);
    if (bp.is_friedrichs()) return -j1 / (2.0 * k);
    return specfun::bessel_j0(k) / lambda - (std::log(lambda) + 2.0 * bp.kappa()) * j1 / (2.0 * k) +
           kPi * specfun::bessel_y1(k) / (2.0 * k);
}

double secular_negative(double mu, const BoundaryParam& bp) {
    if (!std::isfinite(mu) || !(mu > 0.0)) throw DomainError("secular_negative: mu must be > 0");
    return (std::log(mu) + bp.kappa()) * specfun::bessel_i0(mu) + specfun::bessel_k0(mu);
}

double secular_negative_scaled(double mu, const BoundaryParam& bp) {
    if (!std::isfinite(mu) || !(mu > 0.0)) throw DomainError("secular_negative: mu must be > 0");
    return (std::log(mu) + bp.kappa()) * specfun::bessel_i0_scaled(mu) +
           specfun::bessel_k0_scaled(mu) * std::exp(-2.0 * mu);
}

double secular_negative_derivative(double mu, const BoundaryParam& bp) {
    if (!std::isfinite(mu) || !(mu > 0.0)) throw DomainError("secular_negative: mu must be > 0");
    return specfun::bessel_i0(mu) / mu + (std::log(mu) + bp.kappa()) * specfun::bessel_i1(mu) -
           specfun::bessel_k1(mu);
}

double Spectrum::tail_bound(double t) const {
    if (!(t > 0.0)) throw DomainError("tail_bound: t must be > 0");
    const double x = t * lambda_max;
    return std::sqrt(kPi / t) * std::erfc(std::sqrt(x)) / kPi + std::exp(-x);
}

int count_positive_roots(const BoundaryParam& bp, double lambda_max, int points_per_cell) {
    auto f = [&bp](double l) { return secular_positive(l, bp); };
    return static_cast<int>(sign_changes(f, scan_grid(bp, lambda_max, points_per_cell)).size());
}

BoundState bound_state(const BoundaryParam& bp, double tol) {
    BoundState out;
    if (bp.is_friedrichs()) return out;
    const double kappa = bp.kappa();
    const double mu_max = std::max(20.0, 3.0 * std::exp(-kappa));
    std::vector<double> grid(kMuPoints + 1);
    for (int i = 0; i <= kMuPoints; ++i) {
        grid[i] = kMuMin * std::pow(mu_max / kMuMin, static_cast<double>(i) / kMuPoints);
    }
    auto f = [&bp](double mu) { return secular_negative_scaled(mu, bp); };
    auto df = [&bp](double mu) {
        // d/dmu [N e^{-mu}] = (N' - N) e^{-mu}
        const double scaled_deriv = specfun::bessel_i0_scaled(mu) / mu +
                                    (std::log(mu) + bp.kappa()) * specfun::bessel_i1_scaled(mu) -
                                    specfun::bessel_k1_scaled(mu) * std::exp(-2.0 * mu);
        return scaled_deriv - secular_negative_scaled(mu, bp);
    };
    const auto brackets = sign_changes(f, grid);
    if (brackets.empty()) return out;
    if (brackets.size() > 1) throw CompletenessError("secular_negative: more than one root found");
    out.exists = true;
    out.mu = refine_root(f, df, brackets[0].a, brackets[0].b, tol);
    const double mu = out.mu;
    const double denom = specfun::bessel_i0_scaled(mu) / mu + (std::log(mu) + kappa) * specfun::bessel_i1_scaled(mu);
    out.perturbation_bound = std::abs(specfun::bessel_k0_scaled(mu) * std::exp(-2.0 * mu) / denom);
    return out;
}

Spectrum eigenvalues(const BoundaryParam& bp, double lambda_max, double tol, const ScanOptions& scan) {
    if (!std::isfinite(lambda_max) || lambda_max < 100.0) throw DomainError("eigenvalues: lambda_max must be >= 100");
    if (!(tol > 0.0) || tol > 1e-8) throw DomainError("eigenvalues: tol must be in (0, 1e-8]");
    if (scan.points_per_cell < 2 || scan.max_attempts < 1 || scan.refinement_factor < 2) {
        throw DomainError("eigenvalues: invalid scan options");
    }

    Spectrum s;
    s.theta = bp.theta();
    s.lambda_max = lambda_max;

    const auto bs = bound_state(bp, tol);
    if (bs.exists) {
        s.eigenvalues.push_back(-bs.mu * bs.mu);
        s.residuals.push_back(std::abs(secular_negative_scaled(bs.mu, bp)));
        s.negative_count = 1;
    }
    // At theta = 0 the secular functions vanish exactly at lambda = 0
    // (eigenfunction sqrt(x) log x), an endpoint no scan can bracket.
    if (!bp.is_friedrichs() && bp.theta() == 0.0) {
        s.eigenvalues.push_back(0.0);
        s.residuals.push_back(0.0);
    }

    auto f = [&bp](double l) { return secular_positive(l, bp); };
    auto df = [&bp](double l) { return secular_positive_derivative(l, bp); };
    int points = scan.points_per_cell;
    std::vector<Bracket> brackets;
    for (int attempt = 0;; ++attempt) {
        brackets = sign_changes(f, scan_grid(bp, lambda_max, points));
        const int finer = count_positive_roots(bp, lambda_max, points * scan.refinement_factor);
        if (finer == static_cast<int>(brackets.size())) break;
        if (attempt + 1 >= scan.max_attempts) {
            throw CompletenessError("eigenvalues: scan with " + std::to_string(points) + " points per cell found " +
                                    std::to_string(brackets.size()) + " roots, finer scan found " +
                                    std::to_string(finer));
        }
        points *= 2;
    }
    for (const auto& br : brackets) {
        const double l = refine_root(f, df, br.a, br.b, tol);
        s.eigenvalues.push_back(l);
        s.residuals.push_back(std::abs(f(l)));
    }
    return s;
}

OracleTrace oracle_trace(double t, const Spectrum& spectrum) {
    if (!std::isfinite(t) || !(t > 0.0)) throw DomainError("oracle_trace: t must be > 0");
    if (t * spectrum.lambda_max < 30.0) {
        throw InsufficientSpectrumError("oracle_trace: t * lambda_max = " + std::to_string(t * spectrum.lambda_max) +
                                        " < 30; increase lambda_max");
    }
    OracleTrace out;
    // Smallest terms first.
    for (auto it = spectrum.eigenvalues.rbegin(); it != spectrum.eigenvalues.rend(); ++it) {
        out.value += std::exp(-t * *it);
    }
    out.tail_error = spectrum.tail_bound(t);
    return out;
}

void write_csv(std::ostream& out, const Spectrum& spectrum) {
    out << "index,lambda,secular_residual\n";
    char buf[96];
    for (std::size_t i = 0; i < spectrum.eigenvalues.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", i, spectrum.eigenvalues[i], spectrum.residuals[i]);
        out << buf;
    }
}

}  // namespace rsheat::oracle
