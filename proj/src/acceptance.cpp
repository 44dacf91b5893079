#include "rsheat/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <numbers>
#include <random>

#include "rsheat/asymptotics.hpp"
#include "rsheat/boundary.hpp"
#include "rsheat/errors.hpp"
#include "rsheat/kernels.hpp"
#include "rsheat/ktheta.hpp"
#include "rsheat/oracle.hpp"
#include "rsheat/quadrature.hpp"
#include "rsheat/specfun.hpp"
#include "rsheat/trace.hpp"

namespace rsheat::acceptance {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

/// Value and first two derivatives.
struct Jet {
    double v = 0.0, d = 0.0, dd = 0.0;
};

Jet operator+(Jet a, Jet b) { return {a.v + b.v, a.d + b.d, a.dd + b.dd}; }
Jet operator-(Jet a, Jet b) { return {a.v - b.v, a.d - b.d, a.dd - b.dd}; }
Jet operator*(Jet a, Jet b) { return {a.v * b.v, a.d * b.v + a.v * b.d, a.dd * b.v + 2.0 * a.d * b.d + a.v * b.dd}; }
Jet inv(Jet b) { return {1.0 / b.v, -b.d / (b.v * b.v), (2.0 * b.d * b.d - b.v * b.dd) / (b.v * b.v * b.v)}; }
Jet operator/(Jet a, Jet b) { return a * inv(b); }
Jet exp(Jet a) {
    const double e = std::exp(a.v);
    return {e, e * a.d, e * (a.dd + a.d * a.d)};
}

/// Smooth cutoff: 1 on [0, 1/2], 0 on [3/4, 1].
Jet cutoff(double x) {
    if (x <= 0.5) return {1.0, 0.0, 0.0};
    if (x >= 0.75) return {0.0, 0.0, 0.0};
    const Jet s{4.0 * (0.75 - x), -4.0, 0.0};
    const Jet one{1.0, 0.0, 0.0};
    const Jet zero{0.0, 0.0, 0.0};
    const Jet h0 = exp(zero - inv(s));
    const Jet h1 = exp(zero - inv(one - s));
    return h0 / (h0 + h1);
}

Jet sqrt_jet(double x) {
    const double r = std::sqrt(x);
    return {r, 0.5 / r, -0.25 / (x * r)};
}

Jet log_jet(double x) { return {std::log(x), 1.0 / x, -1.0 / (x * x)}; }

struct Sub {
    std::vector<std::string>* details;
    bool ok = true;
    double worst = 0.0;

    void check(bool pass, double metric, const std::string& line) {
        ok = ok && pass;
        worst = std::max(worst, metric);
        details->push_back(std::string(pass ? "ok   " : "FAIL ") + line);
    }
};

CriterionResult prop_tn() {
    CriterionResult r{1, "TrQ = 1/2 + O(t^inf)", false, 0.0, 0.0, {}};
    Sub sub{&r.details};
    double worst_ratio = 0.0;
    for (double t : {0.1, 0.05, 0.02}) {
        const double dev = std::abs(trace::tn_trace(t) - 0.5);
        const double bound = 0.5 * std::exp(-1.0 / t) + 1e-10;
        worst_ratio = std::max(worst_ratio, dev / bound);
        sub.check(dev <= bound, 0.0, fmt("t = %g: |TrQ - 1/2| = %.3e <= %.3e", t, dev, bound));
    }
    const double diff = std::abs(trace::tn_trace_from_qdiag(0.2) - trace::tn_trace(0.2));
    sub.check(diff <= 1e-9, 0.0, fmt("t = 0.2: |int Q dx - TrQ| = %.3e <= 1e-9", diff));
    r.passed = sub.ok;
    r.measured = worst_ratio;
    r.threshold = 1.0;
    r.details.push_back("measured = worst |TrQ - 1/2| / bound");
    return r;
}

CriterionResult boundary_kernel_laplace() {
    CriterionResult r{2, "Laplace transform of N'E+", false, 0.0, 1e-8, {}};
    Sub sub{&r.details};
    quad::QuadSpec spec;
    spec.rel_tol = 1e-13;
    spec.abs_tol = 1e-15;
    spec.initial_intervals = 8;
    for (double x : {0.5, 1.0}) {
        for (double zeta : {1.0, 4.0, 10.0}) {
            // s = e^sigma: e^{-zeta s} N'E+(x, s) ds = (sqrt(x)/2) exp(-zeta e^sigma - x^2 e^{-sigma}/4) dsigma
            auto f = [x, zeta](double sigma) {
                return 0.5 * std::sqrt(x) * std::exp(-zeta * std::exp(sigma) - 0.25 * x * x * std::exp(-sigma));
            };
            const double lo = std::log(x * x / 200.0);
            const double hi = std::log(50.0 / zeta);
            const double lhs = quad::integrate(f, lo, hi, spec).value;
            const double rhs = std::sqrt(x) * specfun::bessel_k0(x * std::sqrt(zeta));
            const double err = std::abs(lhs - rhs);
            sub.check(err <= 1e-8, err, fmt("x = %g, zeta = %g: |L - sqrt(x) K0(x sqrt(zeta))| = %.3e", x, zeta, err));
        }
    }
    r.passed = sub.ok;
    r.measured = sub.worst;
    return r;
}

CriterionResult laplace_identity() {
    CriterionResult r{3, "Laplace identity of K_theta (residue on passes, off fails)", false, 0.0, 1e-3, {}};
    Sub sub{&r.details};
    for (double theta : {0.0, kPi / 4, 3 * kPi / 4}) {
        const BoundaryParam bp(theta);
        const double z0 = bp.pole();
        for (double zeta : {2 * z0, 4 * z0, 10.0}) {
            const double target = ktheta::laplace_target(zeta, bp);
            ktheta::KernelOptions on;
            const double rel = std::abs(ktheta::laplace_of_k(zeta, bp, on) - target) / std::abs(target);
            sub.check(rel <= 1e-3, rel,
                      fmt("theta = %.4f, zeta = %.5g: residue on, relative mismatch %.3e <= 1e-3", theta, zeta, rel));
            ktheta::KernelOptions off;
            off.include_residue = false;
            const double miss = std::abs(ktheta::laplace_of_k(zeta, bp, off) - target);
            const double need = 2 * z0 / (zeta - z0) - 2e-3;
            sub.check(miss >= need, 0.0,
                      fmt("theta = %.4f, zeta = %.5g: residue off, mismatch %.5g >= %.5g", theta, zeta, miss, need));
        }
    }
    r.passed = sub.ok;
    r.measured = sub.worst;
    return r;
}

CriterionResult t1_identity() {
    CriterionResult r{4, "T1 equals its closed reference up to O(t^inf)", false, 0.0, 1e-5, {}};
    Sub sub{&r.details};
    for (double theta : {0.0, 3 * kPi / 4}) {
        const BoundaryParam bp(theta);
        for (double t : {0.05, 0.02}) {
            const double err = std::abs(trace::t1_y_outer(t, bp).value - trace::t1_reference(t, bp));
            sub.check(err <= 1e-5, err, fmt("theta = %.4f, t = %g: |T1 - reference| = %.3e", theta, t, err));
        }
    }
    r.passed = sub.ok;
    r.measured = sub.worst;
    return r;
}

CriterionResult exotic_structure(const AcceptanceOptions& opts) {
    CriterionResult r{5, "exotic term makes the trace difference polynomial", false, 0.0, 1e-4, {}};
    Sub sub{&r.details};
    const auto grid = trace::log_grid(1e-4, 1e-2, 20);
    double worst_ratio = INFINITY;
    for (double theta : {0.0, kPi / 4}) {
        asymptotics::ReportOptions ro;
        ro.workers = opts.workers;
        const auto rep = asymptotics::exoticness_report(BoundaryParam(theta), grid, ro);
        worst_ratio = std::min(worst_ratio, rep.residual_ratio);
        sub.check(rep.subtracted.max_residual <= 1e-4, rep.subtracted.max_residual,
                  fmt("theta = %.4f: subtracted residual %.3e <= 1e-4", theta, rep.subtracted.max_residual));
        sub.check(rep.residual_ratio >= 10.0, 0.0,
                  fmt("theta = %.4f: raw residual %.3e, ratio %.3e >= 10", theta, rep.raw.max_residual,
                      rep.residual_ratio));
    }
    r.details.push_back(fmt("smallest residual ratio %.3e", worst_ratio));
    r.passed = sub.ok;
    r.measured = sub.worst;
    return r;
}

CriterionResult oracle_equivalence() {
    CriterionResult r{6, "heat trace agrees with the eigenvalue sum", false, 0.0, 0.02, {}};
    Sub sub{&r.details};
    const double t = 0.05;
    const auto fr = BoundaryParam::friedrichs();
    const double full_f = trace::full_trace(t, fr).value;
    const double orc_f = oracle::oracle_trace(t, oracle::eigenvalues(fr)).value;
    for (double theta : {0.0, kPi / 4, 3 * kPi / 4, kPi / 2}) {
        const BoundaryParam bp(theta);
        const double full = trace::full_trace(t, bp).value;
        const double orc = oracle::oracle_trace(t, oracle::eigenvalues(bp)).value;
        const double dev = std::abs(full - orc - 0.25);
        sub.check(dev <= 0.02, dev, fmt("theta = %.4f: |trace - oracle - 1/4| = %.3e <= 0.02", theta, dev));
        const double diff = std::abs((full - full_f) - (orc - orc_f));
        sub.check(diff <= 5e-3, 0.0, fmt("theta = %.4f: theta-difference mismatch %.3e <= 5e-3", theta, diff));
    }
    r.passed = sub.ok;
    r.measured = sub.worst;
    return r;
}

CriterionResult green_identity() {
    CriterionResult r{7, "Green's identity on the cutoff pair", false, 0.0, 1e-6, {}};
    Sub sub{&r.details};
    const double lhs = green_identity_pairing();
    const double rhs = green_identity_boundary_form();
    sub.check(std::abs(lhs + 1.0) <= 1e-6, std::abs(lhs + 1.0), fmt("pairing = %.12f, expected -1", lhs));
    sub.check(std::abs(rhs + 1.0) <= 1e-6, std::abs(rhs + 1.0), fmt("boundary form = %.12f, expected -1", rhs));
    r.passed = sub.ok;
    r.measured = sub.worst;
    return r;
}

CriterionResult friedrichs_spectrum() {
    CriterionResult r{8, "spectra: Friedrichs eigenvalues and bound states", false, 0.0, 1e-10, {}};
    Sub sub{&r.details};
    // Squares of the first five zeros of J0.
    const double j0sq[5] = {5.783185962946785, 30.47126234366209, 74.88700679069518, 139.0402844264598,
                            222.9323036176342};
    const auto spec_f = oracle::eigenvalues(BoundaryParam::friedrichs());
    for (int k = 0; k < 5; ++k) {
        const double err = std::abs(spec_f.eigenvalues.at(k) - j0sq[k]);
        sub.check(err <= 1e-10, err, fmt("lambda_%g = %.15g, |lambda - j0k^2| = %.3e", k + 1, spec_f.eigenvalues[k], err));
    }
    const auto s0 = oracle::eigenvalues(BoundaryParam(0.0));
    const auto s3 = oracle::eigenvalues(BoundaryParam(3 * kPi / 4));
    sub.check(s0.negative_count == 0, 0.0, fmt("theta = 0: %g negative eigenvalues, expected 0", s0.negative_count));
    sub.check(s3.negative_count == 1, 0.0, fmt("theta = 3pi/4: %g negative eigenvalues, expected 1", s3.negative_count));
    const BoundaryParam bp3(3 * kPi / 4);
    const auto bs = oracle::bound_state(bp3);
    const double half_line = std::exp(-bp3.kappa());
    const double gap = std::abs(bs.mu - half_line);
    sub.check(bs.exists && gap <= 0.02, 0.0,
              fmt("theta = 3pi/4: |mu* - e^{-kappa}| = |%.12g - %.12g| = %.5g <= 0.02", bs.mu, half_line, gap));
    r.details.push_back(fmt("      self-reported perturbation bound at mu*: %.5g", bs.perturbation_bound));
    r.passed = sub.ok;
    r.measured = sub.worst;
    return r;
}

CriterionResult specfun_checks() {
    CriterionResult r{9, "Bessel Wronskians and dual-path agreement", false, 0.0, 1e-10, {}};
    Sub sub{&r.details};
    using namespace specfun;
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> logz(std::log(0.01), std::log(100.0));
    double w_jy = 0.0, w_ik = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double z = std::exp(logz(rng));
        // J1 Y0 - J0 Y1 = 2/(pi z); I0 K1 + I1 K0 = 1/z (scaled factors cancel).
        const double jy = bessel_j1(z) * bessel_y0(z) - bessel_j0(z) * bessel_y1(z);
        const double ik = bessel_i0_scaled(z) * bessel_k1_scaled(z) + bessel_i1_scaled(z) * bessel_k0_scaled(z);
        w_jy = std::max(w_jy, std::abs(jy * kPi * z / 2.0 - 1.0));
        w_ik = std::max(w_ik, std::abs(ik * z - 1.0));
    }
    sub.check(w_jy <= 1e-10, w_jy, fmt("J/Y Wronskian, 100 points in [0.01, 100]: max relative error %.3e", w_jy));
    sub.check(w_ik <= 1e-10, w_ik, fmt("I/K Wronskian, 100 points in [0.01, 100]: max relative error %.3e", w_ik));

    struct Pair {
        const char* name;
        double lo, hi;
        std::function<double(double)> a, b;
        bool relative;
    };
    const std::vector<Pair> pairs = {
        {"I0 series / asymptotic", 20, 40, [](double z) { return path::series_i0(z).value * std::exp(-z); },
         [](double z) { return path::asymptotic_i0_scaled(z).value; }, true},
        {"I1 series / asymptotic", 20, 40, [](double z) { return path::series_i1(z).value * std::exp(-z); },
         [](double z) { return path::asymptotic_i1_scaled(z).value; }, true},
        {"K0 series / integral", 0.5, 2, [](double z) { return path::series_k0(z).value * std::exp(z); },
         [](double z) { return path::integral_k_scaled(0, z).value; }, true},
        {"K1 series / integral", 0.5, 2, [](double z) { return path::series_k1(z).value * std::exp(z); },
         [](double z) { return path::integral_k_scaled(1, z).value; }, true},
        {"K0 integral / asymptotic", 15, 40, [](double z) { return path::integral_k_scaled(0, z).value; },
         [](double z) { return path::asymptotic_k0_scaled(z).value; }, true},
        {"K1 integral / asymptotic", 15, 40, [](double z) { return path::integral_k_scaled(1, z).value; },
         [](double z) { return path::asymptotic_k1_scaled(z).value; }, true},
        {"J0 series / Miller", 0.5, 5, [](double z) { return path::series_j0(z).value; },
         [](double z) { return path::miller(z).j0.value; }, false},
        {"J1 series / Miller", 0.5, 5, [](double z) { return path::series_j1(z).value; },
         [](double z) { return path::miller(z).j1.value; }, false},
        {"Y0 series / Miller", 0.5, 5, [](double z) { return path::series_y0(z).value; },
         [](double z) { return path::miller(z).y0.value; }, false},
        {"Y1 series / Miller", 0.5, 5, [](double z) { return path::series_y1(z).value; },
         [](double z) { return path::miller(z).y1.value; }, false},
        {"J0 Miller / Hankel", 20, 60, [](double z) { return path::miller(z).j0.value; },
         [](double z) { return path::asymptotic_j0(z).value; }, false},
        {"J1 Miller / Hankel", 20, 60, [](double z) { return path::miller(z).j1.value; },
         [](double z) { return path::asymptotic_j1(z).value; }, false},
        {"Y0 Miller / Hankel", 20, 60, [](double z) { return path::miller(z).y0.value; },
         [](double z) { return path::asymptotic_y0(z).value; }, false},
        {"Y1 Miller / Hankel", 20, 60, [](double z) { return path::miller(z).y1.value; },
         [](double z) { return path::asymptotic_y1(z).value; }, false},
    };
    double worst_dual = 0.0;
    for (const auto& p : pairs) {
        double worst = 0.0;
        for (int i = 0; i <= 40; ++i) {
            const double z = p.lo + (p.hi - p.lo) * i / 40.0;
            const double a = p.a(z), b = p.b(z);
            const double e = p.relative ? std::abs(a - b) / std::abs(b) : std::abs(a - b);
            worst = std::max(worst, e);
        }
        worst_dual = std::max(worst_dual, worst);
        char line[160];
        std::snprintf(line, sizeof line, "%s on [%g, %g]: max %s difference %.3e <= 1e-11", p.name, p.lo, p.hi,
                      p.relative ? "relative" : "absolute", worst);
        sub.check(worst <= 1e-11, 0.0, line);
    }
    r.passed = sub.ok;
    r.measured = sub.worst;
    r.details.push_back(fmt("measured = worst Wronskian error; worst dual-path difference %.3e (threshold 1e-11)",
                            worst_dual));
    return r;
}

}  // namespace

double green_identity_pairing() {
    // -f'' g + f g''; the potential term cancels. Both f and g are annihilated
    // by the operator on (0, 1/2], so only [1/2, 3/4] contributes, but the whole
    // interval is integrated.
    auto integrand = [](double x) {
        const Jet chi = cutoff(x);
        const Jet r = sqrt_jet(x);
        const Jet f = r * chi;
        const Jet g = r * log_jet(x) * chi;
        return -f.dd * g.v + f.v * g.dd;
    };
    quad::QuadSpec spec;
    spec.rel_tol = 1e-12;
    spec.abs_tol = 1e-13;
    auto total = quad::integrate(integrand, 0.0, 0.5, spec, {true, false});
    total += quad::integrate(integrand, 0.5, 0.75, spec);
    total += quad::integrate(integrand, 0.75, 1.0, spec);
    return total.value;
}

double green_identity_boundary_form() {
    const BoundaryParam bp(0.0);
    auto f = [](double x) { return std::sqrt(x) * cutoff(x).v; };
    auto g = [](double x) { return std::sqrt(x) * std::log(x) * cutoff(x).v; };
    const auto cf = kernels::extract_coeffs(f, {}, bp);
    const auto cg = kernels::extract_coeffs(g, {}, bp);
    return cf.c_minus * cg.c_plus - cf.c_plus * cg.c_minus;
}

CriterionResult run_criterion(int id, const AcceptanceOptions& opts) {
    try {
        switch (id) {
            case 1: return prop_tn();
            case 2: return boundary_kernel_laplace();
            case 3: return laplace_identity();
            case 4: return t1_identity();
            case 5: return exotic_structure(opts);
            case 6: return oracle_equivalence();
            case 7: return green_identity();
            case 8: return friedrichs_spectrum();
            case 9: return specfun_checks();
            default: break;
        }
    } catch (const std::exception& e) {
        CriterionResult r{id, "criterion " + std::to_string(id), false, INFINITY, 0.0, {}};
        r.details.push_back(std::string("FAIL exception: ") + e.what());
        return r;
    }
    throw DomainError("run_criterion: no criterion " + std::to_string(id));
}

std::vector<CriterionResult> run_all(const AcceptanceOptions& opts) {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id, opts));
    return out;
}

void write_report(std::ostream& out, const std::vector<CriterionResult>& results) {
    int passed = 0;
    for (const auto& r : results) {
        char buf[256];
        std::snprintf(buf, sizeof buf, "%s [%d] %s: measured %.3e, threshold %.3e\n", r.passed ? "PASS" : "FAIL", r.id,
                      r.name.c_str(), r.measured, r.threshold);
        out << buf;
        for (const auto& d : r.details) out << "       " << d << '\n';
        passed += r.passed ? 1 : 0;
    }
    out << passed << '/' << results.size() << " criteria passed\n";
}

}  // namespace rsheat::acceptance
