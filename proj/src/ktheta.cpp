#include "rsheat/ktheta.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "rsheat/errors.hpp"

namespace rsheat::ktheta {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};
// Cutoff in s = -log y for integrals over y in (0, 1]; e^{-60} is far below
// every tolerance in use.
constexpr double kLogCut = 60.0;

void require_positive_time(double t, const char* fn) {
    if (!std::isfinite(t) || !(t > 0.0)) throw DomainError(std::string(fn) + ": t must be > 0");
}

void require_nonnegative_time(double t, const char* fn) {
    if (!std::isfinite(t) || t < 0.0) throw DomainError(std::string(fn) + ": t must be >= 0");
}

cplx principal_log(cplx z) {
    const cplx l = std::log(z);
    assert(l.imag() > -kPi && l.imag() <= kPi);
    return l;
}

/// (log sqrt(zeta) + kappa)^{-1} on the principal branch.
cplx transform(cplx zeta, double kappa) { return 1.0 / (0.5 * principal_log(zeta) + kappa); }

quad::QuadSpec outer_spec(const quad::QuadSpec& inner) {
    quad::QuadSpec s = inner;
    s.rel_tol = std::max(inner.rel_tol * 100.0, 1e-9);
    s.abs_tol = std::max(inner.abs_tol * 100.0, 1e-11);
    return s;
}

struct ComplexQuad {
    cplx value;
    double error;
};

template <class F>
ComplexQuad integrate_complex(F f, double a, double b, const quad::QuadSpec& spec) {
    const auto re = quad::integrate([&](double p) { return f(p).real(); }, a, b, spec);
    const auto im = quad::integrate([&](double p) { return f(p).imag(); }, a, b, spec);
    return {{re.value, im.value}, re.est_error + im.est_error};
}

}  // namespace

quad::QuadResult m_main_result(double t, const BoundaryParam& bp, const quad::QuadSpec& spec) {
    require_positive_time(t, "m_main");
    const double kappa = bp.kappa();
    auto r = quad::integrate_log_tail([](double) { return 1.0; }, t, 2.0 * kappa, spec);
    r.value *= 2.0;
    r.est_error *= 2.0;
    return r;
}

double m_main(double t, const BoundaryParam& bp, const quad::QuadSpec& spec) {
    return m_main_result(t, bp, spec).value;
}

quad::QuadResult k1_smooth_result(double t, const BoundaryParam& bp, const KernelOptions& opts) {
    require_nonnegative_time(t, "k1_smooth");
    const double kappa = bp.kappa();

    // Segment i[-1, 1]: (1/pi) Re int_0^1 e^{ity} ((1/2) log y + i pi/4 + kappa)^{-1} dy,
    // with y = e^{-s}. The integrand tends to 0 at y = 0.
    auto segment = [t, kappa](double s) {
        const double y = std::exp(-s);
        const double phase = t * y;
        const double a = kappa - 0.5 * s;
        const double b = 0.25 * kPi;
        return (std::cos(phase) * a + std::sin(phase) * b) / (a * a + b * b) * y;
    };
    // Upper unit arc; the lower arc is its complex conjugate.
    auto arc = [t, kappa](double phi) {
        const cplx e = std::polar(1.0, phi);
        const cplx v = kI * e * std::exp(kI * t * e) / (kI * (0.5 * phi + 0.25 * kPi) + kappa);
        return v.real();
    };
    auto r = quad::integrate(segment, 0.0, kLogCut, opts.contour_spec);
    r += quad::integrate(arc, 0.0, 0.5 * kPi, opts.contour_spec);
    r.value /= kPi;
    r.est_error /= kPi;
    // Truncation of the segment at s = kLogCut.
    r.est_error += std::exp(-kLogCut) / (0.25 * kPi) / kPi;
    return r;
}

double k1_smooth(double t, const BoundaryParam& bp, const KernelOptions& opts) {
    return k1_smooth_result(t, bp, opts).value;
}

ComplexValue k1_unpaired(double t, const BoundaryParam& bp, const quad::QuadSpec& spec) {
    require_nonnegative_time(t, "k1_unpaired");
    const double kappa = bp.kappa();
    const double scale = 1.0 / (2.0 * kPi);

    // (1/2 pi i) int e^{t zeta} L(zeta) d zeta over each piece.
    // Segment, zeta = i y' with y' = +-e^{-s}; d zeta = i dy'.
    auto upper_segment = [&](double s) {
        const double y = std::exp(-s);
        return std::exp(kI * t * y) * transform(cplx(0.0, y), kappa) * y;
    };
    auto lower_segment = [&](double s) {
        const double y = std::exp(-s);
        return std::exp(-kI * t * y) * transform(cplx(0.0, -y), kappa) * y;
    };
    // Arcs: zeta = e^{+-i(phi + pi/2)}, from +-i to -1.
    auto upper_arc = [&](double phi) {
        const cplx x = std::polar(1.0, phi);
        const cplx zeta = std::polar(1.0, phi + 0.5 * kPi);
        return std::exp(kI * t * x) * transform(zeta, kappa) * (kI * x);
    };
    auto lower_arc = [&](double phi) {
        const cplx x = std::polar(1.0, -phi);
        const cplx zeta = std::polar(1.0, -phi - 0.5 * kPi);
        return std::exp(-kI * t * x) * transform(zeta, kappa) * (-kI * x);
    };
    cplx total = integrate_complex(upper_segment, 0.0, kLogCut, spec).value;
    total += integrate_complex(lower_segment, 0.0, kLogCut, spec).value;
    total += integrate_complex(upper_arc, 0.0, 0.5 * kPi, spec).value;
    total += integrate_complex(lower_arc, 0.0, 0.5 * kPi, spec).value;
    total *= scale;
    return {total.real(), total.imag()};
}

double k1_branch_cut(double t, const BoundaryParam& bp, const quad::QuadSpec& spec) {
    require_nonnegative_time(t, "k1_branch_cut");
    const double kappa2 = 2.0 * bp.kappa();
    auto f = [t, kappa2](double s) {
        const double y = std::exp(-s);
        const double d = kappa2 - s;
        return std::exp(-t * y) * y / (d * d + kPi * kPi);
    };
    return 2.0 * quad::integrate(f, 0.0, kLogCut, spec).value;
}

double residue_term(double t, const BoundaryParam& bp, const KernelOptions& opts) {
    require_nonnegative_time(t, "residue_term");
    const double zeta0 = bp.pole();
    if (!opts.include_residue) return 0.0;
    const double r = 2.0 * zeta0 * std::exp(zeta0 * t);
    // Just past the Friedrichs angle kappa is hugely negative and the bound
    // state is too deep to represent.
    if (!std::isfinite(r)) throw DomainError("residue_term: e^{zeta0 t} overflows (bound state too deep)");
    return r;
}

KThetaValue k_theta(double t, const BoundaryParam& bp, const KernelOptions& opts) {
    require_positive_time(t, "k_theta");
    const auto main = m_main_result(t, bp, opts.tail_spec);
    const auto smooth = k1_smooth_result(t, bp, opts);
    KThetaValue v;
    v.main_part = main.value;
    v.smooth_part = smooth.value;
    v.residue_part = residue_term(t, bp, opts);
    v.total = v.main_part + v.smooth_part + v.residue_part;
    v.est_error = main.est_error + smooth.est_error;
    return v;
}

double laplace_target(double zeta, const BoundaryParam& bp) {
    if (!std::isfinite(zeta) || !(zeta > 0.0)) throw DomainError("laplace_target: zeta must be > 0");
    return 1.0 / (0.5 * std::log(zeta) + bp.kappa());
}

LaplaceParts laplace_of_k_parts(double zeta, const BoundaryParam& bp, const KernelOptions& opts) {
    if (!std::isfinite(zeta) || !(zeta > 0.0)) throw DomainError("laplace_of_k: zeta must be > 0");
    const double kappa = bp.kappa();
    const double kappa2 = 2.0 * kappa;
    const double zeta0 = bp.pole();
    if (opts.include_residue && !(zeta > zeta0)) {
        throw DomainError("laplace_of_k: zeta must exceed the pole e^{-2 kappa} when the residue is included");
    }

    LaplaceParts out;
    const auto outer = outer_spec(opts.tail_spec);
    const double t_max = 45.0 / zeta;
    const double t_split = 1e-6 * t_max;

    // M on (0, t_split] through Fubini:
    //   int_0^tau e^{-zeta t} M(t) dt = 2 int_1^inf w(y) (1 - e^{-tau (y + zeta)})/(y + zeta) dy.
    {
        const double u_cut = quad::log_tail_cutoff(t_split);
        auto f = [&](double u) {
            const double y = std::exp(u);
            const double d = u + kappa2;
            return y / (y + zeta) * -std::expm1(-t_split * (y + zeta)) / (d * d + kPi * kPi);
        };
        auto partition_end = std::max(u_cut, 1.0);
        auto r = quad::integrate(f, 0.0, partition_end, outer);
        // Beyond u_cut the bracket equals 1 - O(zeta e^{-u}).
        const double tail = quad::lorentz_tail(partition_end, kappa2);
        out.main_part += 2.0 * (r.value + tail);
        out.est_error += 2.0 * (r.est_error + zeta * std::exp(-partition_end) * tail);
    }
    // M on [t_split, t_max] in sigma = log t.
    {
        auto f = [&](double sigma) {
            const double t = std::exp(sigma);
            return std::exp(-zeta * t) * m_main(t, bp, opts.tail_spec) * t;
        };
        auto r = quad::integrate(f, std::log(t_split), std::log(t_max), outer);
        out.main_part += r.value;
        out.est_error += r.est_error;
    }
    // K1 on [0, t_max]; K1 is smooth and bounded.
    {
        auto f = [&](double t) { return std::exp(-zeta * t) * k1_smooth(t, bp, opts); };
        auto spec = outer;
        spec.initial_intervals = std::max(spec.initial_intervals, 8);
        auto r = quad::integrate(f, 0.0, t_max, spec);
        out.smooth_part = r.value;
        out.est_error += r.est_error;
    }
    // Truncation at t_max.
    const double tail_size = m_main(t_max, bp, opts.tail_spec) + std::abs(k1_smooth(t_max, bp, opts)) + 1.0;
    out.est_error += std::exp(-zeta * t_max) * tail_size / zeta;

    out.residue_part = opts.include_residue ? 2.0 * zeta0 / (zeta - zeta0) : 0.0;
    out.total = out.main_part + out.smooth_part + out.residue_part;
    return out;
}

double laplace_of_k(double zeta, const BoundaryParam& bp, const KernelOptions& opts) {
    return laplace_of_k_parts(zeta, bp, opts).total;
}

double bromwich_horizontal_segment(double t, double height, double delta, const BoundaryParam& bp,
                                   const quad::QuadSpec& spec) {
    require_positive_time(t, "bromwich_horizontal_segment");
    if (!(height > 0.0) || !(delta > 0.0)) {
        throw DomainError("bromwich_horizontal_segment: height and delta must be > 0");
    }
    const double kappa = bp.kappa();
    auto f = [&](double x) {
        const cplx zeta(x, height);
        return std::exp(t * zeta) * transform(zeta, kappa);
    };
    const auto r = integrate_complex(f, 0.0, delta, spec);
    return std::abs(r.value) / (2.0 * kPi);
}

}  // namespace rsheat::ktheta
