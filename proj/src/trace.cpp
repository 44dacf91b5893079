#include "rsheat/trace.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <string>
#include <thread>

#include "rsheat/errors.hpp"
#include "rsheat/kernels.hpp"
#include "rsheat/specfun.hpp"

namespace rsheat::trace {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kCut = 46.0;
// r_c = t e^{-kSigmaCut} for the s-outer form of T1.
constexpr double kSigmaCut = 30.0;

void require_time(double t, const char* fn) {
    if (!std::isfinite(t) || !(t > 0.0)) throw DomainError(std::string(fn) + ": t must be > 0");
}

void require_non_friedrichs(const BoundaryParam& bp, const char* fn) {
    if (bp.is_friedrichs()) throw DomainError(std::string(fn) + ": the Friedrichs extension has no correction");
}

quad::QuadSpec loosened(const quad::QuadSpec& inner, double factor) {
    quad::QuadSpec s = inner;
    s.rel_tol = inner.rel_tol * factor;
    s.abs_tol = inner.abs_tol * factor;
    return s;
}

/// int_0^1 exp(-a/(u(1-u))) du.
double deficiency(double a, const quad::QuadSpec& spec) {
    // Bounded by e^{-4a}.
    if (4.0 * a > 700.0) return 0.0;
    auto f = [a](double u) { return std::exp(-a / (u * (1.0 - u))); };
    return 2.0 * quad::integrate(f, 0.0, 0.5, spec).value;
}

/// int_1^inf (1 - e^{-r y}) w(y) / y dy in u = log y, with the closed-form
/// Lorentz tail past the point where e^{-r y} underflows.
double m_integral(double r, double kappa2, const quad::QuadSpec& spec) {
    const double u_cut = std::max(quad::log_tail_cutoff(r), 1.0);
    auto f = [r, kappa2](double u) {
        const double d = u + kappa2;
        return -std::expm1(-r * std::exp(u)) / (d * d + kPi * kPi);
    };
    auto partition_spec = spec;
    partition_spec.initial_intervals = std::max(spec.initial_intervals, 4);
    const double body = quad::integrate(f, 0.0, u_cut, partition_spec).value;
    return body + quad::lorentz_tail(u_cut, kappa2);
}

}  // namespace

quad::QuadResult friedrichs_trace_result(double t, const quad::QuadSpec& spec) {
    require_time(t, "friedrichs_trace");
    // v = x / sqrt(2t); the integrand v e^{-v^2} I0(v^2) tends to 1/sqrt(2 pi).
    const double v_max = 1.0 / std::sqrt(2.0 * t);
    auto f = [](double v) { return v * specfun::bessel_i0_scaled(v * v); };
    auto s = spec;
    s.initial_intervals = std::max(spec.initial_intervals, 4);
    return quad::integrate(f, 0.0, v_max, s);
}

double friedrichs_trace(double t, const quad::QuadSpec& spec) { return friedrichs_trace_result(t, spec).value; }

double tn_trace(double t, const quad::QuadSpec& spec) {
    require_time(t, "tn_trace");
    return 0.5 * (1.0 - deficiency(0.25 / t, spec));
}

double tn_trace_derivative(double t) {
    require_time(t, "tn_trace_derivative");
    const double a2 = 0.5 / t;
    if (a2 > 700.0) return 0.0;
    return -std::exp(-a2) * specfun::bessel_k0(a2) / (4.0 * t * t);
}

double tn_trace_from_qdiag(double t, const quad::QuadSpec& spec) {
    require_time(t, "tn_trace_from_qdiag");
    auto f = [t, &spec](double x) { return kernels::q_diag(x, t, spec); };
    auto s = loosened(spec, 10.0);
    s.initial_intervals = std::max(spec.initial_intervals, 4);
    return quad::integrate(f, 0.0, 1.0, s).value;
}

quad::QuadResult t1_y_outer(double t, const BoundaryParam& bp, const quad::QuadSpec& spec) {
    require_time(t, "t1_y_outer");
    require_non_friedrichs(bp, "t1_y_outer");
    const double kappa2 = 2.0 * bp.kappa();
    const double trq = tn_trace(t, spec);
    const double trq_prime = tn_trace_derivative(t);

    // Inner G(y) = int_0^t e^{-r y} TrQ(t - r) dr, up to y_c.
    auto inner = [&](double y) {
        auto g = [&](double r) {
            const double s = t - r;
            return std::exp(-r * y) * (s > 0.0 ? tn_trace(s, spec) : 0.5);
        };
        const double r_end = std::min(t, kCut / y);
        auto s = spec;
        s.initial_intervals = 2;
        return quad::integrate(g, 0.0, r_end, s).value;
    };
    // The two-term tail below is only good to O(TrQ''/y^3); for t of order 1
    // that needs y_c well past 46/t.
    const double u_c = std::log(std::max(kCut / t, 1e4));
    auto outer = [&](double u) {
        const double y = std::exp(u);
        const double d = u + kappa2;
        return y * inner(y) / (d * d + kPi * kPi);
    };
    auto outer_spec = loosened(spec, 100.0);
    outer_spec.initial_intervals = std::max(spec.initial_intervals, 8);
    auto r = quad::integrate(outer, 0.0, u_c, outer_spec);

    // Past y_c, G(y) = TrQ(t)/y - TrQ'(t)/y^2 + O(y^-3).
    const double y_c = std::exp(u_c);
    const double dc = u_c + kappa2;
    const double w_c = 1.0 / (dc * dc + kPi * kPi);
    const double tail = trq * quad::lorentz_tail(u_c, kappa2) - trq_prime * w_c / y_c;
    r.value = 2.0 * (r.value + tail);
    r.est_error = 2.0 * (r.est_error + std::abs(trq_prime) * w_c / y_c + std::exp(-kCut));
    return r;
}

quad::QuadResult t1_s_outer(double t, const BoundaryParam& bp, const quad::QuadSpec& spec) {
    require_time(t, "t1_s_outer");
    require_non_friedrichs(bp, "t1_s_outer");
    const double kappa2 = 2.0 * bp.kappa();
    // int_0^t M(r) TrQ(t - r) dr with r = t e^{-sigma}; M(r) r ~ 2/log^2 r is
    // bounded in sigma.
    auto f = [&](double sigma) {
        const double r = t * std::exp(-sigma);
        const double s = t - r;
        const double trq = s > 0.0 ? tn_trace(s, spec) : 0.5;
        return ktheta::m_main(r, bp, spec) * r * trq;
    };
    auto outer_spec = loosened(spec, 100.0);
    outer_spec.initial_intervals = std::max(spec.initial_intervals, 8);
    auto res = quad::integrate(f, 0.0, kSigmaCut, outer_spec);
    // (0, r_c]: TrQ(t - r) = TrQ(t) + O(r TrQ'), and int_0^{r_c} M = m_integral(r_c).
    const double r_c = t * std::exp(-kSigmaCut);
    res.value += tn_trace(t, spec) * 2.0 * m_integral(r_c, kappa2, spec);
    res.est_error += std::abs(tn_trace_derivative(t)) * r_c;
    return res;
}

double t1_reference(double t, const BoundaryParam& bp, const quad::QuadSpec& spec) {
    require_time(t, "t1_reference");
    return m_integral(t, 2.0 * bp.kappa(), spec);
}

double exotic_term(double t, const BoundaryParam& bp, const quad::QuadSpec& spec) {
    require_time(t, "exotic_term");
    const double kappa2 = 2.0 * bp.kappa();
    const double u_cut = quad::log_tail_cutoff(t);
    if (u_cut <= 0.0) return 0.0;
    auto f = [t, kappa2](double u) {
        const double d = u + kappa2;
        return std::exp(-t * std::exp(u)) / (d * d + kPi * kPi);
    };
    auto s = spec;
    s.initial_intervals = std::max(spec.initial_intervals, 4);
    return -quad::integrate(f, 0.0, u_cut, s).value;
}

quad::QuadResult t2(double t, const BoundaryParam& bp, const ktheta::KernelOptions& opts,
                    const quad::QuadSpec& spec) {
    require_time(t, "t2");
    require_non_friedrichs(bp, "t2");
    auto f = [&](double s) { return ktheta::k1_smooth(t - s, bp, opts) * tn_trace(s, spec); };
    return quad::integrate(f, 0.0, t, loosened(spec, 100.0));
}

quad::QuadResult residue_trace(double t, const BoundaryParam& bp, const ktheta::KernelOptions& opts,
                               const quad::QuadSpec& spec) {
    require_time(t, "residue_trace");
    require_non_friedrichs(bp, "residue_trace");
    if (!opts.include_residue) return {};
    auto f = [&](double s) { return ktheta::residue_term(t - s, bp, opts) * tn_trace(s, spec); };
    return quad::integrate(f, 0.0, t, loosened(spec, 100.0));
}

CorrectionParts correction_parts(double t, const BoundaryParam& bp, const ktheta::KernelOptions& opts,
                                 const quad::QuadSpec& spec) {
    require_time(t, "correction_trace");
    require_non_friedrichs(bp, "correction_trace");
    const auto a = t1_y_outer(t, bp, spec);
    const auto b = t2(t, bp, opts, spec);
    const auto c = residue_trace(t, bp, opts, spec);
    CorrectionParts p;
    p.t1 = a.value;
    p.t2 = b.value;
    p.residue = c.value;
    p.total = p.t1 + p.t2 + p.residue;
    p.est_error = a.est_error + b.est_error + c.est_error;
    return p;
}

double correction_trace(double t, const BoundaryParam& bp, const ktheta::KernelOptions& opts,
                        const quad::QuadSpec& spec) {
    return correction_parts(t, bp, opts, spec).total;
}

TraceSample full_trace(double t, const BoundaryParam& bp, const ktheta::KernelOptions& opts,
                       const quad::QuadSpec& spec) {
    require_time(t, "full_trace");
    TraceSample out;
    out.t = t;
    const auto fr = friedrichs_trace_result(t, spec);
    out.parts.friedrichs = fr.value;
    out.est_error = fr.est_error;
    if (!bp.is_friedrichs()) {
        const auto c = correction_parts(t, bp, opts, spec);
        out.parts.correction = c.total;
        out.residue_part = c.residue;
        out.est_error += c.est_error;
        out.parts.exotic_ref = exotic_term(t, bp, spec);
    }
    out.value = out.parts.friedrichs + out.parts.correction;
    return out;
}

namespace {

/// Runs job(i) for i in [0, n) on up to `workers` threads. The first
/// exception stops the remaining work and is rethrown.
template <class Job>
void parallel_for(std::size_t n, unsigned workers, Job job) {
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1)));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto run = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                job(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = n;
            }
        }
    };
    if (workers <= 1) {
        run();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::vector<TraceSample> trace_curve(const std::vector<double>& ts, const BoundaryParam& bp,
                                     const ktheta::KernelOptions& opts, const quad::QuadSpec& spec,
                                     unsigned workers) {
    std::vector<TraceSample> out(ts.size());
    parallel_for(ts.size(), workers, [&](std::size_t i) { out[i] = full_trace(ts[i], bp, opts, spec); });
    return out;
}

std::vector<CurvePoint> trace_curve_collect(const std::vector<double>& ts, const BoundaryParam& bp,
                                            const ktheta::KernelOptions& opts, const quad::QuadSpec& spec,
                                            unsigned workers) {
    std::vector<CurvePoint> out(ts.size());
    parallel_for(ts.size(), workers, [&](std::size_t i) {
        try {
            out[i].sample = full_trace(ts[i], bp, opts, spec);
        } catch (const ConvergenceError& e) {
            out[i].sample.t = ts[i];
            out[i].ok = false;
            out[i].error = e.what();
        }
    });
    return out;
}

std::vector<double> log_grid(double lo, double hi, int n) {
    if (!(lo > 0.0) || !(hi >= lo) || n < 1) throw DomainError("log_grid: need 0 < lo <= hi and n >= 1");
    std::vector<double> g(static_cast<std::size_t>(n));
    if (n == 1) {
        g[0] = lo;
        return g;
    }
    const double a = std::log(lo), b = std::log(hi);
    for (int i = 0; i < n; ++i) g[i] = std::exp(a + (b - a) * i / (n - 1));
    g.front() = lo;
    g.back() = hi;
    return g;
}

}  // namespace rsheat::trace
