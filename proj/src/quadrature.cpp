#include "rsheat/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>
#include <vector>

#include "rsheat/errors.hpp"

namespace rsheat::quad {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kPi = std::numbers::pi;
// Exponent at which e^{-x} drops below double-precision relevance.
constexpr double kUnderflowExponent = 46.0;

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

double checked(const Integrand& f, double x) {
    const double v = f(x);
    if (!std::isfinite(v)) {
        throw ConvergenceError("integrand is not finite at x = " + std::to_string(x), 0.0,
                               std::numeric_limits<double>::infinity());
    }
    return v;
}

Segment gauss_kronrod(const Integrand& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    std::array<double, 15> fv{};
    const double fc = checked(f, center);
    double resk = fc * kWgk[7];
    double resg = fc * kWg[3];
    double resabs = std::abs(resk);
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double f1 = checked(f, center - dx);
        const double f2 = checked(f, center + dx);
        fv[2 * j] = f1;
        fv[2 * j + 1] = f2;
        resk += kWgk[j] * (f1 + f2);
        resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    const double mean = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j) {
        resasc += kWgk[j] * (std::abs(fv[2 * j] - mean) + std::abs(fv[2 * j + 1] - mean));
    }
    const double ah = std::abs(half);
    resk *= half;
    resg *= half;
    resabs *= ah;
    resasc *= ah;
    double err = std::abs(resk - resg);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) err = std::max(50.0 * kEps * resabs, err);
    return {a, b, resk, err};
}

QuadResult adaptive(const Integrand& f, const std::vector<double>& partition, const QuadSpec& spec) {
    spec.validate();
    std::priority_queue<Segment> heap;
    std::vector<Segment> settled;
    double total = 0.0, total_err = 0.0;
    long evals = 0;
    for (std::size_t i = 0; i + 1 < partition.size(); ++i) {
        if (!(partition[i] < partition[i + 1])) continue;
        auto s = gauss_kronrod(f, partition[i], partition[i + 1]);
        evals += 15;
        total += s.value;
        total_err += s.error;
        heap.push(s);
    }
    int subdivisions = static_cast<int>(heap.size());
    auto tolerance = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::abs(total)); };
    while (total_err > tolerance() && !heap.empty()) {
        if (subdivisions >= spec.max_subdivisions) {
            throw ConvergenceError("adaptive quadrature: subdivision budget of " +
                                       std::to_string(spec.max_subdivisions) + " exhausted",
                                   total, total_err);
        }
        Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const double scale = std::max(std::abs(worst.a), std::abs(worst.b));
        if (!(mid > worst.a && mid < worst.b) || (worst.b - worst.a) < 1e3 * kEps * scale) {
            settled.push_back(worst);
            continue;
        }
        const auto left = gauss_kronrod(f, worst.a, mid);
        const auto right = gauss_kronrod(f, mid, worst.b);
        evals += 30;
        ++subdivisions;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // Re-sum to shed the drift of incremental updates.
    double value = 0.0, error = 0.0;
    while (!heap.empty()) {
        value += heap.top().value;
        error += heap.top().error;
        heap.pop();
    }
    for (const auto& s : settled) {
        value += s.value;
        error += s.error;
    }
    return {value, error, evals};
}

std::vector<double> even_partition(double a, double b, int pieces) {
    std::vector<double> p(static_cast<std::size_t>(pieces) + 1);
    for (int i = 0; i <= pieces; ++i) p[i] = a + (b - a) * static_cast<double>(i) / pieces;
    p.back() = b;
    return p;
}

}  // namespace

void QuadSpec::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw DomainError("QuadSpec: tolerances must be positive");
    if (max_subdivisions < 1) throw DomainError("QuadSpec: max_subdivisions must be >= 1");
    if (initial_intervals < 1) throw DomainError("QuadSpec: initial_intervals must be >= 1");
}

QuadResult integrate(const Integrand& f, double a, double b, const QuadSpec& spec, EndpointFlags flags) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
        throw DomainError("integrate: need finite a < b");
    }
    const double width = b - a;
    if (flags.left_singular && flags.right_singular) {
        auto g = [&](double u) { return f(a + width * u * u * (3.0 - 2.0 * u)) * 6.0 * width * u * (1.0 - u); };
        return adaptive(g, even_partition(0.0, 1.0, spec.initial_intervals), spec);
    }
    if (flags.left_singular) {
        auto g = [&](double u) { return f(a + width * u * u) * 2.0 * width * u; };
        return adaptive(g, even_partition(0.0, 1.0, spec.initial_intervals), spec);
    }
    if (flags.right_singular) {
        auto g = [&](double u) {
            const double v = 1.0 - u;
            return f(b - width * v * v) * 2.0 * width * v;
        };
        return adaptive(g, even_partition(0.0, 1.0, spec.initial_intervals), spec);
    }
    return adaptive(f, even_partition(a, b, spec.initial_intervals), spec);
}

QuadResult integrate_to_infinity(const Integrand& f, double a, const QuadSpec& spec) {
    if (!std::isfinite(a)) throw DomainError("integrate_to_infinity: lower limit must be finite");
    auto g = [&](double s) { return f(a + (1.0 - s) / s) / (s * s); };
    return adaptive(g, even_partition(0.0, 1.0, spec.initial_intervals), spec);
}

double log_tail_cutoff(double t) {
    if (!(t > 0.0)) throw DomainError("log_tail_cutoff: t must be > 0");
    if (t >= kUnderflowExponent) return 0.0;
    double u = std::log(kUnderflowExponent / t);
    for (int i = 0; i < 60; ++i) {
        const double next = std::log((kUnderflowExponent + u) / t);
        if (std::abs(next - u) < 1e-14 * (1.0 + u)) return next;
        u = next;
    }
    return u;
}

double lorentz_tail(double u_lower, double kappa2) { return std::atan2(kPi, u_lower + kappa2) / kPi; }

QuadResult integrate_log_tail(const Integrand& g, double t, double kappa2, const QuadSpec& spec, double g_bound) {
    if (!std::isfinite(t) || !(t > 0.0)) throw DomainError("integrate_log_tail: t must be > 0");
    const double u_max = log_tail_cutoff(t);
    const double truncation = std::abs(g_bound) * std::exp(-t * std::exp(u_max)) / (t * kPi * kPi);
    if (u_max <= 0.0) return {0.0, truncation, 0};

    const double u_peak = -std::log(t);
    QuadResult r;
    if (spec.tail_cutoff_policy == TailPolicy::exp_substitution) {
        auto h = [&](double u) {
            const double d = u + kappa2;
            return std::exp(u - t * std::exp(u)) * g(std::exp(u)) / (d * d + kPi * kPi);
        };
        auto partition = even_partition(0.0, u_max, spec.initial_intervals);
        if (u_peak > 0.0 && u_peak < u_max) partition.push_back(u_peak);
        std::sort(partition.begin(), partition.end());
        r = adaptive(h, partition, spec);
    } else {
        const double y_max = std::exp(u_max);
        auto h = [&](double y) {
            const double d = std::log(y) + kappa2;
            return std::exp(-t * y) * g(y) / (d * d + kPi * kPi);
        };
        auto partition = even_partition(1.0, y_max, spec.initial_intervals);
        if (u_peak > 0.0 && u_peak < u_max) partition.push_back(1.0 / t);
        std::sort(partition.begin(), partition.end());
        r = adaptive(h, partition, spec);
    }
    r.est_error += truncation;
    return r;
}

}  // namespace rsheat::quad
