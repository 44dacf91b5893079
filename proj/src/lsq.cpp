#include "lsq.hpp"

#include <cmath>
#include <limits>

#include "rsheat/errors.hpp"

namespace rsheat::detail {

LeastSquaresSolution least_squares(const std::vector<std::vector<double>>& design, const std::vector<double>& rhs) {
    const std::size_t m = design.size();
    if (m == 0 || rhs.size() != m) throw FitError("least_squares: empty or mismatched system");
    const std::size_t n = design.front().size();
    if (n == 0 || m < n) throw FitError("least_squares: fewer rows than unknowns");

    // Column-major copy, reduced in place to R with the reflectors applied to b.
    std::vector<std::vector<double>> a(n, std::vector<double>(m));
    for (std::size_t i = 0; i < m; ++i) {
        if (design[i].size() != n) throw FitError("least_squares: ragged design matrix");
        for (std::size_t j = 0; j < n; ++j) a[j][i] = design[i][j];
    }
    std::vector<double> b = rhs;
    std::vector<double> col_norm(n);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (double v : a[j]) s += v * v;
        col_norm[j] = std::sqrt(s);
    }

    for (std::size_t k = 0; k < n; ++k) {
        double norm = 0.0;
        for (std::size_t i = k; i < m; ++i) norm += a[k][i] * a[k][i];
        norm = std::sqrt(norm);
        if (norm <= 1e3 * std::numeric_limits<double>::epsilon() * col_norm[k] || norm == 0.0) {
            throw FitError("least_squares: rank-deficient design");
        }
        const double alpha = a[k][k] > 0.0 ? -norm : norm;
        std::vector<double> v(m, 0.0);
        for (std::size_t i = k; i < m; ++i) v[i] = a[k][i];
        v[k] -= alpha;
        double vnorm2 = 0.0;
        for (std::size_t i = k; i < m; ++i) vnorm2 += v[i] * v[i];
        auto reflect = [&](std::vector<double>& x) {
            double dot = 0.0;
            for (std::size_t i = k; i < m; ++i) dot += v[i] * x[i];
            const double f = 2.0 * dot / vnorm2;
            for (std::size_t i = k; i < m; ++i) x[i] -= f * v[i];
        };
        for (std::size_t j = k; j < n; ++j) reflect(a[j]);
        reflect(b);
    }

    // Back substitution R c = Q^T b.
    std::vector<double> c(n);
    for (std::size_t k = n; k-- > 0;) {
        double s = b[k];
        for (std::size_t j = k + 1; j < n; ++j) s -= a[j][k] * c[j];
        c[k] = s / a[k][k];
    }

    LeastSquaresSolution out;
    out.coefficients = c;
    out.residuals.resize(m);
    double rss = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double model = 0.0;
        for (std::size_t j = 0; j < n; ++j) model += design[i][j] * c[j];
        out.residuals[i] = rhs[i] - model;
        rss += out.residuals[i] * out.residuals[i];
    }
    const double sigma2 = m > n ? rss / static_cast<double>(m - n) : 0.0;

    // diag((R^T R)^{-1}) = squared row norms of R^{-1}.
    std::vector<std::vector<double>> rinv(n, std::vector<double>(n, 0.0));
    for (std::size_t j = 0; j < n; ++j) {
        rinv[j][j] = 1.0 / a[j][j];
        for (std::size_t i = j; i-- > 0;) {
            double s = 0.0;
            for (std::size_t k = i + 1; k <= j; ++k) s += a[k][i] * rinv[k][j];
            rinv[i][j] = -s / a[i][i];
        }
    }
    out.standard_errors.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = i; j < n; ++j) s += rinv[i][j] * rinv[i][j];
        out.standard_errors[i] = std::sqrt(sigma2 * s);
    }
    return out;
}

}  // namespace rsheat::detail
