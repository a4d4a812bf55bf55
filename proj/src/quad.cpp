#include "uavnet/quad.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>

namespace uavnet {

namespace {

// Kronrod-15 abscissae on [0,1] side of the symmetric rule, plus weights,
// and the embedded Gauss-7 weights (QUADPACK dqk15 constants).
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct PanelResult {
    double value;
    double error;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double fv[15];
    fv[7] = f(c);
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        fv[j] = f(c - dx);
        fv[14 - j] = f(c + dx);
    }
    double kron = kWgk[7] * fv[7];
    double gauss = kWg[3] * fv[7];
    for (int j = 0; j < 7; ++j) {
        kron += kWgk[j] * (fv[j] + fv[14 - j]);
        if (j % 2 == 1) gauss += kWg[j / 2] * (fv[j] + fv[14 - j]);
    }
    kron *= half;
    gauss *= half;
    return {kron, std::abs(kron - gauss)};
}

double adapt(const std::function<double(double)>& f, double a, double b,
             double abs_tol, double rel_tol, int depth, double whole_scale) {
    const PanelResult r = gk15(f, a, b);
    const double tol = std::max(abs_tol, rel_tol * std::max(whole_scale, std::abs(r.value)));
    if (r.error <= tol || depth <= 0 || (b - a) < 1e-15 * (std::abs(a) + std::abs(b) + 1.0)) {
        return r.value;
    }
    const double c = 0.5 * (a + b);
    return adapt(f, a, c, 0.5 * abs_tol, rel_tol, depth - 1, whole_scale) +
           adapt(f, c, b, 0.5 * abs_tol, rel_tol, depth - 1, whole_scale);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadOptions& opt) {
    if (!(a < b)) return 0.0;
    const PanelResult coarse = gk15(f, a, b);
    return adapt(f, a, b, opt.abs_tol, opt.rel_tol, opt.max_depth, std::abs(coarse.value));
}

double integrate_to_inf(const std::function<double(double)>& f, double a,
                        const QuadOptions& opt) {
    auto mapped = [&f, a](double t) {
        const double om = 1.0 - t;
        const double z = a + t / om;
        const double v = f(z);
        return v / (om * om);
    };
    // The t=1 endpoint is never sampled by Gauss-Kronrod nodes.
    return integrate(mapped, 0.0, 1.0, opt);
}

double gauss16(const std::function<double(double)>& f, double a, double b) {
    static constexpr double x[8] = {
        0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
        0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
    static constexpr double w[8] = {
        0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
        0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};
    const double c = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double acc = 0.0;
    for (int j = 0; j < 8; ++j) {
        const double dx = half * x[j];
        acc += w[j] * (f(c - dx) + f(c + dx));
    }
    return acc * half;
}

Pchip::Pchip(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n) throw std::invalid_argument("Pchip: need >= 2 matching points");
    std::vector<double> d(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        d[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
    }
    m_.assign(n, 0.0);
    m_[0] = d[0];
    m_[n - 1] = d[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (d[i - 1] * d[i] <= 0.0) {
            m_[i] = 0.0;
        } else {
            // Harmonic mean keeps the interpolant monotone on monotone data.
            const double w1 = 2.0 * (x_[i + 1] - x_[i]) + (x_[i] - x_[i - 1]);
            const double w2 = (x_[i + 1] - x_[i]) + 2.0 * (x_[i] - x_[i - 1]);
            m_[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
        }
    }
}

double Pchip::operator()(double x) const {
    if (x <= x_.front()) return y_.front();
    if (x >= x_.back()) return y_.back();
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
    const double hseg = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / hseg;
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    return h00 * y_[i] + h10 * hseg * m_[i] + h01 * y_[i + 1] + h11 * hseg * m_[i + 1];
}

double invert_monotone(const std::function<double(double)>& f, double target,
                       double lo, double hi, double xtol) {
    double flo = f(lo) - target;
    double fhi = f(hi) - target;
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (flo * fhi > 0.0) {
        return std::abs(flo) < std::abs(fhi) ? lo : hi;
    }
    for (int it = 0; it < 200 && (hi - lo) > xtol * (1.0 + std::abs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid) - target;
        if (fm == 0.0) return mid;
        if (flo * fm < 0.0) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

namespace {

double kolmogorov_ccdf(double lambda) {
    if (lambda < 1e-8) return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += (k % 2 == 1) ? term : -term;
        if (term < 1e-16) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

}  // namespace

double ks_two_sample_pvalue(const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t n = a.size();
    const std::size_t m = b.size();
    if (n == 0 || m == 0) throw std::invalid_argument("ks_two_sample_pvalue: empty sample");
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < n && j < m) {
        const double x = std::min(a[i], b[j]);
        while (i < n && a[i] <= x) ++i;
        while (j < m && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
    }
    const double ne = std::sqrt(static_cast<double>(n) * m / static_cast<double>(n + m));
    return kolmogorov_ccdf((ne + 0.12 + 0.11 / ne) * d);
}

}  // namespace uavnet
