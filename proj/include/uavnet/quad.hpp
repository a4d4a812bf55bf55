#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace uavnet {

struct QuadOptions {
    double abs_tol = 1e-8;
    double rel_tol = 1e-6;
    int max_depth = 40;
};

// Adaptive Gauss-Kronrod (G7,K15) on a finite interval.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadOptions& opt = {});

// Integral over [a, inf) via the substitution z = a + t/(1-t).
double integrate_to_inf(const std::function<double(double)>& f, double a,
                        const QuadOptions& opt = {});

// Non-adaptive 16-point Gauss-Legendre panel, for smooth integrands on
// pre-graded grids.
double gauss16(const std::function<double(double)>& f, double a, double b);

// Piecewise monotone cubic interpolant (Fritsch-Carlson slopes). Used for
// cumulative tables; evaluation outside [x.front(), x.back()] clamps.
class Pchip {
  public:
    Pchip() = default;
    Pchip(std::vector<double> x, std::vector<double> y);
    double operator()(double x) const;
    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }
    bool empty() const { return x_.empty(); }

  private:
    std::vector<double> x_, y_, m_;
};

// Finds x in [lo, hi] with f(x) = target for monotone f; bisection to xtol.
double invert_monotone(const std::function<double(double)>& f, double target,
                       double lo, double hi, double xtol = 1e-10);

// Asymptotic two-sample Kolmogorov-Smirnov p-value. Both inputs must be
// sorted ascending.
double ks_two_sample_pvalue(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace uavnet
