#pragma once

#include <functional>

namespace adseq {

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;   // estimated
    bool converged = true;
    long panels = 0;

    double rel_error() const;
};

// Adaptive Gauss7/Kronrod15 on [a,b]. Splits the worst panel until the
// accumulated error estimate meets rel_tol (or the absolute floor), up
// to max_panels panels.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double rel_tol = 1e-9, double abs_tol = 1e-14,
                              long max_panels = 1 << 16);

// Integral of u^(-sing_exp) * g(u) over (a,b] with bounded g and
// sing_exp < 1. The substitution u = v^(1/(1-sing_exp)) turns the
// integrand into a bounded one; g is never evaluated through a
// negative power, so exponents arbitrarily close to 1 stay stable.
// Log-spaced panels feed the adaptive refinement near the endpoint.
QuadResult integrate_power_singular(const std::function<double(double)>& g, double a, double b,
                                    double sing_exp, double rel_tol = 1e-6,
                                    long max_panels = 1 << 16);

} // namespace adseq
