#include "core/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace adseq {

double QuadResult::rel_error() const {
    const double scale = std::abs(value);
    if (scale == 0.0) return abs_error == 0.0 ? 0.0 : abs_error;
    return abs_error / scale;
}

namespace {

// Gauss 7 / Kronrod 15 nodes and weights (positive half).
constexpr double kNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000,
};
constexpr double kWeights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
};
// Gauss weights attach to nodes 1, 3, 5, 7 of the table above.
constexpr double kGaussWeights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469,
};

struct Panel {
    double a, b;
    double value;
    double err;
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double k15 = 0.0, g7 = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double dx = h * kNodes[i];
        const double y = i == 7 ? f(mid) : f(mid + dx) + f(mid - dx);
        k15 += kWeights[i] * y;
        if (i % 2 == 1 || i == 7) g7 += kGaussWeights[i / 2] * y;
    }
    k15 *= h;
    g7 *= h;
    double err = std::abs(k15 - g7);
    // standard inflation of the raw Gauss/Kronrod difference
    const double scaled = 200.0 * err;
    const double inflated = scaled * std::sqrt(scaled);
    if (inflated > err) err = inflated;
    return Panel{a, b, k15, err};
}

QuadResult refine(const std::function<double(double)>& f, std::vector<Panel> panels,
                  double rel_tol, double abs_tol, long max_panels) {
    const auto totals = [&panels]() {
        double v = 0.0, e = 0.0;
        for (const Panel& p : panels) {
            v += p.value;
            e += p.err;
        }
        return std::pair<double, double>(v, e);
    };
    for (;;) {
        auto [v, e] = totals();
        const double target = std::max(rel_tol * std::abs(v), abs_tol);
        if (e <= target || !std::isfinite(e)) {
            return QuadResult{v, e, e <= target && std::isfinite(v),
                              static_cast<long>(panels.size())};
        }
        if (static_cast<long>(panels.size()) >= max_panels)
            return QuadResult{v, e, false, static_cast<long>(panels.size())};
        // split the worst panel (first of equals, for determinism)
        std::size_t worst = 0;
        for (std::size_t i = 1; i < panels.size(); ++i)
            if (panels[i].err > panels[worst].err) worst = i;
        const Panel p = panels[worst];
        const double mid = 0.5 * (p.a + p.b);
        if (mid <= p.a || mid >= p.b)
            return QuadResult{v, e, false, static_cast<long>(panels.size())};
        panels[worst] = gk15(f, p.a, mid);
        panels.push_back(gk15(f, mid, p.b));
    }
}

// log-spaced panels over [a, b] shrinking toward a (or toward 0 if a == 0)
std::vector<Panel> seed_panels(const std::function<double(double)>& f, double a, double b) {
    std::vector<Panel> panels;
    if (a > 0.0 && b / a > 32.0) {
        double left = a;
        while (left * 8.0 < b) {
            panels.push_back(gk15(f, left, left * 8.0));
            left *= 8.0;
        }
        panels.push_back(gk15(f, left, b));
    } else if (a == 0.0) {
        double right = b;
        for (int i = 0; i < 24 && right > 1e-12 * b; ++i) {
            const double next = right / 8.0;
            panels.push_back(gk15(f, next, right));
            right = next;
        }
        panels.push_back(gk15(f, 0.0, right));
        std::reverse(panels.begin(), panels.end());
    } else {
        panels.push_back(gk15(f, a, b));
    }
    return panels;
}

} // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double rel_tol, double abs_tol, long max_panels) {
    if (!(b > a)) return QuadResult{0.0, 0.0, true, 0};
    return refine(f, seed_panels(f, a, b), rel_tol, abs_tol, max_panels);
}

QuadResult integrate_power_singular(const std::function<double(double)>& g, double a, double b,
                                    double sing_exp, double rel_tol, long max_panels) {
    if (!(b > a)) return QuadResult{0.0, 0.0, true, 0};
    if (sing_exp >= 1.0 && a == 0.0) // not integrable at 0
        return QuadResult{std::numeric_limits<double>::infinity(),
                          std::numeric_limits<double>::infinity(), false, 0};

    if (sing_exp == 0.0) return integrate_adaptive(g, a, b, rel_tol, 1e-14, max_panels);

    const auto h = [&g, sing_exp](double u) {
        return u == 0.0 ? 0.0 : std::pow(u, -sing_exp) * g(u);
    };
    if (a > 0.0) // singularity sits outside the domain; integrate directly
        return refine(h, seed_panels(h, a, b), rel_tol, 1e-14, max_panels);

    // u = v^s with s = 1/(1 - sing_exp): the integrand becomes
    // s * g(v^s), bounded whenever g is. v^s may underflow to 0 near the
    // endpoint; g must simply be continuous there.
    const double s = 1.0 / (1.0 - sing_exp);
    const auto t = [&g, s](double v) { return s * g(std::pow(v, s)); };
    const double vb = std::pow(b, 1.0 / s);
    return refine(t, seed_panels(t, 0.0, vb), rel_tol, 1e-14, max_panels);
}

} // namespace adseq
