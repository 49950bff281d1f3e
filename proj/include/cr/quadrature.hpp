#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace cr {

// Gauss-Hermite rule with the weight absorbed into the weights:
//   integral f(x) dx == sum_i w[i] f(x[i])   exactly for f = p(x) e^{-alpha x^2},
//   deg p <= 2*order - 1.
//
// Nodes are the roots of the orthonormal Hermite function psi_Q, located by
// sign changes of the three-term recurrence and polished with Newton steps.
// Weights use w_i e^{x_i^2} = 1 / (Q psi_{Q-1}(x_i)^2), which stays O(1) and
// avoids the overflow of the classical formula.
struct GaussHermite {
    std::vector<double> x;  // nodes
    std::vector<double> w;  // absorbed weights

    GaussHermite(int order, double alpha = 1.0) {
        if (order < 1) throw std::invalid_argument("GaussHermite: order must be >= 1");
        build(order);
        if (alpha != 1.0) {
            const double s = std::sqrt(alpha);
            for (auto& v : x) v /= s;
            for (auto& v : w) v /= s;
        }
    }

private:
    // Orthonormal Hermite functions psi_0..psi_Q at one point.
    static void psi_all(int q, double t, std::vector<double>& out) {
        out.resize(q + 1);
        out[0] = std::pow(M_PI, -0.25) * std::exp(-0.5 * t * t);
        if (q >= 1) out[1] = std::sqrt(2.0) * t * out[0];
        for (int k = 1; k < q; ++k)
            out[k + 1] = std::sqrt(2.0 / (k + 1)) * t * out[k] -
                         std::sqrt(static_cast<double>(k) / (k + 1)) * out[k - 1];
    }

    void build(int q) {
        const double hi = std::sqrt(2.0 * q + 1.0) + 2.0;
        const int samples = 40 * q + 200;
        std::vector<double> ps;
        const auto psi_q = [&](double t) {
            psi_all(q, t, ps);
            return ps[q];
        };
        const auto dpsi_q = [&](double t) {
            psi_all(q, t, ps);
            return -t * ps[q] + std::sqrt(2.0 * q) * ps[q - 1];
        };

        std::vector<double> roots;
        double prev_t = -hi, prev_v = psi_q(prev_t);
        for (int i = 1; i <= samples; ++i) {
            const double t = -hi + 2.0 * hi * i / samples;
            const double v = psi_q(t);
            if (prev_v == 0.0) roots.push_back(prev_t);
            else if (prev_v * v < 0.0) {
                double a = prev_t, b = t, r = 0.5 * (a + b);
                for (int it = 0; it < 80; ++it) {
                    const double f = psi_q(r), df = dpsi_q(r);
                    double step = (df != 0.0) ? f / df : 0.0;
                    double rn = r - step;
                    if (!(rn > a && rn < b) || step == 0.0) {  // bisect fallback
                        (psi_q(a) * f < 0.0 ? b : a) = r;
                        rn = 0.5 * (a + b);
                    }
                    if (std::abs(rn - r) < 1e-15 * (1.0 + std::abs(rn))) { r = rn; break; }
                    r = rn;
                }
                roots.push_back(r);
            }
            prev_t = t;
            prev_v = v;
        }
        if (static_cast<int>(roots.size()) != q)
            throw std::runtime_error("GaussHermite: root search failed");

        x = roots;
        w.resize(q);
        for (int i = 0; i < q; ++i) {
            psi_all(q, x[i], ps);
            w[i] = 1.0 / (q * ps[q - 1] * ps[q - 1]);
        }
    }
};

}  // namespace cr
