#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "cr/cr_operator.hpp"
#include "cr/hermite.hpp"
#include "cr/vnls.hpp"

namespace cr {

// Conserved quantities of the CR flow (Noether charges of the phase, unitary
// mixing, modulation, quadratic modulation and rotation symmetries, plus the
// Hamiltonian itself).
struct ConservedSet {
    double M = 0.0;
    std::vector<double> Mj;        // per component
    std::vector<double> momentum;  // per axis, integral K_i |g|^2
    double second_moment = 0.0;    // integral |K|^2 |g|^2
    std::vector<double> angular;   // Im integral (K_i d_j - K_j d_i) g . conj(g), i < j
    std::vector<double> cross_re;  // Re integral g_j conj(g_k), j < k
    std::vector<double> cross_im;  // Im integral g_j conj(g_k), j < k
    double energy = 0.0;
};

// Everything a Hermite-side computation needs for one lmax.
struct HermiteContext {
    HermiteBasis basis;
    BasisTable tab1;  // alpha = 1, quadratic integrands
    BasisTable tab2;  // alpha = 2, quartic integrands
    HermiteTensor tensor;

    HermiteContext(int lmax, int order)
        : basis(lmax), tab1(basis, order, 1.0), tab2(basis, order, 2.0),
          tensor(hermite_tensor(basis, lmax)) {}
};

inline HermiteContext make_hermite_context(int lmax) {
    return HermiteContext(lmax, 2 * lmax + 4);
}

// On Hermite states the mass, cross terms and angular momentum are exact
// basis sums (L phi_{l,m} = m phi_{l,m}); the K-moments go through the
// alpha = 1 quadrature, which is exact for these integrands.
inline ConservedSet conserved_set(const HermiteState& s, const HermiteContext& ctx) {
    ConservedSet cs;
    const std::size_t B = s.B();
    cs.Mj.assign(s.d, 0.0);
    double am = 0.0;
    for (int j = 0; j < s.d; ++j)
        for (std::size_t b = 0; b < B; ++b) {
            const double m2 = std::norm(s.at(j, b));
            cs.Mj[j] += m2;
            am += ctx.basis.lm[b].second * m2;
        }
    for (double v : cs.Mj) cs.M += v;
    cs.angular.assign(1, am);
    for (int j = 0; j < s.d; ++j)
        for (int k = j + 1; k < s.d; ++k) {
            cplx x{0.0, 0.0};
            for (std::size_t b = 0; b < B; ++b) x += s.at(j, b) * std::conj(s.at(k, b));
            cs.cross_re.push_back(x.real());
            cs.cross_im.push_back(x.imag());
        }
    cs.momentum.assign(2, 0.0);
    const std::size_t nn = ctx.tab1.nodes();
    std::vector<cplx> f(nn);
    for (int j = 0; j < s.d; ++j) {
        std::fill(f.begin(), f.end(), cplx{0.0, 0.0});
        for (std::size_t b = 0; b < B; ++b) {
            const cplx cb = s.at(j, b);
            if (cb == cplx{0.0, 0.0}) continue;
            const cplx* r = ctx.tab1.row(b);
            for (std::size_t q = 0; q < nn; ++q) f[q] += cb * r[q];
        }
        for (std::size_t q = 0; q < nn; ++q) {
            const double x = ctx.tab1.x[q / ctx.tab1.Q], y = ctx.tab1.x[q % ctx.tab1.Q];
            const double m2 = ctx.tab1.w2(q) * std::norm(f[q]);
            cs.momentum[0] += x * m2;
            cs.momentum[1] += y * m2;
            cs.second_moment += (x * x + y * y) * m2;
        }
    }
    cs.energy = hamiltonian_hermite(s, ctx.tensor);
    return cs;
}

// Lattice/grid version: Riemann sums with measure L^{-n}; the angular
// momentum uses centered differences (one-sided at the boundary), so its
// conservation is only as good as the grid resolution.
inline ConservedSet conserved_set(const LatticeField& g, NonlinearityKind kind,
                                  unsigned threads = 0) {
    ConservedSet cs;
    const int n = g.spec.n, d = g.d;
    const double invL = 1.0 / static_cast<double>(g.spec.L);
    const double measure = std::pow(invL, n);
    cs.Mj.assign(d, 0.0);
    cs.momentum.assign(n, 0.0);
    const std::size_t npts = g.points();
    for (int j = 0; j < d; ++j) {
        const cplx* v = g.component(j);
        for (std::size_t i = 0; i < npts; ++i) {
            const IVec k = g.spec.unindex(i);
            const double m2 = std::norm(v[i]);
            cs.Mj[j] += m2;
            for (int ax = 0; ax < n; ++ax)
                cs.momentum[ax] += static_cast<double>(k[ax]) * invL * m2;
            cs.second_moment += static_cast<double>(sqnorm(k, n)) * invL * invL * m2;
        }
    }
    for (auto& v : cs.Mj) v *= measure;
    for (auto& v : cs.momentum) v *= measure;
    cs.second_moment *= measure;
    for (double v : cs.Mj) cs.M += v;
    for (int j = 0; j < d; ++j)
        for (int k = j + 1; k < d; ++k) {
            cplx x{0.0, 0.0};
            for (std::size_t i = 0; i < npts; ++i)
                x += g.component(j)[i] * std::conj(g.component(k)[i]);
            cs.cross_re.push_back(x.real() * measure);
            cs.cross_im.push_back(x.imag() * measure);
        }
    // angular momenta via grid derivatives
    const GridField gv = to_grid(g);
    for (int ax1 = 0; ax1 < n; ++ax1)
        for (int ax2 = ax1 + 1; ax2 < n; ++ax2) {
            double am = 0.0;
            for (int j = 0; j < d; ++j) {
                std::vector<cplx> comp(gv.component(j), gv.component(j) + npts);
                auto d1 = detail::axis_derivative(comp, n, gv.m, gv.h(), ax1);
                auto d2 = detail::axis_derivative(comp, n, gv.m, gv.h(), ax2);
                for (std::size_t i = 0; i < npts; ++i) {
                    const IVec k = g.spec.unindex(i);
                    const cplx t = (static_cast<double>(k[ax1]) * invL * d2[i] -
                                    static_cast<double>(k[ax2]) * invL * d1[i]) *
                                   std::conj(comp[i]);
                    am += t.imag();
                }
            }
            cs.angular.push_back(am * measure);
        }
    cs.energy = hamiltonian_lattice(g, kind, threads);
    return cs;
}

// ---------------------------------------------------------------------------
// CR time integration, -i dg/dt = T(g, g, g), RK4.

template <typename StateT>
struct CrTrajectory {
    std::vector<double> times;
    std::vector<StateT> states;
    std::vector<ConservedSet> conserved;
};

inline CrTrajectory<HermiteState> integrate_cr(const HermiteState& g0, const HermiteContext& ctx,
                                               double dt, std::int64_t steps,
                                               std::int64_t output_stride) {
    CrTrajectory<HermiteState> traj;
    HermiteState work = g0;
    if (work.lmax != ctx.tensor.lmax) {
        // promote to the tensor's Galerkin span
        HermiteState big(g0.d, ctx.tensor.lmax);
        const std::size_t copyB = std::min(big.B(), g0.B());
        for (int j = 0; j < g0.d; ++j)
            for (std::size_t b = 0; b < copyB; ++b) big.at(j, b) = g0.at(j, b);
        work = std::move(big);
    }
    std::vector<cplx> y = work.c;
    rk4_integrate(
        y, 0.0, dt, steps,
        [&](const std::vector<cplx>& v, double, std::vector<cplx>& out) {
            HermiteState probe = work;
            probe.c = v;
            HermiteState t = cr_T_hermite(probe, ctx.tensor);
            out.resize(t.c.size());
            for (std::size_t i = 0; i < out.size(); ++i) out[i] = cplx{0.0, 1.0} * t.c[i];
        },
        [&](std::int64_t s, double t, const std::vector<cplx>& v) {
            if (output_stride > 0 && (s % output_stride == 0 || s == steps)) {
                HermiteState snap = work;
                snap.c = v;
                traj.times.push_back(t);
                traj.conserved.push_back(conserved_set(snap, ctx));
                traj.states.push_back(std::move(snap));
            }
        });
    if (output_stride <= 0) {
        work.c = std::move(y);
        traj.times.push_back(dt * static_cast<double>(steps));
        traj.conserved.push_back(conserved_set(work, ctx));
        traj.states.push_back(std::move(work));
    }
    return traj;
}

inline CrTrajectory<LatticeField> integrate_cr(const LatticeField& g0, NonlinearityKind kind,
                                               double dt, std::int64_t steps,
                                               std::int64_t output_stride, unsigned threads = 0,
                                               bool with_conserved = true) {
    CrTrajectory<LatticeField> traj;
    std::vector<cplx> y = g0.values;
    rk4_integrate(
        y, 0.0, dt, steps,
        [&](const std::vector<cplx>& v, double, std::vector<cplx>& out) {
            LatticeField probe = g0;
            probe.values = v;
            LatticeField t = cr_T_lattice(probe, kind, threads);
            out.resize(t.values.size());
            for (std::size_t i = 0; i < out.size(); ++i) out[i] = cplx{0.0, 1.0} * t.values[i];
        },
        [&](std::int64_t s, double t, const std::vector<cplx>& v) {
            if (output_stride > 0 && (s % output_stride == 0 || s == steps)) {
                LatticeField snap = g0;
                snap.values = v;
                traj.times.push_back(t);
                if (with_conserved) traj.conserved.push_back(conserved_set(snap, kind, threads));
                traj.states.push_back(std::move(snap));
            }
        });
    if (output_stride <= 0) {
        LatticeField snap = g0;
        snap.values = std::move(y);
        traj.times.push_back(dt * static_cast<double>(steps));
        if (with_conserved) traj.conserved.push_back(conserved_set(snap, kind, threads));
        traj.states.push_back(std::move(snap));
    }
    return traj;
}

// ---------------------------------------------------------------------------
// Dynamics on the first eigenspace E_1: g_j = c_{j,+} phi_{1,1} + c_{j,-} phi_{1,-1}.

struct E1State {
    int d = 1;
    std::vector<cplx> cp, cm;  // c_{j,1}, c_{j,-1}
    explicit E1State(int d_ = 1) : d(d_), cp(d_, cplx{0.0, 0.0}), cm(d_, cplx{0.0, 0.0}) {}
};

// The E_1 coefficient system exactly as displayed for this eigenspace:
//   i dc_{j,+}/dt = -{ pi/4 |c_{j,+}|^2 c_{j,+} + pi/2 |c_{j,-}|^2 c_{j,+}
//                    + pi/4 sum_{k != j} |c_{k,-}|^2 c_{j,+}
//                    + pi/4 sum_{k != j} c_{k,+} c_{k,-} conj(c_{j,-}) }
// and its mirror with + and - exchanged. (For d = 1 this coincides with the
// restriction of the full Hermite flow; the printed cross sums differ from
// that restriction for d >= 2.)
inline E1State e1_rhs(const E1State& s) {
    E1State out(s.d);
    const double q = M_PI / 4.0;
    for (int j = 0; j < s.d; ++j) {
        cplx bp = q * std::norm(s.cp[j]) * s.cp[j] + 2.0 * q * std::norm(s.cm[j]) * s.cp[j];
        cplx bm = q * std::norm(s.cm[j]) * s.cm[j] + 2.0 * q * std::norm(s.cp[j]) * s.cm[j];
        for (int k = 0; k < s.d; ++k) {
            if (k == j) continue;
            bp += q * std::norm(s.cm[k]) * s.cp[j] + q * s.cp[k] * s.cm[k] * std::conj(s.cm[j]);
            bm += q * std::norm(s.cp[k]) * s.cm[j] + q * s.cm[k] * s.cp[k] * std::conj(s.cp[j]);
        }
        // i c' = -{...}  =>  c' = i {...}
        out.cp[j] = cplx{0.0, 1.0} * bp;
        out.cm[j] = cplx{0.0, 1.0} * bm;
    }
    return out;
}

// Quasi-periodic solution families of the E_1 system. Initial data must
// satisfy the family's constraint to within `tol`, otherwise this throws.
// Families:
//   1: c_{j,-} = 0           -> rate_+ = pi/4 |c_{j,+}|^2
//   2: c_{j,+} = 0           -> mirror
//   3: one active component  -> rate_+ = pi/4 |c_+|^2 + pi/2 |c_-|^2, mirror
//   4: conj(c_{j,-}) = lambda_j c_{j,+}, |lambda_j| = 1. The phase rates
//      include the lambda_j lambda_k-bar cross factor; a consistent
//      quasi-periodic solution additionally needs those factors real and the
//      per-component rate sums equal, which is validated here.
//   5: pair (j,k): c_{j,+} = lambda c_{k,+}, c_{j,-} = mu c_{k,-},
//      |lambda| = |mu| = 1, lambda = conj(mu)
//                       -> rate_{+} = pi/4 |c_+|^2 + pi |c_-|^2, mirror
//   6: pair (j,k): c_{j,-} = lambda c_{k,+}, c_{j,+} = mu c_{k,-},
//      lambda = conj(mu)
//                       -> rate_{+} = pi/2 |c_+|^2 + 3pi/4 |c_-|^2, mirror
// Families 5 and 6 appear with one printed formula; the rates here are the
// ones that actually solve the system under each constraint set and reduce
// to the printed formula when all moduli coincide.
inline E1State e1_closed_form(int family, const E1State& s0, double t, double tol = 1e-12) {
    const double q = M_PI / 4.0;
    E1State out(s0.d);
    const auto rotate = [&](const E1State& s, const std::vector<double>& rp,
                            const std::vector<double>& rm) {
        for (int j = 0; j < s.d; ++j) {
            out.cp[j] = s.cp[j] * std::polar(1.0, rp[j] * t);
            out.cm[j] = s.cm[j] * std::polar(1.0, rm[j] * t);
        }
    };
    std::vector<double> rp(s0.d, 0.0), rm(s0.d, 0.0);
    switch (family) {
        case 1: {
            for (int j = 0; j < s0.d; ++j)
                if (std::abs(s0.cm[j]) > tol)
                    throw std::invalid_argument("e1_closed_form: family 1 needs c_- = 0");
            for (int j = 0; j < s0.d; ++j) rp[j] = q * std::norm(s0.cp[j]);
            break;
        }
        case 2: {
            for (int j = 0; j < s0.d; ++j)
                if (std::abs(s0.cp[j]) > tol)
                    throw std::invalid_argument("e1_closed_form: family 2 needs c_+ = 0");
            for (int j = 0; j < s0.d; ++j) rm[j] = q * std::norm(s0.cm[j]);
            break;
        }
        case 3: {
            int active = -1;
            for (int j = 0; j < s0.d; ++j) {
                if (std::abs(s0.cp[j]) > tol || std::abs(s0.cm[j]) > tol) {
                    if (active >= 0)
                        throw std::invalid_argument(
                            "e1_closed_form: family 3 needs a single active component");
                    active = j;
                }
            }
            if (active >= 0) {
                rp[active] = q * std::norm(s0.cp[active]) + 2.0 * q * std::norm(s0.cm[active]);
                rm[active] = q * std::norm(s0.cm[active]) + 2.0 * q * std::norm(s0.cp[active]);
            }
            break;
        }
        case 4: {
            std::vector<int> act;
            std::vector<cplx> lambda(s0.d, cplx{0.0, 0.0});
            double r = -1.0;
            for (int j = 0; j < s0.d; ++j) {
                const double ap = std::abs(s0.cp[j]), am = std::abs(s0.cm[j]);
                if (ap <= tol && am <= tol) continue;
                if (ap <= tol || std::abs(ap - am) > tol)
                    throw std::invalid_argument(
                        "e1_closed_form: family 4 needs conj(c_-) = lambda c_+, |lambda| = 1");
                lambda[j] = std::conj(s0.cm[j]) / s0.cp[j];
                if (r < 0.0) r = ap;
                else if (std::abs(ap - r) > tol)
                    throw std::invalid_argument(
                        "e1_closed_form: family 4 quasi-periodic form needs equal moduli");
                act.push_back(j);
            }
            for (int j : act) {
                double rate = 3.0 * q * r * r;
                for (int k : act) {
                    if (k == j) continue;
                    const cplx f = lambda[j] * std::conj(lambda[k]);
                    if (std::abs(f.imag()) > 10 * tol)
                        throw std::invalid_argument(
                            "e1_closed_form: family 4 needs real lambda_j conj(lambda_k)");
                    rate += q * (1.0 + f.real()) * r * r;
                }
                rp[j] = rm[j] = rate;
            }
            for (std::size_t i = 1; i < act.size(); ++i)
                if (std::abs(rp[act[i]] - rp[act[0]]) > 1e-9)
                    throw std::invalid_argument(
                        "e1_closed_form: family 4 rate sums must coincide across components");
            break;
        }
        case 5:
        case 6: {
            std::vector<int> act;
            for (int j = 0; j < s0.d; ++j)
                if (std::abs(s0.cp[j]) > tol || std::abs(s0.cm[j]) > tol) act.push_back(j);
            if (act.size() != 2)
                throw std::invalid_argument(
                    "e1_closed_form: families 5/6 need exactly one active pair");
            const int j = act[0], k = act[1];
            cplx lam, mu;
            if (family == 5) {
                if (std::abs(std::abs(s0.cp[j]) - std::abs(s0.cp[k])) > tol ||
                    std::abs(std::abs(s0.cm[j]) - std::abs(s0.cm[k])) > tol)
                    throw std::invalid_argument("e1_closed_form: family 5 pairing violated");
                lam = (std::abs(s0.cp[k]) > tol) ? s0.cp[j] / s0.cp[k] : cplx{1.0, 0.0};
                mu = (std::abs(s0.cm[k]) > tol) ? s0.cm[j] / s0.cm[k] : std::conj(lam);
            } else {
                if (std::abs(std::abs(s0.cm[j]) - std::abs(s0.cp[k])) > tol ||
                    std::abs(std::abs(s0.cp[j]) - std::abs(s0.cm[k])) > tol)
                    throw std::invalid_argument("e1_closed_form: family 6 pairing violated");
                lam = (std::abs(s0.cp[k]) > tol) ? s0.cm[j] / s0.cp[k] : cplx{1.0, 0.0};
                mu = (std::abs(s0.cm[k]) > tol) ? s0.cp[j] / s0.cm[k] : std::conj(lam);
            }
            if (std::abs(std::abs(lam) - 1.0) > tol || std::abs(std::abs(mu) - 1.0) > tol ||
                std::abs(lam - std::conj(mu)) > tol)
                throw std::invalid_argument(
                    "e1_closed_form: families 5/6 need |lambda| = |mu| = 1, lambda = conj(mu)");
            for (int a : act) {
                const double p2 = std::norm(s0.cp[a]), m2 = std::norm(s0.cm[a]);
                if (family == 5) {
                    rp[a] = q * p2 + 4.0 * q * m2;
                    rm[a] = q * m2 + 4.0 * q * p2;
                } else {
                    rp[a] = 2.0 * q * p2 + 3.0 * q * m2;
                    rm[a] = 2.0 * q * m2 + 3.0 * q * p2;
                }
            }
            break;
        }
        default:
            throw std::invalid_argument("e1_closed_form: family must be 1..6");
    }
    rotate(s0, rp, rm);
    return out;
}

// Hamiltonian restricted to E_1 in the printed variables; real, and for
// d = 1 equal to pi/4 M^2 + pi/2 |c_+|^2 |c_-|^2.
inline double e1_energy(const E1State& s) {
    const double q = M_PI / 4.0;
    double e = 0.0;
    for (int j = 0; j < s.d; ++j)
        e += q * std::norm(s.cp[j]) * std::norm(s.cp[j]) +
             q * std::norm(s.cm[j]) * std::norm(s.cm[j]);
    for (int j = 0; j < s.d; ++j)
        for (int k = 0; k < s.d; ++k)
            e += 2.0 * q * std::norm(s.cp[j]) * std::norm(s.cm[k]);
    cplx z{0.0, 0.0};
    for (int j = 0; j < s.d; ++j) z += s.cp[j] * s.cm[j];
    e += 2.0 * q * std::norm(z);
    return e;
}

}  // namespace cr
