#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "cr/hermite.hpp"
#include "cr/lattice.hpp"
#include "cr/resonance.hpp"

namespace cr {

enum class NonlinearityKind {
    VectorProjected,  // Lap^{-1} grad div (|u|^2 u), requires d = n
    CoupledCubic,     // |u|^2 u, any d
};

// ---------------------------------------------------------------------------
// Strategy 1: special-Hermite matrix elements (n = 2, coupled cubic).
//
//   out_{j,l4,m4} = sum M(l1,m1,l2,m2,l3,m3) (sum_j' c_{j',1} conj(c_{j',2}))
//                   c_{j,3}
//
// realizing the trilinear resonant operator on the Galerkin span of the
// tensor. Output is sized at the tensor's lmax.
inline HermiteState cr_T_hermite(const HermiteState& s, const HermiteTensor& T) {
    if (s.lmax > T.lmax) throw std::invalid_argument("cr_T_hermite: state.lmax > tensor.lmax");
    const std::size_t Bs = s.B();
    if (T.radial_only) {
        // the m = 0 build carries no entries for other m; reject states with
        // support the tensor cannot see (roundoff-size coefficients pass)
        double scale = 0.0, off = 0.0;
        for (int j = 0; j < s.d; ++j)
            for (std::size_t b = 0; b < Bs; ++b) {
                const double a = std::abs(s.at(j, b));
                scale = std::max(scale, a);
                if (HermiteBasis::lm_of(b).second != 0) off = std::max(off, a);
            }
        if (off > 1e-10 * scale)
            throw std::invalid_argument(
                "cr_T_hermite: radial tensor applied to non-radial state");
    }
    std::vector<cplx> P(Bs * Bs, cplx{0.0, 0.0});
    for (std::size_t i1 = 0; i1 < Bs; ++i1)
        for (std::size_t i2 = 0; i2 < Bs; ++i2) {
            cplx acc{0.0, 0.0};
            for (int j = 0; j < s.d; ++j) acc += s.at(j, i1) * std::conj(s.at(j, i2));
            P[i1 * Bs + i2] = acc;
        }
    HermiteState out(s.d, T.lmax);
    for (const auto& e : T.entries) {
        if (e.i1 >= Bs || e.i2 >= Bs || e.i3 >= Bs) continue;
        const cplx pw = e.val * P[static_cast<std::size_t>(e.i1) * Bs + e.i2];
        for (int j = 0; j < s.d; ++j) out.at(j, e.i4) += pw * s.at(j, e.i3);
    }
    return out;
}

// Quartic Hamiltonian via the tensor contraction, E = Re <T(c), c>.
inline double hamiltonian_hermite(const HermiteState& s, const HermiteTensor& T) {
    HermiteState t = cr_T_hermite(s, T);
    cplx e{0.0, 0.0};
    const std::size_t Bs = s.B();
    for (int j = 0; j < s.d; ++j)
        for (std::size_t b = 0; b < Bs; ++b) e += t.at(j, b) * std::conj(s.at(j, b));
    return e.real();
}

// Wirtinger gradient with respect to conj(c): grad = 2 T(c), so that the
// flow -i dg/dt = (1/2) grad reproduces -i dg/dt = T(g,g,g).
inline HermiteState hamiltonian_grad_cbar(const HermiteState& s, const HermiteTensor& T) {
    HermiteState t = cr_T_hermite(s, T);
    for (auto& v : t.c) v *= 2.0;
    return t;
}

// ---------------------------------------------------------------------------
// Strategy 2: harmonic-oscillator time quadrature (n = 2).
//
//   T_j = 2 pi * integral_{-pi/4}^{pi/4} e^{itH} [ (sum_l e^{-itH}f_l
//          conj(e^{-itH}f_l)) e^{-itH}f_j ] dt,
//
// with e^{-itH} diagonal on the basis (phase e^{-2i(l+1)t}). The pointwise
// products are formed in x space on the alpha = 2 quadrature grid, so this
// route shares no contraction table with cr_T_hermite. Trapezoid in t; the
// integrand is a trigonometric polynomial with frequencies 2(l1-l2+l3-l4),
// so any panel count above 2*lmax is exact.
inline HermiteState cr_T_oscillator(const HermiteState& s, const HermiteBasis& basis,
                                    const BasisTable& tab2, int t_panels) {
    if (tab2.alpha != 2.0)
        throw std::invalid_argument("cr_T_oscillator: needs an alpha = 2 table");
    if (s.lmax > basis.lmax)
        throw std::invalid_argument("cr_T_oscillator: state.lmax > basis.lmax");
    if (t_panels < 2) throw std::invalid_argument("cr_T_oscillator: t_panels must be >= 2");
    const std::size_t Bs = s.B();
    const std::size_t nn = tab2.nodes();
    const int d = s.d;

    HermiteState out(d, s.lmax);
    std::vector<cplx> phase(Bs), F(static_cast<std::size_t>(d) * nn), p(nn);
    std::vector<double> sfield(nn);
    const double h = (M_PI / 2.0) / t_panels;
    for (int it = 0; it <= t_panels; ++it) {
        const double t = -M_PI / 4.0 + it * h;
        const double tw = h * ((it == 0 || it == t_panels) ? 0.5 : 1.0);
        for (std::size_t b = 0; b < Bs; ++b)
            phase[b] = std::polar(1.0, -2.0 * (basis.lm[b].first + 1) * t);
        // synthesize evolved fields
        for (int j = 0; j < d; ++j) {
            cplx* Fj = F.data() + static_cast<std::size_t>(j) * nn;
            std::fill(Fj, Fj + nn, cplx{0.0, 0.0});
            for (std::size_t b = 0; b < Bs; ++b) {
                const cplx cb = s.at(j, b) * phase[b];
                if (cb == cplx{0.0, 0.0}) continue;
                const cplx* r = tab2.row(b);
                for (std::size_t q = 0; q < nn; ++q) Fj[q] += cb * r[q];
            }
        }
        for (std::size_t q = 0; q < nn; ++q) {
            double sv = 0.0;
            for (int j = 0; j < d; ++j)
                sv += std::norm(F[static_cast<std::size_t>(j) * nn + q]);
            sfield[q] = sv;
        }
        for (int j = 0; j < d; ++j) {
            const cplx* Fj = F.data() + static_cast<std::size_t>(j) * nn;
            for (std::size_t q = 0; q < nn; ++q) p[q] = sfield[q] * Fj[q] * tab2.w2(q);
            for (std::size_t b = 0; b < Bs; ++b) {
                const cplx* r = tab2.row(b);
                cplx proj{0.0, 0.0};
                for (std::size_t q = 0; q < nn; ++q) proj += std::conj(r[q]) * p[q];
                out.at(j, b) += tw * std::conj(phase[b]) * proj;  // e^{+2i(l+1)t}
            }
        }
    }
    for (auto& v : out.c) v *= 2.0 * M_PI;
    return out;
}

// ---------------------------------------------------------------------------
// Strategy 3: normalized lattice resonant sum,
//   T_j(K) ~ (1/Z_n(L)) sum_{R_0(K)} P(K)[ (sum_l g_l(K1) conj(g_l(K2)))
//            g_.(K3) ],
// the Riemann-sum approximant of the continuous operator.
inline LatticeField cr_T_lattice(const LatticeField& g, NonlinearityKind kind,
                                 unsigned threads = 0) {
    if (kind == NonlinearityKind::VectorProjected && g.d != g.spec.n)
        throw std::invalid_argument("cr_T_lattice: VectorProjected requires d = n");
    LatticeField out(g.spec, g.d);
    const double scale = 1.0 / Z_n(g.spec.n, static_cast<double>(g.spec.L));
    if (g.spec.n == 2) {
        accumulate_resonant_cubic_2d(g, 0, scale, out, threads);
    } else {
        // generic per-mode path for small n >= 3 instances
        const std::size_t npts = g.points();
        for (std::size_t i = 0; i < npts; ++i) {
            const IVec k = g.spec.unindex(i);
            for (const auto& pr : enumerate_resonances(g.spec, k, 0)) {
                IVec k3{0, 0, 0, 0};
                for (int a = 0; a < g.spec.n; ++a) k3[a] = k[a] + pr.k2[a] - pr.k1[a];
                const std::size_t i1 = g.spec.index(pr.k1), i2 = g.spec.index(pr.k2),
                                  i3 = g.spec.index(k3);
                cplx pair{0.0, 0.0};
                for (int l = 0; l < g.d; ++l)
                    pair += g.component(l)[i1] * std::conj(g.component(l)[i2]);
                for (int j = 0; j < g.d; ++j)
                    out.component(j)[i] += scale * pair * g.component(j)[i3];
            }
        }
    }
    if (kind == NonlinearityKind::VectorProjected) out = project_irrotational(out);
    return out;
}

// Lattice-strategy Hamiltonian: E ~ (1/L^n) Re <T(g), g> (Riemann measure).
inline double hamiltonian_lattice(const LatticeField& g, NonlinearityKind kind,
                                  unsigned threads = 0) {
    LatticeField t = cr_T_lattice(g, kind, threads);
    cplx e{0.0, 0.0};
    for (std::size_t i = 0; i < g.values.size(); ++i) e += t.values[i] * std::conj(g.values[i]);
    const double measure = std::pow(static_cast<double>(g.spec.L), -g.spec.n);
    return e.real() * measure;
}

// ---------------------------------------------------------------------------
// Stationary-wave identity checks for (mu + lambda |K|^2) phi = T(phi,phi,phi):
// energy identity, Pohozaev identity, and their algebraic combinations
//   lambda ||K phi||^2 = (n-2)/4 H,   mu ||phi||^2 = (6-n)/4 H.
struct IdentityReport {
    double mass = 0.0;      // ||phi||^2
    double kmoment = 0.0;   // ||K phi||^2
    double H = 0.0;         // quartic Hamiltonian
    double energy_residual = 0.0;
    double pohozaev_residual = 0.0;
    double lambda_residual = 0.0;
    double mu_residual = 0.0;
};

inline IdentityReport identity_report_from(double mass, double kmom, double H, double lambda,
                                           double mu, int n) {
    IdentityReport r;
    r.mass = mass;
    r.kmoment = kmom;
    r.H = H;
    r.energy_residual = lambda * kmom + mu * mass - H;
    r.pohozaev_residual =
        lambda * (0.5 * n - 1.0) * kmom + mu * (0.5 * n) * mass - (0.5 + 0.25 * n) * H;
    r.lambda_residual = lambda * kmom - 0.25 * (n - 2) * H;
    r.mu_residual = mu * mass - 0.25 * (6 - n) * H;
    return r;
}

inline IdentityReport check_identities(const HermiteState& s, const HermiteBasis& basis,
                                       const BasisTable& tab1, const HermiteTensor& T,
                                       double lambda, double mu) {
    if (tab1.alpha != 1.0)
        throw std::invalid_argument("check_identities: needs an alpha = 1 table");
    const double mass = s.mass();
    const std::size_t nn = tab1.nodes();
    double kmom = 0.0;
    std::vector<cplx> f(nn);
    for (int j = 0; j < s.d; ++j) {
        std::fill(f.begin(), f.end(), cplx{0.0, 0.0});
        for (std::size_t b = 0; b < s.B(); ++b) {
            const cplx cb = s.at(j, b);
            if (cb == cplx{0.0, 0.0}) continue;
            const cplx* r = tab1.row(b);
            for (std::size_t q = 0; q < nn; ++q) f[q] += cb * r[q];
        }
        for (std::size_t q = 0; q < nn; ++q) {
            const double x = tab1.x[q / tab1.Q], y = tab1.x[q % tab1.Q];
            kmom += tab1.w2(q) * (x * x + y * y) * std::norm(f[q]);
        }
    }
    return identity_report_from(mass, kmom, hamiltonian_hermite(s, T), lambda, mu, 2);
}

inline IdentityReport check_identities(const LatticeField& g, NonlinearityKind kind,
                                       double lambda, double mu, unsigned threads = 0) {
    const double measure = std::pow(static_cast<double>(g.spec.L), -g.spec.n);
    double mass = 0.0, kmom = 0.0;
    const double invL2 = 1.0 / (static_cast<double>(g.spec.L) * g.spec.L);
    for (int j = 0; j < g.d; ++j) {
        const cplx* v = g.component(j);
        for (std::size_t i = 0; i < g.points(); ++i) {
            const IVec k = g.spec.unindex(i);
            const double nrm = std::norm(v[i]);
            mass += nrm;
            kmom += static_cast<double>(sqnorm(k, g.spec.n)) * invL2 * nrm;
        }
    }
    mass *= measure;
    kmom *= measure;
    return identity_report_from(mass, kmom, hamiltonian_lattice(g, kind, threads), lambda, mu,
                                g.spec.n);
}

}  // namespace cr
