#pragma once

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cr/cr_operator.hpp"
#include "cr/lattice.hpp"
#include "cr/parallel.hpp"
#include "cr/resonance.hpp"

namespace cr {

enum class EvolutionMode { FullOscillatory, ResonantOnly };

// Interaction-picture amplitudes a_{j,K} and their clock.
struct SimState {
    LatticeField a;
    double t = 0.0;
    double eps = 0.0;  // data size; the coupling is eps^2
    EvolutionMode mode = EvolutionMode::ResonantOnly;
    NonlinearityKind kind = NonlinearityKind::CoupledCubic;
};

struct NumericalAbort : std::runtime_error {
    std::int64_t step;
    explicit NumericalAbort(std::int64_t s)
        : std::runtime_error("non-finite state at step " + std::to_string(s)), step(s) {}
};

// da/dt for the lattice system in the interaction picture:
//   -i da_{j,K}/dt = (eps^2 / L^{2n}) P(K)[ sum_{S3=0}
//                    (sum_l a_{l,K1} conj(a_{l,K2})) a_{.,K3} e(Omega_3 t) ],
// restricted to mu = 0 with unit phase in ResonantOnly mode. Phases are
// computed from the integer Omega_3 L^2, one complex exponential per level.
inline LatticeField vnls_rhs(const SimState& st, const ResonantIndex& res) {
    const LatticeField& a = st.a;
    if (!(res.spec == a.spec)) throw std::invalid_argument("vnls_rhs: index/spec mismatch");
    if (st.kind == NonlinearityKind::VectorProjected && a.d != a.spec.n)
        throw std::invalid_argument("vnls_rhs: VectorProjected requires d = n");

    std::vector<std::pair<std::int64_t, const LevelIndex*>> lv;
    if (st.mode == EvolutionMode::ResonantOnly) {
        auto it = res.levels.find(0);
        if (it == res.levels.end())
            throw std::invalid_argument("vnls_rhs: ResonantOnly needs the mu = 0 level");
        lv.emplace_back(0, &it->second);
    } else {
        if (!res.complete) {
            std::ostringstream msg;
            msg << "vnls_rhs: FullOscillatory requires all levels; missing:";
            for (auto m : achievable_levels(a.spec))
                if (!res.has_level(m)) msg << ' ' << m;
            throw std::invalid_argument(msg.str());
        }
        for (const auto& [mu, idx] : res.levels) lv.emplace_back(mu, &idx);
    }

    const double L2 = static_cast<double>(a.spec.L) * static_cast<double>(a.spec.L);
    const double coupling =
        st.eps * st.eps / std::pow(static_cast<double>(a.spec.L), 2.0 * a.spec.n);
    const std::size_t npts = a.points();
    const int d = a.d;

    LatticeField out(a.spec, d);
    std::vector<cplx> acc(static_cast<std::size_t>(d));
    for (const auto& [muL2, idx] : lv) {
        cplx phase{1.0, 0.0};
        if (st.mode == EvolutionMode::FullOscillatory && muL2 != 0) {
            constexpr long double kPi = 3.14159265358979323846264338327950288L;
            const long double cycles = static_cast<long double>(muL2) *
                                       static_cast<long double>(st.t) / L2;
            const long double frac = cycles - std::floor(cycles);
            phase = std::polar(1.0, static_cast<double>(2.0L * kPi * frac));
        }
        for (std::size_t i = 0; i < npts; ++i) {
            std::fill(acc.begin(), acc.end(), cplx{0.0, 0.0});
            for (std::uint64_t e = idx->offsets[i]; e < idx->offsets[i + 1]; ++e) {
                const auto& tr = idx->triples[e];
                cplx pair{0.0, 0.0};
                for (int l = 0; l < d; ++l)
                    pair += a.component(l)[tr.i1] * std::conj(a.component(l)[tr.i2]);
                for (int j = 0; j < d; ++j) acc[j] += pair * a.component(j)[tr.i3];
            }
            for (int j = 0; j < d; ++j) out.component(j)[i] += phase * acc[j];
        }
    }
    if (st.kind == NonlinearityKind::VectorProjected) out = project_irrotational(out);
    const cplx scale = cplx{0.0, 1.0} * coupling;
    for (auto& v : out.values) v *= scale;
    return out;
}

// ---------------------------------------------------------------------------
// Generic fixed-step RK4 over complex coefficient vectors. Oscillatory
// factors are re-evaluated at each stage time through the rhs callback.
inline void rk4_integrate(std::vector<cplx>& y, double t0, double dt, std::int64_t steps,
                          const std::function<void(const std::vector<cplx>&, double,
                                                   std::vector<cplx>&)>& rhs,
                          const std::function<void(std::int64_t, double,
                                                   const std::vector<cplx>&)>& observer = {}) {
    const std::size_t N = y.size();
    std::vector<cplx> k1(N), k2(N), k3(N), k4(N), tmp(N);
    if (observer) observer(0, t0, y);
    for (std::int64_t s = 0; s < steps; ++s) {
        const double t = t0 + static_cast<double>(s) * dt;
        rhs(y, t, k1);
        for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
        rhs(tmp, t + 0.5 * dt, k2);
        for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
        rhs(tmp, t + 0.5 * dt, k3);
        for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + dt * k3[i];
        rhs(tmp, t + dt, k4);
        for (std::size_t i = 0; i < N; ++i)
            y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        for (std::size_t i = 0; i < N; ++i)
            if (!std::isfinite(y[i].real()) || !std::isfinite(y[i].imag()))
                throw NumericalAbort(s);
        if (observer) observer(s + 1, t + dt, y);
    }
}

struct LatticeTrajectory {
    std::vector<double> times;
    std::vector<LatticeField> states;  // every output_stride steps (and t = 0)
};

// Fixed-step RK4 for the indexed lattice system.
inline LatticeTrajectory integrate_lattice(const SimState& init, const ResonantIndex& res,
                                           double dt, std::int64_t steps,
                                           std::int64_t output_stride = 0) {
    if (!(dt > 0.0)) throw std::invalid_argument("integrate_lattice: dt must be positive");
    LatticeTrajectory traj;
    SimState st = init;
    std::vector<cplx> y = st.a.values;
    rk4_integrate(
        y, init.t, dt, steps,
        [&](const std::vector<cplx>& v, double t, std::vector<cplx>& out) {
            SimState probe = init;
            probe.a.values = v;
            probe.t = t;
            LatticeField f = vnls_rhs(probe, res);
            out = std::move(f.values);
        },
        [&](std::int64_t s, double t, const std::vector<cplx>& v) {
            const bool last = (s == steps);
            if (output_stride > 0 && (s % output_stride == 0 || last)) {
                LatticeField snap = init.a;
                snap.values = v;
                traj.times.push_back(t);
                traj.states.push_back(std::move(snap));
            }
        });
    if (output_stride <= 0) {
        LatticeField snap = init.a;
        snap.values = std::move(y);
        traj.times.push_back(init.t + dt * static_cast<double>(steps));
        traj.states.push_back(std::move(snap));
    }
    return traj;
}

// ---------------------------------------------------------------------------
// First-order normal form: v = u + eps^2 H3(u) with
//   H3_{j,K}(u) = -(1/L^{2n}) sum_{S3=0, Omega3 != 0} 1/(2 pi Omega3)
//                 P(K)[ (sum_l u_{l,K1} conj(u_{l,K2})) u_{.,K3} ].
// Omega3 = (integer) / L^2 exactly, so the weights carry no rounding.
inline LatticeField normal_form_h3(const LatticeField& u, double eps, NonlinearityKind kind,
                                   unsigned threads = 0) {
    if (kind == NonlinearityKind::VectorProjected && u.d != u.spec.n)
        throw std::invalid_argument("normal_form_h3: VectorProjected requires d = n");
    const LatticeSpec& spec = u.spec;
    const std::size_t npts = u.points();
    const int d = u.d;
    const double L2 = static_cast<double>(spec.L) * static_cast<double>(spec.L);
    const double scale = -eps * eps / std::pow(static_cast<double>(spec.L), 2.0 * spec.n);

    LatticeField h(spec, d);
    parallel_chunks(
        static_cast<std::int64_t>(npts),
        [&](std::int64_t ib, std::int64_t ie, unsigned) {
            std::vector<cplx> acc(static_cast<std::size_t>(d));
            for (std::int64_t i = ib; i < ie; ++i) {
                const IVec k = spec.unindex(static_cast<std::size_t>(i));
                const std::int64_t k2n = sqnorm(k, spec.n);
                std::fill(acc.begin(), acc.end(), cplx{0.0, 0.0});
                // direct scan over (k1, k2); k3 = k + k2 - k1
                const std::size_t M = npts;
                for (std::size_t i1 = 0; i1 < M; ++i1) {
                    const IVec k1 = spec.unindex(i1);
                    for (std::size_t i2 = 0; i2 < M; ++i2) {
                        const IVec k2 = spec.unindex(i2);
                        IVec k3{0, 0, 0, 0};
                        bool inside = true;
                        for (int ax = 0; ax < spec.n; ++ax) {
                            k3[ax] = k[ax] + k2[ax] - k1[ax];
                            inside &= (k3[ax] >= -spec.kmax && k3[ax] <= spec.kmax);
                        }
                        if (!inside) continue;
                        const std::int64_t omegaL2 =
                            sqnorm(k1, spec.n) - sqnorm(k2, spec.n) + sqnorm(k3, spec.n) - k2n;
                        if (omegaL2 == 0) continue;
                        const double wgt = L2 / (2.0 * M_PI * static_cast<double>(omegaL2));
                        const std::size_t i3 = spec.index(k3);
                        cplx pair{0.0, 0.0};
                        for (int l = 0; l < d; ++l)
                            pair += u.component(l)[i1] * std::conj(u.component(l)[i2]);
                        for (int j = 0; j < d; ++j)
                            acc[j] += wgt * pair * u.component(j)[i3];
                    }
                }
                for (int j = 0; j < d; ++j) h.component(j)[i] = acc[j];
            }
        },
        threads);

    if (kind == NonlinearityKind::VectorProjected) h = project_irrotational(h);
    LatticeField v = u;
    for (std::size_t i = 0; i < v.values.size(); ++i) v.values[i] += scale * h.values[i];
    return v;
}

}  // namespace cr
