#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "cr/config.hpp"
#include "cr/cr_dynamics.hpp"
#include "cr/cr_operator.hpp"
#include "cr/io.hpp"
#include "cr/spectral.hpp"
#include "cr/vnls.hpp"

namespace cr {

// ---------------------------------------------------------------------------
// Initial-data profiles. All are Schwartz, so every X^{l,N} weight is finite.

struct ProfileSpec {
    std::string profile = "gaussian";  // gaussian | gaussian_k | hermite
    double amplitude = 1.0;
    double width = 1.0;  // gaussian: amp * exp(-|K|^2 / (2 width^2))
    int l = 0, m = 0;    // hermite profile indices
};

inline ProfileSpec profile_from_json(const json& j) {
    ProfileSpec p;
    p.profile = j.at("profile").get<std::string>();
    p.amplitude = j.at("amplitude").get<double>();
    p.width = j.at("width").get<double>();
    p.l = j.at("l").get<int>();
    p.m = j.at("m").get<int>();
    return p;
}

inline cplx profile_value(const ProfileSpec& p, const double* K, int n, int j,
                          const HermiteBasis* basis = nullptr) {
    double k2 = 0.0;
    for (int i = 0; i < n; ++i) k2 += K[i] * K[i];
    if (p.profile == "gaussian")
        return p.amplitude * std::exp(-k2 / (2.0 * p.width * p.width));
    if (p.profile == "gaussian_k")
        return p.amplitude * K[j] * std::exp(-k2 / (2.0 * p.width * p.width));
    if (p.profile == "hermite") {
        if (n != 2 || basis == nullptr)
            throw std::invalid_argument("profile_value: hermite profile needs n = 2 and a basis");
        const int b = basis->index_of(p.l, p.m);
        if (b < 0) throw std::invalid_argument("profile_value: bad hermite (l, m)");
        return p.amplitude * basis->eval(static_cast<std::size_t>(b), cplx{K[0], K[1]});
    }
    throw std::invalid_argument("profile_value: unknown profile " + p.profile);
}

inline LatticeField sample_profile(const LatticeSpec& spec, int d, const ProfileSpec& p,
                                   const HermiteBasis* basis = nullptr) {
    LatticeField f(spec, d);
    const double invL = 1.0 / static_cast<double>(spec.L);
    double K[4];
    for (std::size_t i = 0; i < f.points(); ++i) {
        const IVec k = spec.unindex(i);
        for (int a = 0; a < spec.n; ++a) K[a] = static_cast<double>(k[a]) * invL;
        for (int j = 0; j < d; ++j) f.component(j)[i] = profile_value(p, K, spec.n, j, basis);
    }
    return f;
}

// ---------------------------------------------------------------------------
// Theorem-style comparison: lattice dynamics against the CR reference on the
// matched resonant clock, e(L, tau) = || a(tau T_R) - g(tau) ||_{X^l}.

struct LRunInfo {
    std::int64_t L = 0, kmax_res = 0, kmax_full = 0;
    double eps2 = 0.0, eps2_L_gamma = 0.0, T_R = 0.0, delta_L = 0.0;
    double wall_resonant = 0.0, wall_full = 0.0;
    double mass_drift_full = 0.0;   // integrator health metric
    double lattice_tail = 0.0;      // <K>^{l+n+2} |g0| at the cutoff / peak
    double reference_tail = 0.0;    // relative L2 mass outside the Hermite span
};

struct ModePoint {
    std::int64_t L = 0;
    double tau = 0.0, t = 0.0, e = 0.0;
};

struct ComparisonReport {
    json config_echo;
    std::vector<LRunInfo> runs;
    std::vector<ModePoint> resonant, full;
    double slope_resonant = 0.0, slope_full = 0.0;  // d ln e / d ln L at final tau
};

inline bool operator==(const LRunInfo& a, const LRunInfo& b) {
    return a.L == b.L && a.kmax_res == b.kmax_res && a.kmax_full == b.kmax_full &&
           a.eps2 == b.eps2 && a.eps2_L_gamma == b.eps2_L_gamma && a.T_R == b.T_R &&
           a.delta_L == b.delta_L && a.wall_resonant == b.wall_resonant &&
           a.wall_full == b.wall_full && a.mass_drift_full == b.mass_drift_full &&
           a.lattice_tail == b.lattice_tail && a.reference_tail == b.reference_tail;
}
inline bool operator==(const ModePoint& a, const ModePoint& b) {
    return a.L == b.L && a.tau == b.tau && a.t == b.t && a.e == b.e;
}
inline bool operator==(const ComparisonReport& a, const ComparisonReport& b) {
    return a.config_echo == b.config_echo && a.runs == b.runs && a.resonant == b.resonant &&
           a.full == b.full && a.slope_resonant == b.slope_resonant &&
           a.slope_full == b.slope_full;
}

inline double delta_L(int n, double L, double gamma) {
    return n == 2 ? 1.0 / std::log(L) : std::pow(L, -1.0 + gamma);
}

namespace detail {

// The CR reference evolved to time tau, evaluated on a lattice.
class CrReference {
public:
    // Hermite backend: exact continuous operator on the Galerkin span.
    CrReference(const ProfileSpec& g0, int d, int lmax, double dt)
        : dt_(dt), basis_(lmax), tab1_(basis_, 2 * lmax + 4, 1.0) {
        auto proj = project_to_hermite(basis_, tab1_, d, [&](int j, cplx z) {
            double K[2] = {z.real(), z.imag()};
            return profile_value(g0, K, 2, j, &basis_);
        });
        tail_ = proj.tail;
        state0_ = std::move(proj.state);
        // scrub roundoff off the angular sectors so radial data can use the
        // m = 0 tensor
        double peak = 0.0;
        for (const auto& v : state0_.c) peak = std::max(peak, std::abs(v));
        bool radial = true;
        for (int j = 0; j < d; ++j)
            for (std::size_t b = 0; b < state0_.B(); ++b)
                if (basis_.lm[b].second != 0 && std::abs(state0_.at(j, b)) > 1e-12 * peak)
                    radial = false;
        if (radial) {
            for (int j = 0; j < d; ++j)
                for (std::size_t b = 0; b < state0_.B(); ++b)
                    if (basis_.lm[b].second != 0) state0_.at(j, b) = cplx{0.0, 0.0};
            tensor_ = hermite_tensor_radial(basis_, lmax);
        } else {
            if (lmax > 10)
                throw ConfigError(
                    "theorem1: reference lmax > 10 requires radially symmetric g0");
            tensor_ = hermite_tensor(basis_, lmax);
        }
    }

    double tail() const { return tail_; }

    LatticeField at(double tau, const LatticeSpec& spec, int d) {
        HermiteState g = state0_;
        if (tau > 0.0) {
            const std::int64_t steps = std::max<std::int64_t>(1, std::llround(tau / dt_));
            const double dt = tau / static_cast<double>(steps);
            std::vector<cplx> y = g.c;
            rk4_integrate(y, 0.0, dt, steps,
                          [&](const std::vector<cplx>& v, double, std::vector<cplx>& out) {
                              HermiteState probe = g;
                              probe.c = v;
                              HermiteState t = cr_T_hermite(probe, tensor_);
                              out.resize(t.c.size());
                              for (std::size_t i = 0; i < out.size(); ++i)
                                  out[i] = cplx{0.0, 1.0} * t.c[i];
                          });
            g.c = std::move(y);
        }
        // evaluate on the lattice
        const double invL = 1.0 / static_cast<double>(spec.L);
        std::vector<cplx> z(spec.point_count());
        for (std::size_t i = 0; i < z.size(); ++i) {
            const IVec k = spec.unindex(i);
            z[i] = cplx{static_cast<double>(k[0]) * invL, static_cast<double>(k[1]) * invL};
        }
        auto vals = synthesize_at(g, basis_, z);
        LatticeField f(spec, d);
        f.values = std::move(vals);
        return f;
    }

private:
    double dt_;
    HermiteBasis basis_;
    BasisTable tab1_;
    HermiteTensor tensor_;
    HermiteState state0_;
    double tail_ = 0.0;
};

}  // namespace detail

inline ComparisonReport run_theorem1(const json& resolved, unsigned threads = 0) {
    const json& cfg = resolved.at("theorem1");
    ComparisonReport rep;
    rep.config_echo = resolved;

    const int n = cfg.at("n").get<int>();
    const int d = cfg.at("d").get<int>();
    if (n != 2) throw ConfigError("theorem1: the comparison harness runs n = 2");
    const std::string nl = cfg.at("nonlinearity").get<std::string>();
    const NonlinearityKind kind =
        nl == "vector" ? NonlinearityKind::VectorProjected : NonlinearityKind::CoupledCubic;
    if (kind == NonlinearityKind::VectorProjected && d != n)
        throw ConfigError("theorem1: vector nonlinearity needs d = n");
    const double c = cfg.at("c").get<double>();
    const double gamma = cfg.at("gamma").get<double>();
    const double gamma_prime = cfg.at("gamma_prime").get<double>();
    if (gamma_prime < gamma) throw ConfigError("theorem1: eps rule needs gamma_prime >= gamma");
    const double l = cfg.at("l").get<double>();
    if (!(l > 2.0 * n))
        throw ConfigError("theorem1: comparison norm requires l > 2n");
    const double M = cfg.at("M").get<double>();
    const double dt_full = cfg.at("dt_full").get<double>();
    const double dt_tau = cfg.at("dt_tau").get<double>();
    const double smallness = cfg.at("smallness_threshold").get<double>();
    const ProfileSpec g0 = profile_from_json(cfg.at("g0"));
    const auto taus = cfg.at("output_taus").get<std::vector<double>>();
    bool run_res = false, run_full = false;
    for (const auto& m : cfg.at("modes")) {
        if (m.get<std::string>() == "resonant") run_res = true;
        else if (m.get<std::string>() == "full") run_full = true;
        else throw ConfigError("theorem1: modes entries must be 'resonant' or 'full'");
    }

    const std::string ref_backend = cfg.at("reference").at("backend").get<std::string>();
    if (ref_backend == "hermite" && kind == NonlinearityKind::VectorProjected)
        throw ConfigError(
            "theorem1: the Hermite reference applies to the coupled cubic case only; "
            "use reference.backend = 'lattice2x' for the projected vector case");

    std::unique_ptr<detail::CrReference> href;
    HermiteBasis profile_basis(std::max(2, g0.l));
    if (ref_backend == "hermite")
        href = std::make_unique<detail::CrReference>(
            g0, d, cfg.at("reference").at("lmax").get<int>(),
            cfg.at("reference").at("dt_tau").get<double>());
    else if (ref_backend != "lattice2x")
        throw ConfigError("theorem1: reference.backend must be 'hermite' or 'lattice2x'");

    for (const auto& Lj : cfg.at("L_sweep")) {
        const std::int64_t L = Lj.get<std::int64_t>();
        LRunInfo info;
        info.L = L;
        info.kmax_res = std::llround(cfg.at("kmax_res_per_L").get<double>() *
                                     static_cast<double>(L));
        info.kmax_full = std::llround(cfg.at("kmax_full_per_L").get<double>() *
                                      static_cast<double>(L));
        info.eps2 = c * std::pow(static_cast<double>(L), -gamma_prime);
        info.eps2_L_gamma = info.eps2 * std::pow(static_cast<double>(L), gamma);
        if (info.eps2_L_gamma > smallness)
            throw ConfigError("theorem1: smallness violated at L = " + std::to_string(L) +
                              ": eps^2 L^gamma = " + fmt_double(info.eps2_L_gamma) + " > " +
                              fmt_double(smallness));
        info.T_R = std::pow(static_cast<double>(L), 2.0 * n) /
                   (info.eps2 * Z_n(n, static_cast<double>(L)));
        info.delta_L = delta_L(n, static_cast<double>(L), gamma);
        if (href) info.reference_tail = href->tail();

        const auto ref_at = [&](double tau, const LatticeSpec& spec) -> LatticeField {
            if (href) return href->at(tau, spec, d);
            // lattice2x: integrate the rescaled resonant system on the doubled
            // lattice (same box) and downsample, K = k/L = (2k)/(2L)
            const LatticeSpec rspec(n, 2 * spec.L, 2 * spec.kmax);
            LatticeField rg0 = sample_profile(rspec, d, g0, &profile_basis);
            const double rdt = cfg.at("reference").at("dt_tau").get<double>();
            const std::int64_t steps =
                tau > 0.0 ? std::max<std::int64_t>(1, std::llround(tau / rdt)) : 0;
            LatticeField rg = rg0;
            if (steps > 0) {
                auto traj = integrate_cr(rg0, kind, tau / static_cast<double>(steps), steps, 0,
                                         threads, false);
                rg = std::move(traj.states.back());
            }
            LatticeField out(spec, d);
            for (std::size_t i = 0; i < out.points(); ++i) {
                IVec k = spec.unindex(i);
                IVec k2{2 * k[0], 2 * k[1], 0, 0};
                for (int j = 0; j < d; ++j)
                    out.component(j)[i] = rg.component(j)[rspec.index(k2)];
            }
            return out;
        };

        // decay of the weighted profile at the cutoff, relative to its peak
        const auto tail_of = [&](const LatticeSpec& spec) {
            LatticeField f = sample_profile(spec, d, g0, &profile_basis);
            const double invL = 1.0 / static_cast<double>(spec.L);
            double peak = 0.0, edge = 0.0;
            for (std::size_t i = 0; i < f.points(); ++i) {
                const IVec k = f.spec.unindex(i);
                double K[2] = {static_cast<double>(k[0]) * invL,
                               static_cast<double>(k[1]) * invL};
                double mag = 0.0;
                for (int j = 0; j < d; ++j) mag = std::max(mag, std::abs(f.component(j)[i]));
                const double w = std::pow(jbracket_sq(K, 2), 0.5 * (l + n + 2)) * mag;
                peak = std::max(peak, w);
                if (std::max(std::llabs(k[0]), std::llabs(k[1])) == spec.kmax)
                    edge = std::max(edge, w);
            }
            return peak > 0.0 ? edge / peak : 0.0;
        };

        if (run_res) {
            const LatticeSpec spec(n, L, info.kmax_res);
            info.lattice_tail = tail_of(spec);
            LatticeField a0 = sample_profile(spec, d, g0, &profile_basis);
            const auto t0 = std::chrono::steady_clock::now();
            // rescaled autonomous resonant system dg/dtau = i T_lattice(g)
            const std::int64_t total = std::max<std::int64_t>(1, std::llround(M / dt_tau));
            std::vector<std::int64_t> snap_steps;
            for (double tau : taus)
                snap_steps.push_back(
                    std::min<std::int64_t>(total, std::llround(tau * M / dt_tau)));
            std::sort(snap_steps.begin(), snap_steps.end());
            snap_steps.erase(std::unique(snap_steps.begin(), snap_steps.end()),
                             snap_steps.end());
            std::vector<cplx> y = a0.values;
            std::size_t next = 0;
            rk4_integrate(
                y, 0.0, dt_tau, total,
                [&](const std::vector<cplx>& v, double, std::vector<cplx>& out) {
                    LatticeField probe = a0;
                    probe.values = v;
                    LatticeField t = cr_T_lattice(probe, kind, threads);
                    out.resize(t.values.size());
                    for (std::size_t i = 0; i < out.size(); ++i)
                        out[i] = cplx{0.0, 1.0} * t.values[i];
                },
                [&](std::int64_t s, double tau, const std::vector<cplx>& v) {
                    while (next < snap_steps.size() && snap_steps[next] == s) {
                        LatticeField snap = a0;
                        snap.values = v;
                        LatticeField ref = ref_at(tau, spec);
                        rep.resonant.push_back(
                            ModePoint{L, tau, tau * info.T_R, xl_distance(snap, ref, l)});
                        ++next;
                    }
                });
            info.wall_resonant =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        }

        if (run_full) {
            const LatticeSpec spec(n, L, info.kmax_full);
            LatticeField a0 = sample_profile(spec, d, g0, &profile_basis);
            const double mass0 = [&] {
                double s = 0.0;
                for (const auto& v : a0.values) s += std::norm(v);
                return s;
            }();
            const auto t0 = std::chrono::steady_clock::now();
            SpectralVnls sim(spec, d, kind, std::sqrt(info.eps2));
            const std::int64_t total =
                std::max<std::int64_t>(1, std::llround(M * info.T_R / dt_full));
            std::vector<std::int64_t> snap_steps;
            for (double tau : taus)
                snap_steps.push_back(
                    std::min<std::int64_t>(total, std::llround(tau * M * info.T_R / dt_full)));
            std::sort(snap_steps.begin(), snap_steps.end());
            snap_steps.erase(std::unique(snap_steps.begin(), snap_steps.end()),
                             snap_steps.end());
            std::size_t next = 0;
            double mass_end = mass0;
            sim.integrate(a0, 0.0, dt_full, total,
                          [&](std::int64_t s, double t, const LatticeField& a) {
                              while (next < snap_steps.size() && snap_steps[next] == s) {
                                  const double tau = t / info.T_R;
                                  LatticeField ref = ref_at(tau, spec);
                                  rep.full.push_back(
                                      ModePoint{L, tau, t, xl_distance(a, ref, l)});
                                  ++next;
                              }
                              if (s == total) {
                                  double m = 0.0;
                                  for (const auto& v : a.values) m += std::norm(v);
                                  mass_end = m;
                              }
                          });
            info.mass_drift_full = mass0 > 0.0 ? std::abs(mass_end - mass0) / mass0 : 0.0;
            info.wall_full =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        }
        rep.runs.push_back(info);
    }

    // trend slope at the final output time (per L, the latest snapshot)
    const auto fit_slope = [&](const std::vector<ModePoint>& pts) {
        std::map<std::int64_t, ModePoint> last;
        for (const auto& p : pts) {
            auto it = last.find(p.L);
            if (it == last.end() || p.tau > it->second.tau) last[p.L] = p;
        }
        std::vector<double> xs, ys;
        for (const auto& [L, p] : last)
            if (p.e > 0.0) {
                xs.push_back(std::log(static_cast<double>(L)));
                ys.push_back(std::log(p.e));
            }
        if (xs.size() < 2) return 0.0;
        double mx = 0.0, my = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
        mx /= xs.size();
        my /= ys.size();
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            num += (xs[i] - mx) * (ys[i] - my);
            den += (xs[i] - mx) * (xs[i] - mx);
        }
        return den > 0.0 ? num / den : 0.0;
    };
    rep.slope_resonant = fit_slope(rep.resonant);
    rep.slope_full = fit_slope(rep.full);
    return rep;
}

// ---------------------------------------------------------------------------
// Resonant-sum scaling study across an L sweep.

struct ScalingRow {
    std::int64_t L = 0, kmax = 0, muL2 = 0;
    double S = 0.0, Zn = 0.0, ratio = 0.0;
    std::uint64_t max_count = 0;
    bool sparse_warning = false;
    double seconds = 0.0;
};

inline std::vector<ScalingRow> run_scaling_study(const json& resolved, unsigned threads = 0) {
    const json& cfg = resolved.at("scaling");
    const int n = cfg.at("n").get<int>();
    const double l = cfg.at("l").get<double>();
    if (!(l > 3.0 * n + 2.0))
        throw ConfigError("scaling: the resonant-sum bound needs l > 3n + 2");
    std::vector<ScalingRow> rows;
    for (const auto& Lj : cfg.at("L_sweep")) {
        const std::int64_t L = Lj.get<std::int64_t>();
        const std::int64_t kmax =
            std::llround(cfg.at("kmax_per_L").get<double>() * static_cast<double>(L));
        const LatticeSpec spec(n, L, kmax);
        for (const auto& muj : cfg.at("mu_samples")) {
            const std::int64_t mu = muj.get<std::int64_t>();
            const auto t0 = std::chrono::steady_clock::now();
            ResonanceProfileRow p = resonance_count_profile(spec, l, mu, threads);
            ScalingRow r;
            r.L = L;
            r.kmax = kmax;
            r.muL2 = mu;
            r.S = p.S;
            r.Zn = p.Zn;
            r.ratio = p.ratio;
            r.max_count = p.max_count;
            r.sparse_warning = p.sparse_warning;
            r.seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            rows.push_back(r);
        }
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Report emission: CSV rows plus a JSON document carrying the exact config.

inline json comparison_report_to_json(const ComparisonReport& rep) {
    json j;
    j["config"] = rep.config_echo;
    j["slope_resonant"] = rep.slope_resonant;
    j["slope_full"] = rep.slope_full;
    j["runs"] = json::array();
    for (const auto& r : rep.runs)
        j["runs"].push_back({{"L", r.L},
                             {"kmax_res", r.kmax_res},
                             {"kmax_full", r.kmax_full},
                             {"eps2", r.eps2},
                             {"eps2_L_gamma", r.eps2_L_gamma},
                             {"T_R", r.T_R},
                             {"delta_L", r.delta_L},
                             {"wall_resonant", r.wall_resonant},
                             {"wall_full", r.wall_full},
                             {"mass_drift_full", r.mass_drift_full},
                             {"lattice_tail", r.lattice_tail},
                             {"reference_tail", r.reference_tail}});
    const auto pts = [](const std::vector<ModePoint>& v) {
        json a = json::array();
        for (const auto& p : v)
            a.push_back({{"L", p.L}, {"tau", p.tau}, {"t", p.t}, {"e", p.e}});
        return a;
    };
    j["resonant"] = pts(rep.resonant);
    j["full"] = pts(rep.full);
    return j;
}

inline ComparisonReport comparison_report_from_json(const json& j) {
    ComparisonReport rep;
    rep.config_echo = j.at("config");
    rep.slope_resonant = j.at("slope_resonant").get<double>();
    rep.slope_full = j.at("slope_full").get<double>();
    for (const auto& r : j.at("runs")) {
        LRunInfo i;
        i.L = r.at("L").get<std::int64_t>();
        i.kmax_res = r.at("kmax_res").get<std::int64_t>();
        i.kmax_full = r.at("kmax_full").get<std::int64_t>();
        i.eps2 = r.at("eps2").get<double>();
        i.eps2_L_gamma = r.at("eps2_L_gamma").get<double>();
        i.T_R = r.at("T_R").get<double>();
        i.delta_L = r.at("delta_L").get<double>();
        i.wall_resonant = r.at("wall_resonant").get<double>();
        i.wall_full = r.at("wall_full").get<double>();
        i.mass_drift_full = r.at("mass_drift_full").get<double>();
        i.lattice_tail = r.at("lattice_tail").get<double>();
        i.reference_tail = r.at("reference_tail").get<double>();
        rep.runs.push_back(i);
    }
    const auto pts = [](const json& a, std::vector<ModePoint>& v) {
        for (const auto& p : a)
            v.push_back(ModePoint{p.at("L").get<std::int64_t>(), p.at("tau").get<double>(),
                                  p.at("t").get<double>(), p.at("e").get<double>()});
    };
    pts(j.at("resonant"), rep.resonant);
    pts(j.at("full"), rep.full);
    return rep;
}

inline void emit_comparison_report(const ComparisonReport& rep, const std::string& dir) {
    std::filesystem::create_directories(dir);
    {
        CsvWriter csv(dir + "/report.csv", {"mode", "L", "tau", "t", "e"});
        for (const auto& p : rep.resonant)
            csv.row({"resonant", std::to_string(p.L), fmt_double(p.tau), fmt_double(p.t),
                     fmt_double(p.e)});
        for (const auto& p : rep.full)
            csv.row({"full", std::to_string(p.L), fmt_double(p.tau), fmt_double(p.t),
                     fmt_double(p.e)});
    }
    {
        CsvWriter csv(dir + "/runs.csv",
                      {"L", "kmax_res", "kmax_full", "eps2", "eps2_L_gamma", "T_R", "delta_L",
                       "wall_resonant", "wall_full", "mass_drift_full", "lattice_tail",
                       "reference_tail"});
        for (const auto& r : rep.runs)
            csv.row({std::to_string(r.L), std::to_string(r.kmax_res),
                     std::to_string(r.kmax_full), fmt_double(r.eps2),
                     fmt_double(r.eps2_L_gamma), fmt_double(r.T_R), fmt_double(r.delta_L),
                     fmt_double(r.wall_resonant), fmt_double(r.wall_full),
                     fmt_double(r.mass_drift_full), fmt_double(r.lattice_tail),
                     fmt_double(r.reference_tail)});
    }
    write_text_file(dir + "/report.json", comparison_report_to_json(rep).dump(2) + "\n");
}

inline ComparisonReport load_comparison_report(const std::string& dir) {
    return comparison_report_from_json(load_json_file(dir + "/report.json"));
}

inline void emit_scaling_rows(const std::vector<ScalingRow>& rows, const std::string& dir) {
    std::filesystem::create_directories(dir);
    CsvWriter csv(dir + "/scaling.csv",
                  {"L", "kmax", "muL2", "Zn", "S", "ratio", "max_count", "sparse_warning",
                   "seconds"});
    for (const auto& r : rows)
        csv.row({std::to_string(r.L), std::to_string(r.kmax), std::to_string(r.muL2),
                 fmt_double(r.Zn), fmt_double(r.S), fmt_double(r.ratio),
                 std::to_string(r.max_count), r.sparse_warning ? "1" : "0",
                 fmt_double(r.seconds)});
}

}  // namespace cr
