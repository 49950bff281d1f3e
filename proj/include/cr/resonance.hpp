#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "cr/lattice.hpp"
#include "cr/parallel.hpp"

namespace cr {

// Resonant triples on the truncated lattice.
//
// For an output mode k, pairs (k1, k2) with k3 := k + k2 - k1 inside the
// cutoff and |k1|^2 - |k2|^2 + |k3|^2 - |k|^2 = muL2 (all integer arithmetic,
// K = k/L so Omega_3 = muL2 / L^2).
//
// Substituting z1 = k1 - k, z2 = k2 - k1 gives k2 = k + z1 + z2, k3 = k + z2
// and the constraint collapses to 2 z1.z2 = -muL2. In particular muL2 is
// always even, and mu = 0 is exactly z1 _|_ z2: the resonant rectangles.

struct ResonantPair {
    IVec k1, k2;
};

inline bool lex_less(const IVec& a, const IVec& b, int n) {
    for (int i = 0; i < n; ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

namespace detail {

struct EGcd {
    std::int64_t g, x, y;  // a*x + b*y = g, g >= 0
};

inline EGcd egcd(std::int64_t a, std::int64_t b) {
    if (b == 0) return a >= 0 ? EGcd{a, 1, 0} : EGcd{-a, -1, 0};
    EGcd r = egcd(b, a % b);
    return EGcd{r.g, r.y, r.x - (a / b) * r.y};
}

}  // namespace detail

// Exact enumeration for one (k, muL2): the pruned production enumerator.
// n = 2 solves the line z1.z2 = m directly; n >= 3 fixes all but one
// coordinate of z2 and solves the last one. Output is lexicographic in
// (k1, k2).
inline std::vector<ResonantPair> enumerate_resonances(const LatticeSpec& spec, const IVec& k,
                                                      std::int64_t muL2) {
    for (int i = 0; i < spec.n; ++i)
        if (k[i] < -spec.kmax || k[i] > spec.kmax)
            throw std::invalid_argument("enumerate_resonances: k outside cutoff");
    std::vector<ResonantPair> out;
    if (muL2 % 2 != 0) return out;  // 2 z1.z2 = -muL2 unsolvable
    const std::int64_t m = -muL2 / 2;
    const std::int64_t km = spec.kmax;
    const int n = spec.n;

    const auto emit = [&](const IVec& z1, const IVec& z2) {
        IVec k1{0, 0, 0, 0}, k2{0, 0, 0, 0}, k3{0, 0, 0, 0};
        for (int i = 0; i < n; ++i) {
            k1[i] = k[i] + z1[i];
            k2[i] = k[i] + z1[i] + z2[i];
            k3[i] = k[i] + z2[i];
        }
        if (spec.in_box(k1) && spec.in_box(k2) && spec.in_box(k3))
            out.push_back(ResonantPair{k1, k2});
    };

    // z1 = 0 family: k1 = k, any k2 = k3, valid only when m = 0.
    if (m == 0) {
        IVec z1{0, 0, 0, 0}, z2{0, 0, 0, 0};
        std::vector<std::int64_t> lo(n, -2 * km), hi(n, 2 * km);
        std::vector<std::int64_t> t(n);
        for (int i = 0; i < n; ++i) t[i] = lo[i];
        while (true) {
            for (int i = 0; i < n; ++i) z2[i] = t[i];
            bool zero = true;
            for (int i = 0; i < n; ++i) zero &= (z2[i] == 0);
            emit(z1, z2);
            (void)zero;
            int i = n - 1;
            while (i >= 0 && ++t[i] > hi[i]) t[i] = lo[i], --i;
            if (i < 0) break;
        }
    }

    // z1 != 0: iterate k1 over the box and solve for z2.
    IVec k1{0, 0, 0, 0};
    std::vector<std::int64_t> c(n, -km);
    while (true) {
        for (int i = 0; i < n; ++i) k1[i] = c[i];
        IVec z1{0, 0, 0, 0};
        bool z1zero = true;
        for (int i = 0; i < n; ++i) {
            z1[i] = k1[i] - k[i];
            z1zero &= (z1[i] == 0);
        }
        if (!z1zero) {
            if (n == 2) {
                const std::int64_t a = z1[0], b = z1[1];
                auto eg = detail::egcd(a, b);
                if (m % eg.g == 0) {
                    const std::int64_t s = m / eg.g;
                    IVec zp{eg.x * s, eg.y * s, 0, 0};
                    const std::int64_t qx = -b / eg.g, qy = a / eg.g;
                    // t window from |z2| <= 2 kmax and |z1 + z2| <= 2 kmax,
                    // padded by one; emit() re-checks membership exactly.
                    double tlo = -1e18, thi = 1e18;
                    const auto clip = [&](double qi, double base) {
                        if (qi == 0.0) return;
                        double t1 = (-2.0 * km - base) / qi, t2 = (2.0 * km - base) / qi;
                        tlo = std::max(tlo, std::min(t1, t2));
                        thi = std::min(thi, std::max(t1, t2));
                    };
                    clip(static_cast<double>(qx), static_cast<double>(zp[0]));
                    clip(static_cast<double>(qy), static_cast<double>(zp[1]));
                    clip(static_cast<double>(qx), static_cast<double>(z1[0] + zp[0]));
                    clip(static_cast<double>(qy), static_cast<double>(z1[1] + zp[1]));
                    if (tlo <= thi) {
                        const std::int64_t t0 = static_cast<std::int64_t>(std::floor(tlo)) - 1;
                        const std::int64_t t1 = static_cast<std::int64_t>(std::ceil(thi)) + 1;
                        for (std::int64_t t = t0; t <= t1; ++t) {
                            IVec z2{zp[0] + t * qx, zp[1] + t * qy, 0, 0};
                            emit(z1, z2);
                        }
                    }
                }
            } else {
                // Pivot on the largest |z1| coordinate.
                int p = 0;
                for (int i = 1; i < n; ++i)
                    if (std::abs(z1[i]) > std::abs(z1[p])) p = i;
                IVec z2{0, 0, 0, 0};
                std::vector<std::int64_t> f(n, -2 * km);
                while (true) {
                    std::int64_t dot = 0;
                    for (int i = 0; i < n; ++i)
                        if (i != p) dot += z1[i] * f[i];
                    const std::int64_t rem = m - dot;
                    if (rem % z1[p] == 0) {
                        for (int i = 0; i < n; ++i) z2[i] = (i == p) ? rem / z1[p] : f[i];
                        emit(z1, z2);
                    }
                    int i = n - 1;
                    if (i == p) --i;
                    while (i >= 0) {
                        if (++f[i] <= 2 * km) break;
                        f[i] = -2 * km;
                        --i;
                        if (i == p) --i;
                    }
                    if (i < 0) break;
                }
            }
        }
        int i = n - 1;
        while (i >= 0 && ++c[i] > km) c[i] = -km, --i;
        if (i < 0) break;
    }

    std::sort(out.begin(), out.end(), [&](const ResonantPair& x, const ResonantPair& y) {
        if (lex_less(x.k1, y.k1, n)) return true;
        if (lex_less(y.k1, x.k1, n)) return false;
        return lex_less(x.k2, y.k2, n);
    });
    return out;
}

// ---------------------------------------------------------------------------
// Stored per-mode index (small and mid-size instances).

struct LevelIndex {
    // CSR over output mode index; entries are flattened point indices.
    std::vector<std::uint64_t> offsets;
    struct Triple {
        std::uint32_t i1, i2, i3;
    };
    std::vector<Triple> triples;
};

struct ResonantIndex {
    LatticeSpec spec;
    bool complete = false;  // true when every nonempty level within cutoff is present
    std::map<std::int64_t, LevelIndex> levels;

    bool has_level(std::int64_t muL2) const { return levels.count(muL2) != 0; }
};

// All nonempty muL2 levels that the cutoff admits. Cost is one full pair
// scan; intended for small instances and for error reporting.
inline std::vector<std::int64_t> achievable_levels(const LatticeSpec& spec) {
    std::vector<std::int64_t> out;
    const std::int64_t km = spec.kmax;
    std::vector<char> seen(static_cast<std::size_t>(16 * km * km * spec.n) + 1, 0);
    const std::int64_t offset = 8 * km * km * spec.n;
    std::vector<std::int64_t> z1(spec.n, -2 * km), z2(spec.n, -2 * km);
    const std::function<void(int)> loop2 = [&](int) {
        // dot over all (z1, z2) in [-2km, 2km]^n x same; record -2*dot.
    };
    (void)loop2;
    // Direct nested scan; fine for the small lattices this is used on.
    std::vector<std::int64_t> a(spec.n, -2 * km);
    while (true) {
        std::vector<std::int64_t> b(spec.n, -2 * km);
        while (true) {
            std::int64_t dot = 0;
            for (int i = 0; i < spec.n; ++i) dot += a[i] * b[i];
            seen[static_cast<std::size_t>(-2 * dot + offset)] = 1;
            int i = spec.n - 1;
            while (i >= 0 && ++b[i] > 2 * km) b[i] = -2 * km, --i;
            if (i < 0) break;
        }
        int i = spec.n - 1;
        while (i >= 0 && ++a[i] > 2 * km) a[i] = -2 * km, --i;
        if (i < 0) break;
    }
    for (std::int64_t v = -offset; v <= offset; ++v)
        if (seen[static_cast<std::size_t>(v + offset)]) out.push_back(v);
    return out;
}

inline LevelIndex build_level_index(const LatticeSpec& spec, std::int64_t muL2) {
    LevelIndex lvl;
    const std::size_t npts = spec.point_count();
    lvl.offsets.assign(npts + 1, 0);
    std::vector<std::vector<LevelIndex::Triple>> per_mode(npts);
    for (std::size_t i = 0; i < npts; ++i) {
        const IVec k = spec.unindex(i);
        auto pairs = enumerate_resonances(spec, k, muL2);
        per_mode[i].reserve(pairs.size());
        for (const auto& p : pairs) {
            IVec k3{0, 0, 0, 0};
            for (int a = 0; a < spec.n; ++a) k3[a] = k[a] + p.k2[a] - p.k1[a];
            per_mode[i].push_back(
                LevelIndex::Triple{static_cast<std::uint32_t>(spec.index(p.k1)),
                                   static_cast<std::uint32_t>(spec.index(p.k2)),
                                   static_cast<std::uint32_t>(spec.index(k3))});
        }
    }
    for (std::size_t i = 0; i < npts; ++i) lvl.offsets[i + 1] = lvl.offsets[i] + per_mode[i].size();
    lvl.triples.reserve(lvl.offsets[npts]);
    for (auto& v : per_mode) lvl.triples.insert(lvl.triples.end(), v.begin(), v.end());
    return lvl;
}

inline ResonantIndex build_resonant_index(const LatticeSpec& spec,
                                          const std::vector<std::int64_t>& muL2_levels) {
    ResonantIndex idx;
    idx.spec = spec;
    for (auto mu : muL2_levels) idx.levels[mu] = build_level_index(spec, mu);
    return idx;
}

inline ResonantIndex build_complete_resonant_index(const LatticeSpec& spec) {
    ResonantIndex idx;
    idx.spec = spec;
    for (auto mu : achievable_levels(spec)) {
        LevelIndex lvl = build_level_index(spec, mu);
        if (!lvl.triples.empty()) idx.levels[mu] = std::move(lvl);
    }
    idx.complete = true;
    return idx;
}

// ---------------------------------------------------------------------------
// Binary cache, keyed by (n, L, kmax, muL2) with a version header.

inline constexpr std::uint64_t kResonantCacheMagic = 0x3152524358ull;  // "XCRR1"

inline void save_level_index(const std::string& path, const LatticeSpec& spec,
                             std::int64_t muL2, const LevelIndex& lvl) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("save_level_index: cannot open " + path);
    const std::uint64_t header[6] = {kResonantCacheMagic,
                                     static_cast<std::uint64_t>(spec.n),
                                     static_cast<std::uint64_t>(spec.L),
                                     static_cast<std::uint64_t>(spec.kmax),
                                     static_cast<std::uint64_t>(muL2),
                                     lvl.triples.size()};
    std::fwrite(header, sizeof(header), 1, f);
    std::fwrite(lvl.offsets.data(), sizeof(std::uint64_t), lvl.offsets.size(), f);
    std::fwrite(lvl.triples.data(), sizeof(LevelIndex::Triple), lvl.triples.size(), f);
    std::fclose(f);
}

inline bool load_level_index(const std::string& path, const LatticeSpec& spec,
                             std::int64_t muL2, LevelIndex& out) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) return false;
    std::uint64_t header[6];
    if (std::fread(header, sizeof(header), 1, f) != 1 || header[0] != kResonantCacheMagic ||
        header[1] != static_cast<std::uint64_t>(spec.n) ||
        header[2] != static_cast<std::uint64_t>(spec.L) ||
        header[3] != static_cast<std::uint64_t>(spec.kmax) ||
        header[4] != static_cast<std::uint64_t>(muL2)) {
        std::fclose(f);
        return false;
    }
    out.offsets.resize(spec.point_count() + 1);
    out.triples.resize(header[5]);
    const bool ok =
        std::fread(out.offsets.data(), sizeof(std::uint64_t), out.offsets.size(), f) ==
            out.offsets.size() &&
        (out.triples.empty() ||
         std::fread(out.triples.data(), sizeof(LevelIndex::Triple), out.triples.size(), f) ==
             out.triples.size());
    std::fclose(f);
    return ok;
}

// ---------------------------------------------------------------------------
// Streaming sweep over resonant offsets (n = 2): visits each (z1, z2) with
// 2 z1.z2 = -muL2, z1 != 0, z2 != 0, together with the rectangle of output
// modes k for which all four points stay in the box. The two trivial
// families z1 = 0 / z2 = 0 (mu = 0 only) collapse to rank-one terms and are
// handled by the accumulators in closed form.
//
// visit(o1, o2, o3, xlo, xhi, ylo, yhi):
//   o* are flattened index offsets of k1, k2, k3 relative to k;
//   the k-rectangle is [xlo,xhi] x [ylo,yhi] in integer coordinates.
template <typename Visit>
inline void sweep_offsets_2d(const LatticeSpec& spec, std::int64_t muL2, std::int64_t za_begin,
                             std::int64_t za_end, Visit&& visit) {
    if (spec.n != 2) throw std::invalid_argument("sweep_offsets_2d: n must be 2");
    if (muL2 % 2 != 0) return;
    const std::int64_t m = -muL2 / 2;
    const std::int64_t km = spec.kmax;
    const std::int64_t W = spec.axis_points();
    const std::int64_t span = 4 * km + 1;

    for (std::int64_t za = za_begin; za < za_end; ++za) {
        const std::int64_t a = za / span - 2 * km;
        const std::int64_t b = za % span - 2 * km;
        if (a == 0 && b == 0) continue;
        const auto eg = detail::egcd(a, b);
        if (m % eg.g != 0) continue;
        const std::int64_t s = m / eg.g;
        const std::int64_t zpx = eg.x * s, zpy = eg.y * s;
        const std::int64_t qx = -b / eg.g, qy = a / eg.g;

        double tlo = -1e18, thi = 1e18;
        const auto clip = [&](double qi, double base) {
            if (qi == 0.0) return;
            const double t1 = (-2.0 * km - base) / qi, t2 = (2.0 * km - base) / qi;
            tlo = std::max(tlo, std::min(t1, t2));
            thi = std::min(thi, std::max(t1, t2));
        };
        clip(static_cast<double>(qx), static_cast<double>(zpx));
        clip(static_cast<double>(qy), static_cast<double>(zpy));
        clip(static_cast<double>(qx), static_cast<double>(a + zpx));
        clip(static_cast<double>(qy), static_cast<double>(b + zpy));
        if (tlo > thi) continue;
        const std::int64_t t0 = static_cast<std::int64_t>(std::floor(tlo)) - 1;
        const std::int64_t t1 = static_cast<std::int64_t>(std::ceil(thi)) + 1;

        for (std::int64_t t = t0; t <= t1; ++t) {
            const std::int64_t z2x = zpx + t * qx, z2y = zpy + t * qy;
            if (z2x == 0 && z2y == 0) continue;
            const std::int64_t k1x = a, k1y = b;          // z1
            const std::int64_t k2x = a + z2x, k2y = b + z2y;
            const std::int64_t k3x = z2x, k3y = z2y;
            // k-range so that k, k+z1, k+z2, k+z1+z2 all lie in [-km, km]^2.
            const auto lohi = [&](std::int64_t u, std::int64_t v, std::int64_t w,
                                  std::int64_t& lo, std::int64_t& hi) {
                const std::int64_t mx = std::max({std::int64_t(0), u, v, w});
                const std::int64_t mn = std::min({std::int64_t(0), u, v, w});
                lo = -km - mn;
                hi = km - mx;
            };
            std::int64_t xlo, xhi, ylo, yhi;
            lohi(k1x, k2x, k3x, xlo, xhi);
            lohi(k1y, k2y, k3y, ylo, yhi);
            if (xlo > xhi || ylo > yhi) continue;
            visit(k1x * W + k1y, k2x * W + k2y, k3x * W + k3y, xlo, xhi, ylo, yhi);
        }
    }
}

inline std::int64_t sweep_domain_size(const LatticeSpec& spec) {
    const std::int64_t span = 4 * spec.kmax + 1;
    return span * span;
}

// ---------------------------------------------------------------------------
// Accumulators built on the sweep.

// Adds scale * sum_{R_mu(k)} (sum_l g_l(K1) conj(g_l(K2))) g_j(K3) to out_j(k)
// for every mode k (the diagonal trilinear resonant sum, no projector).
// Deterministic under threading: per-worker buffers are combined in order.
inline void accumulate_resonant_cubic_2d(const LatticeField& g, std::int64_t muL2, cplx scale,
                                         LatticeField& out, unsigned threads = 0) {
    const LatticeSpec& spec = g.spec;
    if (spec.n != 2) throw std::invalid_argument("accumulate_resonant_cubic_2d: n must be 2");
    const std::int64_t W = spec.axis_points();
    const std::size_t npts = g.points();
    const int d = g.d;
    if (threads == 0) threads = default_thread_count();
    const std::int64_t domain = sweep_domain_size(spec);
    const unsigned workers =
        static_cast<unsigned>(std::min<std::int64_t>(domain, static_cast<std::int64_t>(threads)));

    std::vector<std::vector<cplx>> partial(workers);
    parallel_chunks(
        domain,
        [&](std::int64_t zb, std::int64_t ze, unsigned wid) {
            auto& buf = partial[wid];
            buf.assign(static_cast<std::size_t>(d) * npts, cplx{0.0, 0.0});
            sweep_offsets_2d(spec, muL2, zb, ze,
                             [&](std::int64_t o1, std::int64_t o2, std::int64_t o3,
                                 std::int64_t xlo, std::int64_t xhi, std::int64_t ylo,
                                 std::int64_t yhi) {
                                 for (std::int64_t kx = xlo; kx <= xhi; ++kx) {
                                     const std::int64_t row = (kx + spec.kmax) * W + spec.kmax;
                                     const std::int64_t b0 = row + ylo;
                                     const std::int64_t cnt = yhi - ylo + 1;
                                     if (d == 1) {
                                         const cplx* f = g.component(0);
                                         cplx* o = buf.data();
                                         for (std::int64_t i = 0; i < cnt; ++i) {
                                             const std::int64_t kk = b0 + i;
                                             o[kk] += f[kk + o1] * std::conj(f[kk + o2]) *
                                                      f[kk + o3];
                                         }
                                     } else {
                                         for (std::int64_t i = 0; i < cnt; ++i) {
                                             const std::int64_t kk = b0 + i;
                                             cplx pair{0.0, 0.0};
                                             for (int l = 0; l < d; ++l)
                                                 pair += g.component(l)[kk + o1] *
                                                         std::conj(g.component(l)[kk + o2]);
                                             for (int j = 0; j < d; ++j)
                                                 buf[static_cast<std::size_t>(j) * npts + kk] +=
                                                     pair * g.component(j)[kk + o3];
                                         }
                                     }
                                 }
                             });
        },
        workers);

    // Trivial families (mu = 0 only): z1 = 0 gives sum_l g_l(K) B_{lj} with
    // B_{lj} = sum_q conj(g_l(q)) g_j(q); z2 = 0 gives A * g_j(K) with
    // A = sum_q sum_l |g_l(q)|^2; the doubly counted (0,0) term is
    // (sum_l g_l(K) conj(g_l(K))) g_j(K).
    std::vector<cplx> rank1(static_cast<std::size_t>(d) * npts, cplx{0.0, 0.0});
    if (muL2 == 0) {
        std::vector<cplx> B(static_cast<std::size_t>(d) * d, cplx{0.0, 0.0});
        double A = 0.0;
        for (int l = 0; l < d; ++l) {
            const cplx* gl = g.component(l);
            for (int j = 0; j < d; ++j) {
                const cplx* gj = g.component(j);
                cplx s{0.0, 0.0};
                for (std::size_t q = 0; q < npts; ++q) s += std::conj(gl[q]) * gj[q];
                B[static_cast<std::size_t>(l) * d + j] = s;
            }
            for (std::size_t q = 0; q < npts; ++q) A += std::norm(gl[q]);
        }
        for (std::size_t kk = 0; kk < npts; ++kk) {
            cplx self{0.0, 0.0};
            for (int l = 0; l < d; ++l) self += std::norm(g.component(l)[kk]);
            for (int j = 0; j < d; ++j) {
                cplx v = A * g.component(j)[kk] - self * g.component(j)[kk];
                for (int l = 0; l < d; ++l)
                    v += g.component(l)[kk] * B[static_cast<std::size_t>(l) * d + j];
                rank1[static_cast<std::size_t>(j) * npts + kk] = v;
            }
        }
    }

    for (int j = 0; j < d; ++j) {
        cplx* o = out.component(j);
        for (std::size_t kk = 0; kk < npts; ++kk) {
            cplx acc = rank1[static_cast<std::size_t>(j) * npts + kk];
            for (unsigned w = 0; w < workers; ++w)
                acc += partial[w][static_cast<std::size_t>(j) * npts + kk];
            o[kk] += scale * acc;
        }
    }
}

// Same loop structure with real decay weights: per mode k accumulates
// sum_{R_mu(k)} w(K1) w(K2) w(K3). Used by the resonant-sum profiles.
inline std::vector<double> accumulate_resonant_weights_2d(const LatticeSpec& spec,
                                                          const std::vector<double>& w,
                                                          std::int64_t muL2,
                                                          unsigned threads = 0) {
    if (spec.n != 2) throw std::invalid_argument("accumulate_resonant_weights_2d: n must be 2");
    const std::int64_t W = spec.axis_points();
    const std::size_t npts = spec.point_count();
    if (threads == 0) threads = default_thread_count();
    const std::int64_t domain = sweep_domain_size(spec);
    const unsigned workers =
        static_cast<unsigned>(std::min<std::int64_t>(domain, static_cast<std::int64_t>(threads)));

    std::vector<std::vector<double>> partial(workers);
    parallel_chunks(
        domain,
        [&](std::int64_t zb, std::int64_t ze, unsigned wid) {
            auto& buf = partial[wid];
            buf.assign(npts, 0.0);
            sweep_offsets_2d(spec, muL2, zb, ze,
                             [&](std::int64_t o1, std::int64_t o2, std::int64_t o3,
                                 std::int64_t xlo, std::int64_t xhi, std::int64_t ylo,
                                 std::int64_t yhi) {
                                 const double* f = w.data();
                                 for (std::int64_t kx = xlo; kx <= xhi; ++kx) {
                                     const std::int64_t b0 =
                                         (kx + spec.kmax) * W + spec.kmax + ylo;
                                     const std::int64_t cnt = yhi - ylo + 1;
                                     for (std::int64_t i = 0; i < cnt; ++i) {
                                         const std::int64_t kk = b0 + i;
                                         buf[kk] += f[kk + o1] * f[kk + o2] * f[kk + o3];
                                     }
                                 }
                             });
        },
        workers);

    std::vector<double> acc(npts, 0.0);
    if (muL2 == 0) {
        double s23 = 0.0, s12 = 0.0;
        for (std::size_t q = 0; q < npts; ++q) {
            s23 += w[q] * w[q];
            s12 += w[q] * w[q];
        }
        for (std::size_t kk = 0; kk < npts; ++kk)
            acc[kk] = w[kk] * s23 + w[kk] * s12 - w[kk] * w[kk] * w[kk];
    }
    for (std::size_t kk = 0; kk < npts; ++kk)
        for (unsigned wd = 0; wd < workers; ++wd) acc[kk] += partial[wd][kk];
    return acc;
}

// ---------------------------------------------------------------------------
// Resonant-sum profile: S(L) = sup_K <K>^l sum_{R_mu(K)} prod <K_i>^{-l}
// for unit-profile inputs, compared against Z_n(L).

struct ResonanceProfileRow {
    std::int64_t L = 0;
    std::int64_t kmax = 0;
    std::int64_t muL2 = 0;
    double S = 0.0;
    double Zn = 0.0;
    double ratio = 0.0;
    std::uint64_t max_count = 0;  // sup_K |R_mu(K)|
    bool sparse_warning = false;  // cutoff too small to populate resonances
    double seconds = 0.0;
};

inline ResonanceProfileRow resonance_count_profile(const LatticeSpec& spec, double l,
                                                   std::int64_t muL2, unsigned threads = 0) {
    if (spec.n != 2)
        throw std::invalid_argument("resonance_count_profile: sweep path implemented for n = 2");
    const std::size_t npts = spec.point_count();
    const double invL = 1.0 / static_cast<double>(spec.L);

    std::vector<double> w(npts);
    for (std::size_t i = 0; i < npts; ++i) {
        const IVec k = spec.unindex(i);
        double K[4];
        for (int a = 0; a < spec.n; ++a) K[a] = static_cast<double>(k[a]) * invL;
        w[i] = std::pow(jbracket_sq(K, spec.n), -0.5 * l);
    }
    std::vector<double> acc = accumulate_resonant_weights_2d(spec, w, muL2, threads);
    std::vector<double> ones(npts, 1.0);
    std::vector<double> cnt = accumulate_resonant_weights_2d(spec, ones, muL2, threads);

    ResonanceProfileRow row;
    row.L = spec.L;
    row.kmax = spec.kmax;
    row.muL2 = muL2;
    row.Zn = Z_n(spec.n, static_cast<double>(spec.L));
    std::uint64_t maxc = 0;
    double S = 0.0;
    for (std::size_t i = 0; i < npts; ++i) {
        S = std::max(S, acc[i] / w[i]);  // <K>^l * sum = sum / w(K)
        maxc = std::max(maxc, static_cast<std::uint64_t>(cnt[i] + 0.5));
    }
    row.S = S;
    row.max_count = maxc;
    row.ratio = S / row.Zn;
    row.sparse_warning = (maxc <= 1);  // only the doubly trivial triple present
    return row;
}

}  // namespace cr
