#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cr {

using cplx = std::complex<double>;

// Integer frequency index; only the first n entries are meaningful.
using IVec = std::array<std::int64_t, 4>;

inline std::int64_t sqnorm(const IVec& k, int n) {
    std::int64_t s = 0;
    for (int i = 0; i < n; ++i) s += k[i] * k[i];
    return s;
}

// Truncated frequency lattice Z_L^n: points K = k/L with |k|_inf <= kmax.
struct LatticeSpec {
    int n = 2;
    std::int64_t L = 1;
    std::int64_t kmax = 1;

    LatticeSpec() = default;
    LatticeSpec(int n_, std::int64_t L_, std::int64_t kmax_) : n(n_), L(L_), kmax(kmax_) {
        if (n < 2 || n > 4) throw std::invalid_argument("LatticeSpec: n must be in {2,3,4}");
        if (L < 1) throw std::invalid_argument("LatticeSpec: L must be >= 1");
        if (kmax < 1) throw std::invalid_argument("LatticeSpec: kmax must be >= 1");
    }

    std::int64_t axis_points() const { return 2 * kmax + 1; }
    std::size_t point_count() const {
        std::size_t p = 1;
        for (int i = 0; i < n; ++i) p *= static_cast<std::size_t>(axis_points());
        return p;
    }
    bool in_box(const IVec& k) const {
        for (int i = 0; i < n; ++i)
            if (k[i] < -kmax || k[i] > kmax) return false;
        return true;
    }
    // Row-major flatten, last axis fastest.
    std::size_t index(const IVec& k) const {
        std::size_t idx = 0;
        for (int i = 0; i < n; ++i)
            idx = idx * static_cast<std::size_t>(axis_points()) +
                  static_cast<std::size_t>(k[i] + kmax);
        return idx;
    }
    IVec unindex(std::size_t idx) const {
        IVec k{0, 0, 0, 0};
        for (int i = n - 1; i >= 0; --i) {
            k[i] = static_cast<std::int64_t>(idx % static_cast<std::size_t>(axis_points())) - kmax;
            idx /= static_cast<std::size_t>(axis_points());
        }
        return k;
    }
    bool operator==(const LatticeSpec& o) const {
        return n == o.n && L == o.L && kmax == o.kmax;
    }
};

// d-component complex amplitudes on the truncated lattice, component-major.
struct LatticeField {
    LatticeSpec spec;
    int d = 1;
    std::vector<cplx> values;

    LatticeField() = default;
    LatticeField(const LatticeSpec& s, int d_)
        : spec(s), d(d_), values(static_cast<std::size_t>(d_) * s.point_count(), cplx{0.0, 0.0}) {
        if (d < 1) throw std::invalid_argument("LatticeField: d must be >= 1");
    }

    std::size_t points() const { return spec.point_count(); }
    cplx* component(int j) { return values.data() + static_cast<std::size_t>(j) * points(); }
    const cplx* component(int j) const {
        return values.data() + static_cast<std::size_t>(j) * points();
    }
    cplx& at(int j, const IVec& k) { return component(j)[spec.index(k)]; }
    cplx at(int j, const IVec& k) const { return component(j)[spec.index(k)]; }
};

// d-component complex samples on a uniform grid over [-kbox, kbox]^n.
struct WeightedNorm {
    double l = 0.0;
    int N = 0;
    WeightedNorm() = default;
    WeightedNorm(double l_, int N_ = 0) : l(l_), N(N_) {
        if (l < 0.0) throw std::invalid_argument("WeightedNorm: l must be >= 0");
        if (N < 0) throw std::invalid_argument("WeightedNorm: N must be >= 0");
    }
};

struct GridField {
    int n = 2;
    int d = 1;
    int m = 4;          // points per axis
    double kbox = 1.0;  // half-width
    std::vector<cplx> values;
    WeightedNorm norm_meta{};

    GridField() = default;
    GridField(int n_, int d_, int m_, double kbox_)
        : n(n_), d(d_), m(m_), kbox(kbox_) {
        if (n < 1 || n > 4) throw std::invalid_argument("GridField: n out of range");
        if (m < 4) throw std::invalid_argument("GridField: m must be >= 4");
        if (d < 1) throw std::invalid_argument("GridField: d must be >= 1");
        if (!(kbox > 0.0)) throw std::invalid_argument("GridField: kbox must be positive");
        std::size_t p = 1;
        for (int i = 0; i < n; ++i) p *= static_cast<std::size_t>(m);
        values.assign(static_cast<std::size_t>(d) * p, cplx{0.0, 0.0});
    }

    double h() const { return 2.0 * kbox / (m - 1); }
    double coord(std::int64_t t) const { return -kbox + t * h(); }
    std::size_t points() const { return values.size() / static_cast<std::size_t>(d); }
    cplx* component(int j) { return values.data() + static_cast<std::size_t>(j) * points(); }
    const cplx* component(int j) const {
        return values.data() + static_cast<std::size_t>(j) * points();
    }
    std::size_t index(const std::array<std::int64_t, 4>& t) const {
        std::size_t idx = 0;
        for (int i = 0; i < n; ++i)
            idx = idx * static_cast<std::size_t>(m) + static_cast<std::size_t>(t[i]);
        return idx;
    }
    std::array<std::int64_t, 4> unindex(std::size_t idx) const {
        std::array<std::int64_t, 4> t{0, 0, 0, 0};
        for (int i = n - 1; i >= 0; --i) {
            t[i] = static_cast<std::int64_t>(idx % static_cast<std::size_t>(m));
            idx /= static_cast<std::size_t>(m);
        }
        return t;
    }
    void coords_of(std::size_t idx, double* K) const {
        auto t = unindex(idx);
        for (int i = 0; i < n; ++i) K[i] = coord(t[i]);
    }
};

// Samples a lattice field at the lattice points K = k/L onto a grid view
// (m = 2 kmax + 1, kbox = kmax / L, spacing exactly 1/L).
inline GridField to_grid(const LatticeField& f) {
    GridField g(f.spec.n, f.d, static_cast<int>(f.spec.axis_points()),
                static_cast<double>(f.spec.kmax) / static_cast<double>(f.spec.L));
    g.values = f.values;  // identical layout
    return g;
}

// Japanese bracket <K> = sqrt(1 + |K|^2).
inline double jbracket_sq(const double* K, int n) {
    double s = 1.0;
    for (int i = 0; i < n; ++i) s += K[i] * K[i];
    return s;
}

inline constexpr double zeta2() { return M_PI * M_PI / 6.0; }
inline constexpr double zeta3() { return 1.2020569031595942854; }
inline constexpr double zeta4() { return M_PI * M_PI * M_PI * M_PI / 90.0; }

// Resonance counting normalization Z_n(L).
inline double Z_n(int n, double L) {
    switch (n) {
        case 2: return L * L * std::log(L) / zeta2();
        case 3: return zeta2() / zeta3() * std::pow(L, 4);
        case 4: return zeta3() / zeta4() * std::pow(L, 6);
        default: throw std::invalid_argument("Z_n: n must be in {2,3,4}");
    }
}

namespace detail {

// d/dK along one axis with centered differences, one-sided at the edges.
inline std::vector<cplx> axis_derivative(const std::vector<cplx>& v, int n, int m, double h,
                                         int axis) {
    std::vector<cplx> out(v.size());
    std::size_t stride = 1;
    for (int i = n - 1; i > axis; --i) stride *= static_cast<std::size_t>(m);
    const std::size_t block = stride * static_cast<std::size_t>(m);
    for (std::size_t base = 0; base < v.size(); base += block) {
        for (std::size_t off = 0; off < stride; ++off) {
            const auto get = [&](std::int64_t t) { return v[base + off + t * stride]; };
            for (std::int64_t t = 0; t < m; ++t) {
                cplx dv;
                if (t == 0) dv = (get(1) - get(0)) / h;
                else if (t == m - 1) dv = (get(m - 1) - get(m - 2)) / h;
                else dv = (get(t + 1) - get(t - 1)) / (2.0 * h);
                out[base + off + t * stride] = dv;
            }
        }
    }
    return out;
}

inline void multi_indices(int n, int N, std::vector<std::array<int, 4>>& out) {
    std::array<int, 4> a{0, 0, 0, 0};
    const std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == n) {
            out.push_back(a);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            a[i] = v;
            rec(i + 1, left - v);
        }
        a[i] = 0;
    };
    rec(0, N);
}

}  // namespace detail

// sup_K <K>^l |f| over one component stored as values with coordinates
// produced by coord_fn(point_index, K_out).
template <typename CoordFn>
inline double weighted_sup(const cplx* v, std::size_t npts, int n, double l, CoordFn coord_fn) {
    double best = 0.0;
    double K[4];
    for (std::size_t i = 0; i < npts; ++i) {
        coord_fn(i, K);
        const double w = std::pow(jbracket_sq(K, n), 0.5 * l);
        best = std::max(best, w * std::abs(v[i]));
    }
    return best;
}

// X^l norm on the lattice: max over components of sup <K>^l |f(K)|.
inline double xl_norm(const LatticeField& f, const WeightedNorm& nrm) {
    if (f.values.empty()) throw std::invalid_argument("xl_norm: empty field");
    if (nrm.N != 0)
        throw std::invalid_argument("xl_norm: derivative orders need grid samples, use GridField");
    const double invL = 1.0 / static_cast<double>(f.spec.L);
    double best = 0.0;
    for (int j = 0; j < f.d; ++j)
        best = std::max(best, weighted_sup(f.component(j), f.points(), f.spec.n, nrm.l,
                                           [&](std::size_t i, double* K) {
                                               auto k = f.spec.unindex(i);
                                               for (int a = 0; a < f.spec.n; ++a)
                                                   K[a] = static_cast<double>(k[a]) * invL;
                                           }));
    return best;
}

// X^{l,N} norm on a grid: sum over |alpha| <= N of sup <K>^l |D^alpha f|.
inline double xl_norm(const GridField& f, const WeightedNorm& nrm) {
    if (f.values.empty()) throw std::invalid_argument("xl_norm: empty field");
    std::vector<std::array<int, 4>> alphas;
    detail::multi_indices(f.n, nrm.N, alphas);
    double total = 0.0;
    const std::size_t npts = f.points();
    for (const auto& alpha : alphas) {
        double best = 0.0;
        for (int j = 0; j < f.d; ++j) {
            std::vector<cplx> v(f.component(j), f.component(j) + npts);
            for (int axis = 0; axis < f.n; ++axis)
                for (int rep = 0; rep < alpha[axis]; ++rep)
                    v = detail::axis_derivative(v, f.n, f.m, f.h(), axis);
            best = std::max(best, weighted_sup(v.data(), npts, f.n, nrm.l,
                                               [&](std::size_t i, double* K) {
                                                   f.coords_of(i, K);
                                               }));
        }
        total += best;
    }
    return total;
}

// X^l distance between two fields on the same lattice.
inline double xl_distance(const LatticeField& a, const LatticeField& b, double l) {
    if (!(a.spec == b.spec) || a.d != b.d)
        throw std::invalid_argument("xl_distance: mismatched lattices");
    const double invL = 1.0 / static_cast<double>(a.spec.L);
    double best = 0.0;
    double K[4];
    for (int j = 0; j < a.d; ++j) {
        const cplx* pa = a.component(j);
        const cplx* pb = b.component(j);
        for (std::size_t i = 0; i < a.points(); ++i) {
            auto k = a.spec.unindex(i);
            for (int ax = 0; ax < a.spec.n; ++ax) K[ax] = static_cast<double>(k[ax]) * invL;
            const double w = std::pow(jbracket_sq(K, a.spec.n), 0.5 * l);
            best = std::max(best, w * std::abs(pa[i] - pb[i]));
        }
    }
    return best;
}

// Projection onto the curl-free part: out_j(K) = K_j / |K|^2 * sum_m K_m f_m(K),
// zero at K = 0. Idempotent; requires d = n.
inline LatticeField project_irrotational(const LatticeField& f) {
    if (f.d != f.spec.n)
        throw std::invalid_argument("project_irrotational: requires d = n");
    LatticeField out(f.spec, f.d);
    const std::size_t npts = f.points();
    for (std::size_t i = 0; i < npts; ++i) {
        auto k = f.spec.unindex(i);
        const std::int64_t k2 = sqnorm(k, f.spec.n);
        if (k2 == 0) continue;  // output zero at K = 0
        cplx dot{0.0, 0.0};
        for (int m = 0; m < f.spec.n; ++m)
            dot += static_cast<double>(k[m]) * f.component(m)[i];
        for (int j = 0; j < f.spec.n; ++j)
            out.component(j)[i] = static_cast<double>(k[j]) / static_cast<double>(k2) * dot;
    }
    return out;
}

// Residual of the irrotationality constraint, sup norm of f - P f.
inline double irrotational_residual(const LatticeField& f) {
    LatticeField p = project_irrotational(f);
    double r = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i)
        r = std::max(r, std::abs(f.values[i] - p.values[i]));
    return r;
}

}  // namespace cr
