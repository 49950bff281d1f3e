#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "cr/lattice.hpp"
#include "cr/quadrature.hpp"
#include "cr/zpoly.hpp"

namespace cr {

// Special Hermite functions on R^2:
//   psi_{a,b} = (1/sqrt(pi a! b!)) (a_d^*)^a (a_g^*)^b e^{-z zb/2},
//   phi_{l,m} = psi_{(l+m)/2, (l-m)/2}  for l+m even, |m| <= l,
// joint eigenfunctions of H = -Lap + |x|^2 (eigenvalue 2(l+1)) and of the
// angular momentum (eigenvalue m). The ladder operators act on the
// polynomial factor as P -> zP - dP/dzb and P -> zbP - dP/dz, so the
// construction is exact integer arithmetic up to the final normalization.
struct HermiteBasis {
    int lmax = 0;
    std::vector<std::pair<int, int>> lm;  // (l, m), ordered by l then m
    std::vector<ZPoly> poly;              // phi_b = poly[b](z, zb) e^{-|z|^2/2}

    explicit HermiteBasis(int lmax_) : lmax(lmax_) {
        if (lmax < 0) throw std::invalid_argument("HermiteBasis: lmax must be >= 0");
        for (int l = 0; l <= lmax; ++l)
            for (int m = -l; m <= l; m += 2) lm.emplace_back(l, m);
        poly.reserve(lm.size());
        for (auto [l, m] : lm) {
            const int a = (l + m) / 2, b = (l - m) / 2;
            ZPoly p = ZPoly::one();
            for (int i = 0; i < a; ++i) p = p.raise_d();
            for (int i = 0; i < b; ++i) p = p.raise_g();
            double norm = M_PI;
            for (int i = 2; i <= a; ++i) norm *= i;
            for (int i = 2; i <= b; ++i) norm *= i;
            poly.push_back(p * (1.0 / std::sqrt(norm)));
        }
    }

    std::size_t size() const { return lm.size(); }
    // inverse of index_of, independent of lmax
    static std::pair<int, int> lm_of(std::size_t b) {
        const int l = static_cast<int>((std::sqrt(8.0 * static_cast<double>(b) + 1.0) - 1.0) / 2.0);
        const int m = 2 * (static_cast<int>(b) - l * (l + 1) / 2) - l;
        return {l, m};
    }
    int index_of(int l, int m) const {
        if (l < 0 || l > lmax || m < -l || m > l || (l + m) % 2 != 0) return -1;
        // offset of level l is sum_{j<l} (j+1) = l(l+1)/2; within level m = -l..l step 2
        return l * (l + 1) / 2 + (m + l) / 2;
    }

    cplx eval(std::size_t b, cplx z) const {
        return poly[b].eval(z) * std::exp(-0.5 * std::norm(z));
    }
};

// Basis values tabulated on a tensor-product Gauss-Hermite grid whose
// absorbed weights integrate poly * e^{-alpha |x|^2} exactly.
struct BasisTable {
    int Q = 0;
    double alpha = 1.0;
    std::vector<double> x, w;  // 1-D nodes / absorbed weights
    std::vector<cplx> vals;    // [b * Q*Q + i*Q + j], z = x[i] + i x[j]

    BasisTable(const HermiteBasis& basis, int order, double alpha_)
        : Q(order), alpha(alpha_) {
        GaussHermite gh(order, alpha_);
        x = gh.x;
        w = gh.w;
        vals.resize(basis.size() * static_cast<std::size_t>(Q) * Q);
        for (std::size_t b = 0; b < basis.size(); ++b)
            for (int i = 0; i < Q; ++i)
                for (int j = 0; j < Q; ++j)
                    vals[b * Q * Q + static_cast<std::size_t>(i) * Q + j] =
                        basis.eval(b, cplx{x[i], x[j]});
    }

    std::size_t nodes() const { return static_cast<std::size_t>(Q) * Q; }
    const cplx* row(std::size_t b) const { return vals.data() + b * nodes(); }
    double w2(std::size_t node) const { return w[node / Q] * w[node % Q]; }
};

// Factory with the Gram sanity gate: orthonormality must hold to 1e-10 at
// the requested quadrature order, otherwise the order is too small.
inline std::pair<HermiteBasis, BasisTable> hermite_basis(int lmax, int order) {
    if (order < 2 * lmax + 4)
        throw std::invalid_argument("hermite_basis: quadrature order must be >= 2*lmax + 4");
    HermiteBasis basis(lmax);
    BasisTable gram_tab(basis, order, 1.0);
    const std::size_t B = basis.size();
    double resid = 0.0;
    for (std::size_t b1 = 0; b1 < B; ++b1)
        for (std::size_t b2 = b1; b2 < B; ++b2) {
            cplx s{0.0, 0.0};
            const cplx* r1 = gram_tab.row(b1);
            const cplx* r2 = gram_tab.row(b2);
            for (std::size_t q = 0; q < gram_tab.nodes(); ++q)
                s += gram_tab.w2(q) * std::conj(r1[q]) * r2[q];
            resid = std::max(resid, std::abs(s - (b1 == b2 ? 1.0 : 0.0)));
        }
    if (resid > 1e-10)
        throw std::runtime_error("hermite_basis: Gram residual " + std::to_string(resid) +
                                 " above 1e-10; quadrature order too small");
    return {std::move(basis), std::move(gram_tab)};
}

// Coefficients of a d-component field in the special Hermite basis.
struct HermiteState {
    int d = 1;
    int lmax = 0;
    std::vector<cplx> c;  // [j * B + b]

    HermiteState() = default;
    HermiteState(int d_, int lmax_)
        : d(d_), lmax(lmax_),
          c(static_cast<std::size_t>(d_) * basis_size(lmax_), cplx{0.0, 0.0}) {
        if (d < 1) throw std::invalid_argument("HermiteState: d must be >= 1");
    }
    static std::size_t basis_size(int lmax) {
        return static_cast<std::size_t>(lmax + 1) * (lmax + 2) / 2;
    }
    std::size_t B() const { return basis_size(lmax); }
    cplx& at(int j, std::size_t b) { return c[static_cast<std::size_t>(j) * B() + b]; }
    cplx at(int j, std::size_t b) const { return c[static_cast<std::size_t>(j) * B() + b]; }
    double mass() const {
        double s = 0.0;
        for (const auto& v : c) s += std::norm(v);
        return s;
    }
};

// Matrix elements
//   M(l1,m1,l2,m2,l3,m3) = pi^2 * integral phi_{l1,m1} phi_{l2,m2}
//                          conj(phi_{l3,m3}) conj(phi_{l4,m4}) dx
// with l4 = l1 + l2 - l3, m4 = m1 + m2 - m3. Zero unless 0 <= l4 <= lmax,
// |m4| <= l4 (parity of l4+m4 is automatic). Real; symmetric under the
// (1<->2) and (3<->4) swaps.
struct HermiteTensor {
    int lmax = 0;
    bool radial_only = false;  // built on the m = 0 subspace only
    struct Entry {
        std::uint16_t i1, i2, i3, i4;
        double val;
    };
    std::vector<Entry> entries;
};

namespace detail {

inline HermiteTensor build_tensor(const HermiteBasis& basis, int lmax, bool radial_only) {
    if (lmax > basis.lmax) throw std::invalid_argument("hermite_tensor: lmax exceeds basis");
    BasisTable tab(basis, 2 * basis.lmax + 4, 2.0);
    HermiteTensor T;
    T.lmax = lmax;
    T.radial_only = radial_only;
    const std::size_t nn = tab.nodes();
    std::vector<double> w2(nn);
    for (std::size_t q = 0; q < nn; ++q) w2[q] = tab.w2(q);

    std::vector<std::size_t> sel;
    for (std::size_t b = 0; b < basis.size(); ++b) {
        const auto [l, m] = basis.lm[b];
        if (l <= lmax && (!radial_only || m == 0)) sel.push_back(b);
    }
    std::vector<cplx> prod(nn);
    for (std::size_t a1 = 0; a1 < sel.size(); ++a1) {
        for (std::size_t a2 = a1; a2 < sel.size(); ++a2) {
            const std::size_t b1 = sel[a1], b2 = sel[a2];
            const auto [l1, m1] = basis.lm[b1];
            const auto [l2, m2] = basis.lm[b2];
            const cplx* r1 = tab.row(b1);
            const cplx* r2 = tab.row(b2);
            for (std::size_t q = 0; q < nn; ++q) prod[q] = r1[q] * r2[q] * w2[q];
            for (std::size_t a3 = 0; a3 < sel.size(); ++a3) {
                const std::size_t b3 = sel[a3];
                const auto [l3, m3] = basis.lm[b3];
                const int l4 = l1 + l2 - l3, m4 = m1 + m2 - m3;
                const int b4 = basis.index_of(l4, m4);
                if (l4 < 0 || l4 > lmax || b4 < 0) continue;
                if (radial_only && m4 != 0) continue;
                const cplx* r3 = tab.row(b3);
                const cplx* r4 = tab.row(static_cast<std::size_t>(b4));
                cplx s{0.0, 0.0};
                for (std::size_t q = 0; q < nn; ++q)
                    s += prod[q] * std::conj(r3[q] * r4[q]);
                const double val = M_PI * M_PI * s.real();
                T.entries.push_back(
                    HermiteTensor::Entry{static_cast<std::uint16_t>(b1),
                                         static_cast<std::uint16_t>(b2),
                                         static_cast<std::uint16_t>(b3),
                                         static_cast<std::uint16_t>(b4), val});
                if (b1 != b2)
                    T.entries.push_back(
                        HermiteTensor::Entry{static_cast<std::uint16_t>(b2),
                                             static_cast<std::uint16_t>(b1),
                                             static_cast<std::uint16_t>(b3),
                                             static_cast<std::uint16_t>(b4), val});
            }
        }
    }
    return T;
}

}  // namespace detail

inline HermiteTensor hermite_tensor(const HermiteBasis& basis, int lmax) {
    return detail::build_tensor(basis, lmax, false);
}

// m = 0 subspace only; enough for radially symmetric data, much larger lmax.
inline HermiteTensor hermite_tensor_radial(const HermiteBasis& basis, int lmax) {
    return detail::build_tensor(basis, lmax, true);
}

// Disk cache keyed by (lmax, radial flag), with a version header.
inline constexpr std::uint64_t kTensorCacheMagic = 0x31544348ull;  // "HCT1"

inline void save_tensor(const std::string& path, const HermiteTensor& T) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("save_tensor: cannot open " + path);
    const std::uint64_t header[4] = {kTensorCacheMagic, static_cast<std::uint64_t>(T.lmax),
                                     static_cast<std::uint64_t>(T.radial_only ? 1 : 0),
                                     T.entries.size()};
    std::fwrite(header, sizeof(header), 1, f);
    std::fwrite(T.entries.data(), sizeof(HermiteTensor::Entry), T.entries.size(), f);
    std::fclose(f);
}

inline bool load_tensor(const std::string& path, int lmax, bool radial_only, HermiteTensor& out) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) return false;
    std::uint64_t header[4];
    if (std::fread(header, sizeof(header), 1, f) != 1 || header[0] != kTensorCacheMagic ||
        header[1] != static_cast<std::uint64_t>(lmax) ||
        header[2] != static_cast<std::uint64_t>(radial_only ? 1 : 0)) {
        std::fclose(f);
        return false;
    }
    out.lmax = lmax;
    out.radial_only = radial_only;
    out.entries.resize(header[3]);
    const bool ok = out.entries.empty() ||
                    std::fread(out.entries.data(), sizeof(HermiteTensor::Entry),
                               out.entries.size(), f) == out.entries.size();
    std::fclose(f);
    return ok;
}

// JSON rows (j, l, m, re, im) for HermiteState, see io.hpp for the writer.

// Evaluates the represented field at arbitrary points z = Kx + i Ky.
inline std::vector<cplx> synthesize_at(const HermiteState& s, const HermiteBasis& basis,
                                       const std::vector<cplx>& z) {
    if (s.lmax > basis.lmax) throw std::invalid_argument("synthesize_at: state.lmax > basis.lmax");
    const std::size_t B = s.B();
    std::vector<cplx> out(static_cast<std::size_t>(s.d) * z.size(), cplx{0.0, 0.0});
    std::vector<cplx> phi(z.size());
    for (std::size_t b = 0; b < B; ++b) {
        bool used = false;
        for (int j = 0; j < s.d; ++j) used |= (s.at(j, b) != cplx{0.0, 0.0});
        if (!used) continue;
        for (std::size_t q = 0; q < z.size(); ++q) phi[q] = basis.eval(b, z[q]);
        for (int j = 0; j < s.d; ++j) {
            const cplx cb = s.at(j, b);
            if (cb == cplx{0.0, 0.0}) continue;
            cplx* oj = out.data() + static_cast<std::size_t>(j) * z.size();
            for (std::size_t q = 0; q < z.size(); ++q) oj[q] += cb * phi[q];
        }
    }
    return out;
}

// Projects function samples onto the basis and reports the relative L^2 tail
// left outside the span. Samples must come with quadrature weights that
// integrate |g|^2 exactly (alpha = 1 tables do).
struct HermiteProjection {
    HermiteState state;
    double tail = 0.0;  // relative L2 mass outside the basis span
};

template <typename FieldAt>
inline HermiteProjection project_to_hermite(const HermiteBasis& basis, const BasisTable& tab1,
                                            int d, FieldAt&& field_at) {
    if (tab1.alpha != 1.0)
        throw std::invalid_argument("project_to_hermite: needs an alpha = 1 table");
    HermiteProjection out;
    out.state = HermiteState(d, basis.lmax);
    const std::size_t B = basis.size();
    const std::size_t nn = tab1.nodes();
    double total = 0.0, captured = 0.0;
    std::vector<cplx> g(nn);
    for (int j = 0; j < d; ++j) {
        for (std::size_t q = 0; q < nn; ++q)
            g[q] = field_at(j, cplx{tab1.x[q / tab1.Q], tab1.x[q % tab1.Q]});
        for (std::size_t q = 0; q < nn; ++q) total += tab1.w2(q) * std::norm(g[q]);
        for (std::size_t b = 0; b < B; ++b) {
            const cplx* r = tab1.row(b);
            cplx s{0.0, 0.0};
            for (std::size_t q = 0; q < nn; ++q) s += tab1.w2(q) * std::conj(r[q]) * g[q];
            out.state.at(j, b) = s;
            captured += std::norm(s);
        }
    }
    out.tail = total > 0.0 ? std::max(0.0, (total - captured) / total) : 0.0;
    return out;
}

}  // namespace cr
