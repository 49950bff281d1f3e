#pragma once

#include <fftw3.h>

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "cr/cr_operator.hpp"
#include "cr/lattice.hpp"
#include "cr/vnls.hpp"

namespace cr {

// FFT evaluation of the full (all oscillation levels) lattice system in the
// interaction picture, n = 2. With u_K = e(|K|^2 t) a_K the phase factors
// inside the sum collapse, so
//
//   da_{j,K}/dt = i (eps^2/L^{2n}) e(-|K|^2 t) P(K)[ Conv(|u|^2 u)_{j,K} ]
//
// and the cubic convolution runs through zero-padded FFTs (pad >= 4 kmax + 1,
// so the box-restricted convolution is exact, identical to the indexed sum
// over every mu level). Twiddles advance by one complex multiply per half
// step and are refreshed from the exact integer phase every 1024 steps.
class SpectralVnls {
public:
    SpectralVnls(const LatticeSpec& spec, int d, NonlinearityKind kind, double eps)
        : spec_(spec), d_(d), kind_(kind), eps_(eps) {
        if (spec.n != 2) throw std::invalid_argument("SpectralVnls: n = 2 only");
        if (kind == NonlinearityKind::VectorProjected && d != spec.n)
            throw std::invalid_argument("SpectralVnls: VectorProjected requires d = n");
        F_ = pick_fft_size(4 * spec.kmax + 1);
        npts_ = spec.point_count();
        const std::int64_t W = spec.axis_points();
        pad_index_.resize(npts_);
        k2_.resize(npts_);
        for (std::size_t i = 0; i < npts_; ++i) {
            const IVec k = spec.unindex(i);
            k2_[i] = sqnorm(k, 2);
            const std::int64_t fx = (k[0] % F_ + F_) % F_;
            const std::int64_t fy = (k[1] % F_ + F_) % F_;
            pad_index_[i] = static_cast<std::size_t>(fx * F_ + fy);
        }
        (void)W;
        buf_ = fftw_alloc_complex(static_cast<std::size_t>(F_) * F_);
        fwd_ = fftw_plan_dft_2d(static_cast<int>(F_), static_cast<int>(F_), buf_, buf_,
                                FFTW_FORWARD, FFTW_MEASURE);
        bwd_ = fftw_plan_dft_2d(static_cast<int>(F_), static_cast<int>(F_), buf_, buf_,
                                FFTW_BACKWARD, FFTW_MEASURE);
        x_.assign(static_cast<std::size_t>(d_) * F_ * F_, cplx{0.0, 0.0});
    }
    ~SpectralVnls() {
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
        fftw_free(buf_);
    }
    SpectralVnls(const SpectralVnls&) = delete;
    SpectralVnls& operator=(const SpectralVnls&) = delete;

    // da/dt with explicit twiddle array e(|K|^2 t) per box mode.
    void rhs(const std::vector<cplx>& a, const std::vector<cplx>& twiddle,
             std::vector<cplx>& out) {
        const double coupling =
            eps_ * eps_ / std::pow(static_cast<double>(spec_.L), 2.0 * spec_.n);
        const double fft_norm = 1.0 / (static_cast<double>(F_) * static_cast<double>(F_));
        const std::size_t pad_n = static_cast<std::size_t>(F_) * F_;
        // synthesize u_j(x)
        for (int j = 0; j < d_; ++j) {
            cplx* slot = reinterpret_cast<cplx*>(buf_);
            std::fill(slot, slot + pad_n, cplx{0.0, 0.0});
            const cplx* aj = a.data() + static_cast<std::size_t>(j) * npts_;
            for (std::size_t i = 0; i < npts_; ++i) slot[pad_index_[i]] = aj[i] * twiddle[i];
            fftw_execute(bwd_);
            std::copy(slot, slot + pad_n, x_.begin() + static_cast<std::size_t>(j) * pad_n);
        }
        // w_j = (sum_l |u_l|^2) u_j, transformed back component by component
        out.assign(a.size(), cplx{0.0, 0.0});
        for (int j = 0; j < d_; ++j) {
            cplx* slot = reinterpret_cast<cplx*>(buf_);
            if (d_ == 1) {
                const cplx* u = x_.data();
                for (std::size_t q = 0; q < pad_n; ++q) slot[q] = std::norm(u[q]) * u[q];
            } else {
                for (std::size_t q = 0; q < pad_n; ++q) {
                    double s = 0.0;
                    for (int l = 0; l < d_; ++l)
                        s += std::norm(x_[static_cast<std::size_t>(l) * pad_n + q]);
                    slot[q] = s * x_[static_cast<std::size_t>(j) * pad_n + q];
                }
            }
            fftw_execute(fwd_);
            cplx* oj = out.data() + static_cast<std::size_t>(j) * npts_;
            for (std::size_t i = 0; i < npts_; ++i)
                oj[i] = slot[pad_index_[i]] * std::conj(twiddle[i]) * fft_norm;
        }
        if (kind_ == NonlinearityKind::VectorProjected) project_in_place(out);
        const cplx scale = cplx{0.0, 1.0} * coupling;
        for (auto& v : out) v *= scale;
    }

    // One-off evaluation at time t (exact twiddles), for cross-checks.
    LatticeField rhs_at(const LatticeField& a, double t) {
        std::vector<cplx> tw(npts_);
        exact_twiddles(t, tw);
        std::vector<cplx> out;
        rhs(a.values, tw, out);
        LatticeField f(spec_, d_);
        f.values = std::move(out);
        return f;
    }

    // RK4 with stage twiddles advanced incrementally by e(|K|^2 dt/2).
    void integrate(LatticeField& a, double t0, double dt, std::int64_t steps,
                   const std::function<void(std::int64_t, double, const LatticeField&)>&
                       observer = {}) {
        std::vector<cplx> w0(npts_), dw(npts_), w1(npts_), w2(npts_);
        exact_twiddles(t0, w0);
        half_step_twiddles(dt, dw);
        std::vector<cplx>& y = a.values;
        const std::size_t N = y.size();
        std::vector<cplx> k1(N), k2(N), k3(N), k4(N), tmp(N);
        if (observer) observer(0, t0, a);
        for (std::int64_t s = 0; s < steps; ++s) {
            const double t = t0 + static_cast<double>(s) * dt;
            if (s % 1024 == 0 && s > 0) exact_twiddles(t, w0);
            for (std::size_t i = 0; i < npts_; ++i) w1[i] = w0[i] * dw[i];
            for (std::size_t i = 0; i < npts_; ++i) w2[i] = w1[i] * dw[i];
            rhs(y, w0, k1);
            for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
            rhs(tmp, w1, k2);
            for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
            rhs(tmp, w1, k3);
            for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + dt * k3[i];
            rhs(tmp, w2, k4);
            for (std::size_t i = 0; i < N; ++i)
                y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            for (std::size_t i = 0; i < N; ++i)
                if (!std::isfinite(y[i].real()) || !std::isfinite(y[i].imag()))
                    throw NumericalAbort(s);
            w0.swap(w2);
            if (observer) observer(s + 1, t + dt, a);
        }
    }

    std::int64_t fft_size() const { return F_; }

private:
    static std::int64_t pick_fft_size(std::int64_t min) {
        static const std::int64_t sizes[] = {16,  20,  24,  32,  40,  48,  64,  72,  80,  96,
                                             100, 108, 128, 144, 160, 180, 200, 216, 240, 256,
                                             270, 288, 320, 360, 384, 400, 432, 480, 512, 540,
                                             576, 600, 640, 648, 720, 768, 800, 864, 900, 960};
        for (auto s : sizes)
            if (s >= min) return s;
        return min;  // fallback: exact size (slower plan)
    }

    void exact_twiddles(double t, std::vector<cplx>& w) const {
        constexpr long double kPi = 3.14159265358979323846264338327950288L;
        const long double L2 = static_cast<long double>(spec_.L) * spec_.L;
        for (std::size_t i = 0; i < npts_; ++i) {
            const long double cycles = static_cast<long double>(k2_[i]) *
                                       static_cast<long double>(t) / L2;
            const long double frac = cycles - std::floor(cycles);
            w[i] = std::polar(1.0, static_cast<double>(2.0L * kPi * frac));
        }
    }
    void half_step_twiddles(double dt, std::vector<cplx>& w) const {
        const double L2 = static_cast<double>(spec_.L) * spec_.L;
        for (std::size_t i = 0; i < npts_; ++i)
            w[i] = std::polar(1.0, 2.0 * M_PI * static_cast<double>(k2_[i]) * (0.5 * dt) / L2);
    }
    void project_in_place(std::vector<cplx>& out) const {
        for (std::size_t i = 0; i < npts_; ++i) {
            const IVec k = spec_.unindex(i);
            const std::int64_t kk = sqnorm(k, 2);
            if (kk == 0) {
                for (int j = 0; j < d_; ++j) out[static_cast<std::size_t>(j) * npts_ + i] = 0.0;
                continue;
            }
            cplx dot{0.0, 0.0};
            for (int m = 0; m < d_; ++m)
                dot += static_cast<double>(k[m]) * out[static_cast<std::size_t>(m) * npts_ + i];
            for (int j = 0; j < d_; ++j)
                out[static_cast<std::size_t>(j) * npts_ + i] =
                    static_cast<double>(k[j]) / static_cast<double>(kk) * dot;
        }
    }

    LatticeSpec spec_;
    int d_;
    NonlinearityKind kind_;
    double eps_;
    std::int64_t F_ = 0;
    std::size_t npts_ = 0;
    std::vector<std::size_t> pad_index_;
    std::vector<std::int64_t> k2_;
    std::vector<cplx> x_;  // u_j in physical space, padded
    fftw_complex* buf_ = nullptr;
    fftw_plan fwd_{}, bwd_{};
};

}  // namespace cr
