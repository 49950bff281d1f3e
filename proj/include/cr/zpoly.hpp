#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace cr {

// Polynomial in the complex variable z and its conjugate zb with real
// coefficients, stored as a dense (deg_z+1) x (deg_zb+1) table.
// coeff(a, b) multiplies z^a * zb^b.
//
// Products of ladder operators acting on a Gaussian stay in this class:
// the raising maps below send P -> z*P - d/dzb P and P -> zb*P - d/dz P,
// both of which keep integer coefficients when starting from P = 1.
class ZPoly {
public:
    ZPoly() : nz_(1), nzb_(1), c_(1, 0.0) {}
    ZPoly(std::size_t deg_z, std::size_t deg_zb)
        : nz_(deg_z + 1), nzb_(deg_zb + 1), c_(nz_ * nzb_, 0.0) {}

    static ZPoly one() {
        ZPoly p;
        p.c_[0] = 1.0;
        return p;
    }

    double coeff(std::size_t a, std::size_t b) const {
        return (a < nz_ && b < nzb_) ? c_[a * nzb_ + b] : 0.0;
    }
    double& at(std::size_t a, std::size_t b) { return c_[a * nzb_ + b]; }
    std::size_t deg_z() const { return nz_ - 1; }
    std::size_t deg_zb() const { return nzb_ - 1; }

    ZPoly mul_z() const {
        ZPoly r(deg_z() + 1, deg_zb());
        for (std::size_t a = 0; a < nz_; ++a)
            for (std::size_t b = 0; b < nzb_; ++b) r.at(a + 1, b) = coeff(a, b);
        return r;
    }
    ZPoly mul_zb() const {
        ZPoly r(deg_z(), deg_zb() + 1);
        for (std::size_t a = 0; a < nz_; ++a)
            for (std::size_t b = 0; b < nzb_; ++b) r.at(a, b + 1) = coeff(a, b);
        return r;
    }
    ZPoly d_z() const {
        ZPoly r(deg_z() ? deg_z() - 1 : 0, deg_zb());
        for (std::size_t a = 1; a < nz_; ++a)
            for (std::size_t b = 0; b < nzb_; ++b)
                r.at(a - 1, b) = static_cast<double>(a) * coeff(a, b);
        return r;
    }
    ZPoly d_zb() const {
        ZPoly r(deg_z(), deg_zb() ? deg_zb() - 1 : 0);
        for (std::size_t a = 0; a < nz_; ++a)
            for (std::size_t b = 1; b < nzb_; ++b)
                r.at(a, b - 1) = static_cast<double>(b) * coeff(a, b);
        return r;
    }

    ZPoly operator+(const ZPoly& o) const {
        ZPoly r(std::max(deg_z(), o.deg_z()), std::max(deg_zb(), o.deg_zb()));
        for (std::size_t a = 0; a < r.nz_; ++a)
            for (std::size_t b = 0; b < r.nzb_; ++b) r.at(a, b) = coeff(a, b) + o.coeff(a, b);
        return r;
    }
    ZPoly operator-(const ZPoly& o) const {
        ZPoly r(std::max(deg_z(), o.deg_z()), std::max(deg_zb(), o.deg_zb()));
        for (std::size_t a = 0; a < r.nz_; ++a)
            for (std::size_t b = 0; b < r.nzb_; ++b) r.at(a, b) = coeff(a, b) - o.coeff(a, b);
        return r;
    }
    ZPoly operator*(double s) const {
        ZPoly r = *this;
        for (auto& v : r.c_) v *= s;
        return r;
    }

    // Raising operators for the oscillator ladder applied to P * exp(-z zb / 2):
    //   (1/2)(z - 2 d/dzb)[P e] = (z P - dP/dzb) e
    //   (1/2)(zb - 2 d/dz)[P e]  = (zb P - dP/dz) e
    ZPoly raise_d() const { return mul_z() - d_zb(); }
    ZPoly raise_g() const { return mul_zb() - d_z(); }

    std::complex<double> eval(std::complex<double> z) const {
        const std::complex<double> zb = std::conj(z);
        // Horner in z, inner Horner in zb.
        std::complex<double> acc = 0.0;
        for (std::size_t a = nz_; a-- > 0;) {
            std::complex<double> row = 0.0;
            for (std::size_t b = nzb_; b-- > 0;) row = row * zb + c_[a * nzb_ + b];
            acc = acc * z + row;
        }
        return acc;
    }

private:
    std::size_t nz_, nzb_;
    std::vector<double> c_;
};

}  // namespace cr
