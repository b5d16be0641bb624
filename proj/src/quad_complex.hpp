#pragma once

#include "memwave/numeric.hpp"

#include <boost/multiprecision/float128.hpp>

namespace memwave::detail {

using qreal = boost::multiprecision::float128;

struct qcplx {
    qreal re = 0;
    qreal im = 0;

    qcplx() = default;
    qcplx(qreal r, qreal i = 0) : re(r), im(i) {}
    explicit qcplx(cplx z) : re(z.real()), im(z.imag()) {}

    cplx to_double() const { return {static_cast<double>(re), static_cast<double>(im)}; }

    qcplx& operator+=(const qcplx& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    qcplx& operator-=(const qcplx& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
};

inline qcplx operator+(qcplx a, const qcplx& b) { return a += b; }
inline qcplx operator-(qcplx a, const qcplx& b) { return a -= b; }
inline qcplx operator-(const qcplx& a) { return {-a.re, -a.im}; }
inline qcplx operator*(const qcplx& a, const qcplx& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline qcplx operator*(const qcplx& a, const qreal& s) { return {a.re * s, a.im * s}; }
inline qcplx operator/(const qcplx& a, const qcplx& b) {
    const qreal d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
inline qcplx conj(const qcplx& a) { return {a.re, -a.im}; }
inline qreal abs(const qcplx& a) { return boost::multiprecision::hypot(a.re, a.im); }

inline qcplx exp(const qcplx& z) {
    const qreal m = boost::multiprecision::exp(z.re);
    if (z.im == 0) return {m, 0};
    return {m * boost::multiprecision::cos(z.im), m * boost::multiprecision::sin(z.im)};
}

inline qcplx expm1(const qcplx& z) {
    if (z.im == 0) return {boost::multiprecision::expm1(z.re), 0};
    const qreal hs = boost::multiprecision::sin(z.im / 2);
    return {boost::multiprecision::expm1(z.re) * boost::multiprecision::cos(z.im) - 2 * hs * hs,
            boost::multiprecision::exp(z.re) * boost::multiprecision::sin(z.im)};
}

}  // namespace memwave::detail
