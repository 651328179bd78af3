#pragma once
#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <string>

namespace mixedpowers {

namespace bmp = boost::multiprecision;

// Working real type: MPFR float with runtime-selectable precision.
// Precision is process-global (set once per run, before spawning workers).
using Real = bmp::number<bmp::mpfr_float_backend<0>, bmp::et_off>;
using BigInt = bmp::number<bmp::gmp_int, bmp::et_off>;
using Rational = bmp::number<bmp::gmp_rational, bmp::et_off>;

// Set the working precision in mantissa bits (default 128). Must be called
// before any Real is constructed by the computation; constants caches are
// keyed by the resulting decimal precision, so switching is safe between
// top-level computations but not mid-computation.
void set_precision_bits(unsigned bits);
unsigned precision_bits();

const Real& pi();
Real real_infinity();
bool is_inf(const Real& x);

double to_double(const Real& x);

// ---------------------------------------------------------------------------
// Complex numbers over Real. std::complex<Real> is not guaranteed to work
// with a multiprecision value type, so we carry our own minimal struct.
struct Cplx {
    Real re, im;

    Cplx() : re(0), im(0) {}
    Cplx(Real r) : re(std::move(r)), im(0) {}
    Cplx(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    Cplx(int r) : re(r), im(0) {}

    Cplx operator-() const { return {-re, -im}; }
    Cplx& operator+=(const Cplx& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Cplx& operator-=(const Cplx& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
};

inline Cplx operator+(const Cplx& a, const Cplx& b) { return {a.re + b.re, a.im + b.im}; }
inline Cplx operator-(const Cplx& a, const Cplx& b) { return {a.re - b.re, a.im - b.im}; }
inline Cplx operator*(const Cplx& a, const Cplx& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline Cplx operator*(const Real& s, const Cplx& a) { return {s * a.re, s * a.im}; }
inline Cplx operator*(const Cplx& a, const Real& s) { return {a.re * s, a.im * s}; }
inline Cplx operator/(const Cplx& a, const Real& s) { return {a.re / s, a.im / s}; }
inline Cplx operator/(const Cplx& a, const Cplx& b) {
    Real d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

inline Real cabs(const Cplx& z) {
    using bmp::hypot;
    return hypot(z.re, z.im);
}
inline Real cnorm(const Cplx& z) { return z.re * z.re + z.im * z.im; }
// principal argument in (-pi, pi]
inline Real carg(const Cplx& z) {
    using bmp::atan2;
    return atan2(z.im, z.re);
}
inline Cplx conj(const Cplx& z) { return {z.re, -z.im}; }

// e^{z}
inline Cplx cexp(const Cplx& z) {
    using bmp::cos;
    using bmp::exp;
    using bmp::sin;
    Real m = exp(z.re);
    return {m * cos(z.im), m * sin(z.im)};
}
// r * e^{i t}
inline Cplx polar(const Real& r, const Real& t) {
    using bmp::cos;
    using bmp::sin;
    return {r * cos(t), r * sin(t)};
}
// i * z
inline Cplx times_i(const Cplx& z) { return {-z.im, z.re}; }

// Real(rational) at current working precision
Real to_real(const Rational& q);
Real to_real(const BigInt& n);

// natural log of |q|, q != 0 (via log|num| - log|den|, immune to overflow)
Real log_abs_rational(const Rational& q);

// fixed significant-digit decimal rendering (deterministic across runs)
std::string real_str(const Real& x, unsigned digits = 0);

}  // namespace mixedpowers
