#include "mixedpowers/numeric.hpp"

#include <boost/math/constants/constants.hpp>

#include <map>
#include <mutex>

#include "mixedpowers/errors.hpp"

namespace mixedpowers {

namespace {

unsigned g_bits = 128;

unsigned bits_to_digits10(unsigned bits) {
    // ceil(bits * log10(2)) + 2 guard digits
    return static_cast<unsigned>(static_cast<double>(bits) * 0.30102999566398120) + 3;
}

}  // namespace

void set_precision_bits(unsigned bits) {
    if (bits < 24 || bits > 8192)
        throw ConstraintViolation("set_precision_bits: bits must be in [24, 8192]");
    g_bits = bits;
    Real::default_precision(bits_to_digits10(bits));
}

unsigned precision_bits() { return g_bits; }

namespace {
struct PrecisionInit {
    PrecisionInit() { Real::default_precision(bits_to_digits10(128)); }
} g_precision_init;
}  // namespace

const Real& pi() {
    static std::mutex mu;
    static std::map<unsigned, Real> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(Real::default_precision());
    if (it == cache.end()) {
        Real v = boost::math::constants::pi<Real>();
        it = cache.emplace(Real::default_precision(), v).first;
    }
    return it->second;
}

Real real_infinity() { return std::numeric_limits<Real>::infinity(); }

bool is_inf(const Real& x) {
    using bmp::isinf;
    return isinf(x);
}

double to_double(const Real& x) { return x.convert_to<double>(); }

Real to_real(const Rational& q) { return Real(q); }
Real to_real(const BigInt& n) { return Real(n); }

Real log_abs_rational(const Rational& q) {
    using bmp::abs;
    using bmp::log;
    if (q == 0) return -real_infinity();
    BigInt num = numerator(q), den = denominator(q);
    return log(Real(abs(num))) - log(Real(abs(den)));
}

std::string real_str(const Real& x, unsigned digits) {
    if (digits == 0) digits = Real::default_precision();
    return x.str(digits);
}

}  // namespace mixedpowers
