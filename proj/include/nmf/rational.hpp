#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "nmf/errors.hpp"

namespace nmf {

using BigInt = boost::multiprecision::cpp_int;

// Exact nonnegative rational. Used for variance bookkeeping where budget
// reallocation must stay exact (precision sums) and for the discrete
// Gaussian sampler parameter.
struct Rational {
  BigInt num{0};
  BigInt den{1};

  void normalize() {
    if (den == 0) throw ValidationError("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    BigInt g = boost::multiprecision::gcd(num < 0 ? BigInt(-num) : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  // The exact dyadic rational a finite double denotes.
  static Rational from_double(double v) {
    if (!(v > 0) || !std::isfinite(v))
      throw ValidationError("expected a positive finite value, got " + std::to_string(v));
    int exp2 = 0;
    double m = std::frexp(v, &exp2);
    auto mant = static_cast<std::uint64_t>(std::ldexp(m, 53));
    int e = exp2 - 53;
    Rational r;
    r.num = mant;
    r.den = 1;
    if (e >= 0)
      r.num <<= e;
    else
      r.den <<= -e;
    r.normalize();
    return r;
  }

  Rational reciprocal() const {
    if (num == 0) throw ValidationError("reciprocal of zero");
    return Rational{den, num};
  }

  Rational operator+(const Rational& o) const {
    Rational r{num * o.den + o.num * den, den * o.den};
    r.normalize();
    return r;
  }

  double to_double() const {
    // Scale so the conversion keeps full double precision even when
    // num/den exceed 2^53.
    Rational r = *this;
    r.normalize();
    if (r.num == 0) return 0.0;
    long shift = static_cast<long>(boost::multiprecision::msb(r.num)) -
                 static_cast<long>(boost::multiprecision::msb(r.den));
    // Bring num/den into [2^62, 2^64) x [1, 2) style ranges via shifting.
    BigInt n = r.num, d = r.den;
    long e = 0;
    while (boost::multiprecision::msb(n) < 96) {
      n <<= 32;
      e -= 32;
    }
    BigInt q = n / d;
    double approx = q.convert_to<double>();
    (void)shift;
    return std::ldexp(approx, static_cast<int>(e));
  }
};

}  // namespace nmf
