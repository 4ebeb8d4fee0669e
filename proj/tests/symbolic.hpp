#pragma once

// Exact arithmetic on monomials c * 2^p * pi^q with rational c and p and
// integer q, enough to reduce KG(d) by hand.

#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace kgsharp::testing {

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  constexpr Rational() = default;
  constexpr Rational(std::int64_t n, std::int64_t d = 1) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  friend constexpr Rational operator+(Rational a, Rational b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
  friend constexpr Rational operator-(Rational a, Rational b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
  friend constexpr Rational operator*(Rational a, Rational b) { return {a.num * b.num, a.den * b.den}; }
  friend constexpr Rational operator/(Rational a, Rational b) { return {a.num * b.den, a.den * b.num}; }
  friend constexpr bool operator==(Rational a, Rational b) { return a.num == b.num && a.den == b.den; }
};

// coeff * 2^two * pi^pi, with powers of two kept out of coeff.
struct Monomial {
  Rational coeff{1};
  Rational two{0};
  std::int64_t pi = 0;

  constexpr Monomial normalized() const {
    Monomial m = *this;
    while (m.coeff.num != 0 && m.coeff.num % 2 == 0) {
      m.coeff = Rational(m.coeff.num / 2, m.coeff.den);
      m.two = m.two + 1;
    }
    while (m.coeff.den % 2 == 0) {
      m.coeff = Rational(m.coeff.num, m.coeff.den / 2);
      m.two = m.two - 1;
    }
    return m;
  }
  friend constexpr Monomial operator*(Monomial a, Monomial b) {
    return Monomial{a.coeff * b.coeff, a.two + b.two, a.pi + b.pi}.normalized();
  }
  friend constexpr Monomial operator/(Monomial a, Monomial b) {
    return Monomial{a.coeff / b.coeff, a.two - b.two, a.pi - b.pi}.normalized();
  }
  // Integer power; the rational part must be 1 for fractional exponents.
  constexpr Monomial pow(Rational e) const {
    if (e.den != 1 && !(coeff == Rational(1))) throw std::invalid_argument("Monomial::pow: coefficient not 1");
    if (e.den != 1 && (pi * e.num) % e.den != 0) throw std::invalid_argument("Monomial::pow: fractional pi power");
    Monomial out{Rational(1), two * e, pi * e.num / e.den};
    if (e.den == 1) {
      for (std::int64_t i = 0; i < (e.num < 0 ? -e.num : e.num); ++i) {
        out.coeff = e.num < 0 ? out.coeff / coeff : out.coeff * coeff;
      }
    }
    return out.normalized();
  }
  friend constexpr bool operator==(const Monomial& a, const Monomial& b) {
    const Monomial x = a.normalized();
    const Monomial y = b.normalized();
    return x.coeff == y.coeff && x.two == y.two && x.pi == y.pi;
  }
};

// |S^{d-1}| for d = 1, 2, 3, 5 as exact monomials.
inline Monomial sphere_monomial(int d) {
  switch (d) {
    case 1:
      return Monomial{Rational(2), Rational(0), 0}.normalized();
    case 2:
      return Monomial{Rational(2), Rational(0), 1}.normalized();
    case 3:
      return Monomial{Rational(4), Rational(0), 1}.normalized();
    case 5:
      return Monomial{Rational(8, 3), Rational(0), 2}.normalized();
    default:
      throw std::invalid_argument("sphere_monomial: unsupported d");
  }
}

// 2^{-(d-1)/2} |S^{d-1}| / (2 pi)^{3d-1}.
inline Monomial kg_monomial(int d) {
  const Monomial two_pi{Rational(2), Rational(0), 1};
  const Monomial half_power{Rational(1), Rational(-(d - 1), 2), 0};
  return half_power * sphere_monomial(d) / two_pi.normalized().pow(Rational(3 * d - 1));
}

}  // namespace kgsharp::testing
