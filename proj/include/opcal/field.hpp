#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace opcal {

// Exact scalar for the default ground field: arbitrary-precision rationals.
// Every computation in the kernel runs over a field K that models this
// minimal interface: +,-,*,/, ==, K(int), is_zero. No floating point.
using Rational = boost::multiprecision::cpp_rational;

inline bool is_zero(const Rational& x) { return x.is_zero(); }

inline std::string to_string(const Rational& x) { return x.str(); }

// Parses "a", "-a" or "a/b".
inline Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(boost::multiprecision::cpp_int(s));
  boost::multiprecision::cpp_int num(s.substr(0, slash)), den(s.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("rational with zero denominator: " + s);
  return Rational(num, den);
}

// Prime field Z/p, the opt-in alternative ground field. The modulus is a
// compile-time parameter so each instantiation is a distinct type; the
// kernel is templated on the field, so switching is a type choice.
template <std::uint64_t P>
class Fp {
  static_assert(P >= 2, "modulus must be at least 2");

 public:
  Fp() : v_(0) {}
  Fp(long long x) {
    long long r = x % static_cast<long long>(P);
    if (r < 0) r += static_cast<long long>(P);
    v_ = static_cast<std::uint64_t>(r);
  }
  Fp(int x) : Fp(static_cast<long long>(x)) {}

  std::uint64_t value() const { return v_; }

  friend Fp operator+(Fp a, Fp b) { return from_raw((a.v_ + b.v_) % P); }
  friend Fp operator-(Fp a, Fp b) { return from_raw((a.v_ + P - b.v_) % P); }
  friend Fp operator*(Fp a, Fp b) { return from_raw((a.v_ * b.v_) % P); }
  friend Fp operator/(Fp a, Fp b) { return a * b.inverse(); }
  Fp operator-() const { return from_raw(v_ == 0 ? 0 : P - v_); }
  Fp& operator+=(Fp o) { return *this = *this + o; }
  Fp& operator-=(Fp o) { return *this = *this - o; }
  Fp& operator*=(Fp o) { return *this = *this * o; }
  Fp& operator/=(Fp o) { return *this = *this / o; }
  friend bool operator==(Fp a, Fp b) { return a.v_ == b.v_; }
  friend bool operator!=(Fp a, Fp b) { return a.v_ != b.v_; }

  Fp inverse() const {
    if (v_ == 0) throw std::domain_error("division by zero in Fp");
    // Extended Euclid; P is prime so every nonzero residue is invertible.
    long long t = 0, newt = 1;
    long long r = static_cast<long long>(P), newr = static_cast<long long>(v_);
    while (newr != 0) {
      long long q = r / newr;
      t -= q * newt;
      std::swap(t, newt);
      r -= q * newr;
      std::swap(r, newr);
    }
    if (t < 0) t += static_cast<long long>(P);
    return Fp(t);
  }

 private:
  static Fp from_raw(std::uint64_t v) {
    Fp r;
    r.v_ = v;
    return r;
  }
  std::uint64_t v_;
};

template <std::uint64_t P>
bool is_zero(const Fp<P>& x) {
  return x.value() == 0;
}

template <std::uint64_t P>
std::string to_string(const Fp<P>& x) {
  return std::to_string(x.value());
}

}  // namespace opcal
