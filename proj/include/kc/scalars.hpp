#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace kc {

namespace mp = boost::multiprecision;
using BigInt = mp::number<mp::cpp_int_backend<>, mp::et_off>;
using BigRat = mp::number<mp::rational_adaptor<mp::cpp_int_backend<>>, mp::et_off>;

// Arbitrary-precision integer with eager (non-expression-template) semantics,
// usable as an Eigen scalar. All arithmetic in this project is exact; there is
// no fixed-width fallback anywhere.
class Int {
 public:
  Int() = default;
  Int(int v) : v_(v) {}
  Int(long v) : v_(v) {}
  Int(long long v) : v_(v) {}
  Int(unsigned long long v) : v_(v) {}
  explicit Int(const BigInt& v) : v_(v) {}
  explicit Int(const std::string& s) : v_(s) {}

  const BigInt& raw() const { return v_; }

  bool is_zero() const { return v_.is_zero(); }
  int sign() const { return v_.sign(); }
  bool fits_int64() const {
    return v_ >= (std::numeric_limits<long long>::min)() &&
           v_ <= (std::numeric_limits<long long>::max)();
  }
  long long to_int64() const { return v_.convert_to<long long>(); }
  std::string str() const { return v_.str(); }

  friend Int operator+(const Int& a, const Int& b) { return Int(BigInt(a.v_ + b.v_)); }
  friend Int operator-(const Int& a, const Int& b) { return Int(BigInt(a.v_ - b.v_)); }
  friend Int operator*(const Int& a, const Int& b) { return Int(BigInt(a.v_ * b.v_)); }
  // Truncated (C-style) division; use div_floor/mod_floor for lattice work.
  friend Int operator/(const Int& a, const Int& b) { return Int(BigInt(a.v_ / b.v_)); }
  friend Int operator%(const Int& a, const Int& b) { return Int(BigInt(a.v_ % b.v_)); }
  Int operator-() const { return Int(BigInt(-v_)); }

  Int& operator+=(const Int& o) { v_ += o.v_; return *this; }
  Int& operator-=(const Int& o) { v_ -= o.v_; return *this; }
  Int& operator*=(const Int& o) { v_ *= o.v_; return *this; }
  Int& operator/=(const Int& o) { v_ /= o.v_; return *this; }
  Int& operator%=(const Int& o) { v_ %= o.v_; return *this; }

  friend bool operator==(const Int& a, const Int& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Int& a, const Int& b) {
    return a.v_.compare(b.v_) <=> 0;
  }

  friend std::ostream& operator<<(std::ostream& os, const Int& x);

 private:
  BigInt v_;
};

std::ostream& operator<<(std::ostream& os, const Int& x);

inline Int abs(const Int& x) { return x < Int(0) ? -x : x; }
Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);
Int pow(const Int& base, unsigned long exp);

// Floor division and the matching non-negative remainder.
Int div_floor(const Int& a, const Int& b);
Int mod_floor(const Int& a, const Int& b);

// g = a*x + b*y with g = gcd(a,b) >= 0.
Int ext_gcd(const Int& a, const Int& b, Int& x, Int& y);

// Inverse of a modulo m (m > 1, gcd(a, m) = 1); throws on non-invertible input.
Int mod_inverse(const Int& a, const Int& m);

// Exact rational with eager semantics, usable as an Eigen scalar.
class Rat {
 public:
  Rat() = default;
  Rat(int v) : v_(v) {}
  Rat(long long v) : v_(v) {}
  Rat(const Int& v) : v_(v.raw()) {}
  Rat(const Int& num, const Int& den);
  explicit Rat(const BigRat& v) : v_(v) {}

  const BigRat& raw() const { return v_; }
  Int num() const { return Int(BigInt(mp::numerator(v_))); }
  Int den() const { return Int(BigInt(mp::denominator(v_))); }
  bool is_zero() const { return v_.is_zero(); }
  bool is_integer() const { return mp::denominator(v_) == 1; }
  std::string str() const;

  friend Rat operator+(const Rat& a, const Rat& b) { return Rat(BigRat(a.v_ + b.v_)); }
  friend Rat operator-(const Rat& a, const Rat& b) { return Rat(BigRat(a.v_ - b.v_)); }
  friend Rat operator*(const Rat& a, const Rat& b) { return Rat(BigRat(a.v_ * b.v_)); }
  friend Rat operator/(const Rat& a, const Rat& b) { return Rat(BigRat(a.v_ / b.v_)); }
  Rat operator-() const { return Rat(BigRat(-v_)); }

  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o) { v_ /= o.v_; return *this; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    return a.v_.compare(b.v_) <=> 0;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rat& x);

 private:
  BigRat v_;
};

std::ostream& operator<<(std::ostream& os, const Rat& x);

inline Rat abs(const Rat& x) { return x < Rat(0) ? -x : x; }
Int floor(const Rat& x);
// Representative of x mod Z in [0, 1).
Rat mod1(const Rat& x);

}  // namespace kc

#include <Eigen/Core>

namespace Eigen {

template <>
struct NumTraits<kc::Int> : GenericNumTraits<kc::Int> {
  typedef kc::Int Real;
  typedef kc::Int NonInteger;
  typedef kc::Int Nested;
  typedef kc::Int Literal;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 60,
    MulCost = 60
  };
  static inline Real epsilon() { return kc::Int(0); }
  static inline Real dummy_precision() { return kc::Int(0); }
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<kc::Rat> : GenericNumTraits<kc::Rat> {
  typedef kc::Rat Real;
  typedef kc::Rat NonInteger;
  typedef kc::Rat Nested;
  typedef kc::Rat Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 100,
    MulCost = 100
  };
  static inline Real epsilon() { return kc::Rat(0); }
  static inline Real dummy_precision() { return kc::Rat(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
