#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

#include <Eigen/Core>

namespace dopsym {

/// Exact rational number, always in lowest terms with a positive denominator.
class Rat {
 public:
  Rat() = default;
  Rat(int v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Rat(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Rat(long long v) : v_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)
  Rat(long num, long den);
  explicit Rat(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  /// Accepts "p", "-p" or "p/q". Decimal notation is rejected.
  static Rat parse(std::string_view text);

  [[nodiscard]] bool is_zero() const { return sgn(v_) == 0; }
  [[nodiscard]] bool is_integer() const { return v_.get_den() == 1; }
  [[nodiscard]] int sign() const { return sgn(v_); }
  [[nodiscard]] double to_double() const { return v_.get_d(); }
  [[nodiscard]] std::string str() const;
  [[nodiscard]] const mpq_class& raw() const { return v_; }
  [[nodiscard]] mpz_class numerator() const { return v_.get_num(); }
  [[nodiscard]] mpz_class denominator() const { return v_.get_den(); }

  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.v_)); }
  friend Rat operator+(const Rat& a) { return a; }

  friend bool operator==(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r);

 private:
  mpq_class v_;
};

Rat abs(const Rat& r);
Rat pow(const Rat& base, unsigned exponent);
/// Falling factorial r (r-1) ... (r-n+1).
Rat falling_factorial(const Rat& r, unsigned n);
Rat binomial(unsigned n, unsigned k);

// Eigen expects these unqualified in the scalar's namespace.
inline const Rat& conj(const Rat& x) { return x; }
inline const Rat& real(const Rat& x) { return x; }
inline Rat imag(const Rat&) { return Rat(0); }
inline Rat abs2(const Rat& x) { return x * x; }

}  // namespace dopsym

template <>
struct std::hash<dopsym::Rat> {
  std::size_t operator()(const dopsym::Rat& r) const noexcept {
    return std::hash<std::string>{}(r.str());
  }
};

namespace Eigen {

template <>
struct NumTraits<dopsym::Rat> : GenericNumTraits<dopsym::Rat> {
  typedef dopsym::Rat Real;
  typedef dopsym::Rat NonInteger;
  typedef dopsym::Rat Nested;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 8,
    MulCost = 16
  };
  // Exact arithmetic: every comparison against a tolerance is a comparison with zero.
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
