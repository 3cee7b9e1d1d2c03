#pragma once

#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dopsym/rational.hpp"

namespace dopsym {

enum class Space { line, circle };

std::string to_string(Space s);
Space parse_space(std::string_view s);

/// Polynomial in x over Q. coeffs[i] multiplies x^i; no trailing zeros.
class PolyFn {
 public:
  PolyFn() = default;
  explicit PolyFn(std::vector<Rat> coeffs);
  static PolyFn constant(const Rat& c);
  static PolyFn monomial(unsigned degree, const Rat& c = Rat(1));

  /// -1 for the zero polynomial.
  [[nodiscard]] int degree() const { return static_cast<int>(c_.size()) - 1; }
  [[nodiscard]] bool is_zero() const { return c_.empty(); }
  [[nodiscard]] const std::vector<Rat>& coeffs() const { return c_; }
  [[nodiscard]] Rat coeff(unsigned i) const { return i < c_.size() ? c_[i] : Rat(0); }

  [[nodiscard]] PolyFn diff(unsigned n = 1) const;
  [[nodiscard]] Rat eval(const Rat& x) const;
  [[nodiscard]] double eval(double x) const;

  friend PolyFn operator+(const PolyFn& a, const PolyFn& b);
  friend PolyFn operator-(const PolyFn& a, const PolyFn& b);
  friend PolyFn operator*(const PolyFn& a, const PolyFn& b);
  friend PolyFn operator*(const Rat& s, const PolyFn& a);
  friend PolyFn operator-(const PolyFn& a) { return Rat(-1) * a; }
  friend bool operator==(const PolyFn& a, const PolyFn& b) { return a.c_ == b.c_; }

 private:
  void trim();
  std::vector<Rat> c_;
};

/// Finite trigonometric polynomial m + sum_n (c_n cos nx + s_n sin nx) over Q.
class TrigFn {
 public:
  TrigFn() = default;
  static TrigFn constant(const Rat& c);
  static TrigFn cos(unsigned n, const Rat& c = Rat(1));
  static TrigFn sin(unsigned n, const Rat& c = Rat(1));

  [[nodiscard]] const Rat& mean() const { return mean_; }
  [[nodiscard]] const std::map<unsigned, Rat>& cos_coeffs() const { return cos_; }
  [[nodiscard]] const std::map<unsigned, Rat>& sin_coeffs() const { return sin_; }
  [[nodiscard]] Rat cos_coeff(unsigned n) const;
  [[nodiscard]] Rat sin_coeff(unsigned n) const;
  [[nodiscard]] bool is_zero() const { return mean_.is_zero() && cos_.empty() && sin_.empty(); }
  /// 0 for constants.
  [[nodiscard]] unsigned max_frequency() const;

  [[nodiscard]] TrigFn diff(unsigned n = 1) const;
  [[nodiscard]] double eval(double x) const;

  friend TrigFn operator+(const TrigFn& a, const TrigFn& b);
  friend TrigFn operator-(const TrigFn& a, const TrigFn& b);
  friend TrigFn operator*(const TrigFn& a, const TrigFn& b);
  friend TrigFn operator*(const Rat& s, const TrigFn& a);
  friend TrigFn operator-(const TrigFn& a) { return Rat(-1) * a; }
  friend bool operator==(const TrigFn& a, const TrigFn& b) {
    return a.mean_ == b.mean_ && a.cos_ == b.cos_ && a.sin_ == b.sin_;
  }

 private:
  // signed frequency: cos(-n) = cos n, sin(-n) = -sin n, cos 0 = 1, sin 0 = 0
  void add_cos(long n, const Rat& c);
  void add_sin(long n, const Rat& c);
  void clean();

  Rat mean_;
  std::map<unsigned, Rat> cos_;
  std::map<unsigned, Rat> sin_;
};

/// A coefficient function on the line or on the circle.
class CoefficientFunction {
 public:
  CoefficientFunction() : v_(PolyFn{}) {}
  CoefficientFunction(PolyFn p) : v_(std::move(p)) {}  // NOLINT(google-explicit-constructor)
  CoefficientFunction(TrigFn t) : v_(std::move(t)) {}  // NOLINT(google-explicit-constructor)

  static CoefficientFunction zero(Space s);
  static CoefficientFunction constant(Space s, const Rat& c);

  [[nodiscard]] Space space() const {
    return std::holds_alternative<PolyFn>(v_) ? Space::line : Space::circle;
  }
  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] const PolyFn& poly() const;
  [[nodiscard]] const TrigFn& trig() const;

  [[nodiscard]] double eval(double x) const;

  friend bool operator==(const CoefficientFunction& a, const CoefficientFunction& b) {
    return a.v_ == b.v_;
  }

 private:
  std::variant<PolyFn, TrigFn> v_;
};

CoefficientFunction ring_add(const CoefficientFunction& f, const CoefficientFunction& g);
CoefficientFunction ring_sub(const CoefficientFunction& f, const CoefficientFunction& g);
CoefficientFunction ring_mul(const CoefficientFunction& f, const CoefficientFunction& g);
CoefficientFunction ring_scale(const Rat& s, const CoefficientFunction& f);
CoefficientFunction ring_diff(const CoefficientFunction& f, unsigned n = 1);
/// Mean value over one period, i.e. the integral divided by 2π.
Rat circle_mean(const CoefficientFunction& f);

inline CoefficientFunction operator+(const CoefficientFunction& f, const CoefficientFunction& g) {
  return ring_add(f, g);
}
inline CoefficientFunction operator-(const CoefficientFunction& f, const CoefficientFunction& g) {
  return ring_sub(f, g);
}
inline CoefficientFunction operator*(const CoefficientFunction& f, const CoefficientFunction& g) {
  return ring_mul(f, g);
}
inline CoefficientFunction operator*(const Rat& s, const CoefficientFunction& f) {
  return ring_scale(s, f);
}
inline CoefficientFunction operator-(const CoefficientFunction& f) { return ring_scale(Rat(-1), f); }

/// "poly: 1 - 2*x^2" or "trig: 2 | 1:cos=1,sin=0 ; 3:cos=0,sin=-1/2"
std::string to_string(const CoefficientFunction& f);
CoefficientFunction parse_coefficient(std::string_view text);

}  // namespace dopsym
