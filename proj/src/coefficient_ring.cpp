#include "dopsym/coefficient_ring.hpp"

#include <cmath>
#include <sstream>

#include "dopsym/errors.hpp"

namespace dopsym {

std::string to_string(Space s) { return s == Space::line ? "line" : "circle"; }

Space parse_space(std::string_view s) {
  if (s == "line") return Space::line;
  if (s == "circle") return Space::circle;
  throw ParseError("unknown space '" + std::string(s) + "' (expected line or circle)");
}

// ---- PolyFn ----

PolyFn::PolyFn(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

PolyFn PolyFn::constant(const Rat& c) { return PolyFn({c}); }

PolyFn PolyFn::monomial(unsigned degree, const Rat& c) {
  std::vector<Rat> v(degree + 1, Rat(0));
  v[degree] = c;
  return PolyFn(std::move(v));
}

void PolyFn::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

PolyFn PolyFn::diff(unsigned n) const {
  if (c_.size() <= n) return {};
  std::vector<Rat> out(c_.size() - n);
  for (std::size_t i = n; i < c_.size(); ++i) {
    out[i - n] = c_[i] * falling_factorial(Rat(static_cast<long>(i)), n);
  }
  return PolyFn(std::move(out));
}

Rat PolyFn::eval(const Rat& x) const {
  Rat acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double PolyFn::eval(double x) const {
  double acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->to_double();
  return acc;
}

PolyFn operator+(const PolyFn& a, const PolyFn& b) {
  std::vector<Rat> out(std::max(a.c_.size(), b.c_.size()), Rat(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] += b.c_[i];
  return PolyFn(std::move(out));
}

PolyFn operator-(const PolyFn& a, const PolyFn& b) { return a + (-b); }

PolyFn operator*(const PolyFn& a, const PolyFn& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rat> out(a.c_.size() + b.c_.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  }
  return PolyFn(std::move(out));
}

PolyFn operator*(const Rat& s, const PolyFn& a) {
  if (s.is_zero()) return {};
  std::vector<Rat> out = a.c_;
  for (auto& c : out) c *= s;
  return PolyFn(std::move(out));
}

// ---- TrigFn ----

TrigFn TrigFn::constant(const Rat& c) {
  TrigFn t;
  t.mean_ = c;
  return t;
}

TrigFn TrigFn::cos(unsigned n, const Rat& c) {
  TrigFn t;
  t.add_cos(n, c);
  t.clean();
  return t;
}

TrigFn TrigFn::sin(unsigned n, const Rat& c) {
  TrigFn t;
  t.add_sin(n, c);
  t.clean();
  return t;
}

Rat TrigFn::cos_coeff(unsigned n) const {
  auto it = cos_.find(n);
  return it == cos_.end() ? Rat(0) : it->second;
}

Rat TrigFn::sin_coeff(unsigned n) const {
  auto it = sin_.find(n);
  return it == sin_.end() ? Rat(0) : it->second;
}

unsigned TrigFn::max_frequency() const {
  unsigned m = 0;
  if (!cos_.empty()) m = std::max(m, cos_.rbegin()->first);
  if (!sin_.empty()) m = std::max(m, sin_.rbegin()->first);
  return m;
}

void TrigFn::add_cos(long n, const Rat& c) {
  if (n < 0) n = -n;
  if (n == 0) {
    mean_ += c;
  } else {
    cos_[static_cast<unsigned>(n)] += c;
  }
}

void TrigFn::add_sin(long n, const Rat& c) {
  if (n == 0) return;
  if (n < 0) {
    sin_[static_cast<unsigned>(-n)] -= c;
  } else {
    sin_[static_cast<unsigned>(n)] += c;
  }
}

void TrigFn::clean() {
  for (auto* m : {&cos_, &sin_}) {
    for (auto it = m->begin(); it != m->end();) {
      it = it->second.is_zero() ? m->erase(it) : std::next(it);
    }
  }
}

TrigFn TrigFn::diff(unsigned n) const {
  TrigFn cur = *this;
  for (unsigned step = 0; step < n; ++step) {
    TrigFn next;
    for (const auto& [f, c] : cur.cos_) next.sin_[f] = -Rat(static_cast<long>(f)) * c;
    for (const auto& [f, s] : cur.sin_) next.cos_[f] = Rat(static_cast<long>(f)) * s;
    cur = std::move(next);
  }
  return cur;
}

double TrigFn::eval(double x) const {
  double acc = mean_.to_double();
  for (const auto& [f, c] : cos_) acc += c.to_double() * std::cos(f * x);
  for (const auto& [f, s] : sin_) acc += s.to_double() * std::sin(f * x);
  return acc;
}

TrigFn operator+(const TrigFn& a, const TrigFn& b) {
  TrigFn out = a;
  out.mean_ += b.mean_;
  for (const auto& [f, c] : b.cos_) out.cos_[f] += c;
  for (const auto& [f, s] : b.sin_) out.sin_[f] += s;
  out.clean();
  return out;
}

TrigFn operator-(const TrigFn& a, const TrigFn& b) { return a + (-b); }

TrigFn operator*(const Rat& s, const TrigFn& a) {
  if (s.is_zero()) return {};
  TrigFn out = a;
  out.mean_ *= s;
  for (auto& e : out.cos_) e.second *= s;
  for (auto& e : out.sin_) e.second *= s;
  return out;
}

TrigFn operator*(const TrigFn& a, const TrigFn& b) {
  TrigFn out;
  const Rat half(1, 2);
  out.mean_ = a.mean_ * b.mean_;
  if (!a.mean_.is_zero()) {
    for (const auto& [f, c] : b.cos_) out.add_cos(f, a.mean_ * c);
    for (const auto& [f, s] : b.sin_) out.add_sin(f, a.mean_ * s);
  }
  if (!b.mean_.is_zero()) {
    for (const auto& [f, c] : a.cos_) out.add_cos(f, b.mean_ * c);
    for (const auto& [f, s] : a.sin_) out.add_sin(f, b.mean_ * s);
  }
  for (const auto& [p, c1] : a.cos_) {
    const long lp = p;
    for (const auto& [q, c2] : b.cos_) {
      const long lq = q;
      const Rat h = half * c1 * c2;
      out.add_cos(lp - lq, h);
      out.add_cos(lp + lq, h);
    }
    for (const auto& [q, s2] : b.sin_) {
      const long lq = q;
      // cos p sin q = (sin(q+p) + sin(q-p)) / 2
      const Rat h = half * c1 * s2;
      out.add_sin(lq + lp, h);
      out.add_sin(lq - lp, h);
    }
  }
  for (const auto& [p, s1] : a.sin_) {
    const long lp = p;
    for (const auto& [q, c2] : b.cos_) {
      const long lq = q;
      const Rat h = half * s1 * c2;
      out.add_sin(lp + lq, h);
      out.add_sin(lp - lq, h);
    }
    for (const auto& [q, s2] : b.sin_) {
      const long lq = q;
      // sin p sin q = (cos(p-q) - cos(p+q)) / 2
      const Rat h = half * s1 * s2;
      out.add_cos(lp - lq, h);
      out.add_cos(lp + lq, -h);
    }
  }
  out.clean();
  return out;
}

// ---- CoefficientFunction ----

CoefficientFunction CoefficientFunction::zero(Space s) {
  return s == Space::line ? CoefficientFunction(PolyFn{}) : CoefficientFunction(TrigFn{});
}

CoefficientFunction CoefficientFunction::constant(Space s, const Rat& c) {
  return s == Space::line ? CoefficientFunction(PolyFn::constant(c))
                          : CoefficientFunction(TrigFn::constant(c));
}

bool CoefficientFunction::is_zero() const {
  return std::visit([](const auto& f) { return f.is_zero(); }, v_);
}

const PolyFn& CoefficientFunction::poly() const {
  if (const auto* p = std::get_if<PolyFn>(&v_)) return *p;
  throw RingMismatch("expected a polynomial (line) coefficient");
}

const TrigFn& CoefficientFunction::trig() const {
  if (const auto* t = std::get_if<TrigFn>(&v_)) return *t;
  throw RingMismatch("expected a trigonometric (circle) coefficient");
}

double CoefficientFunction::eval(double x) const {
  return std::visit([x](const auto& f) { return f.eval(x); }, v_);
}

namespace {

void require_same(const CoefficientFunction& f, const CoefficientFunction& g) {
  if (f.space() != g.space()) {
    throw RingMismatch("operands live on different spaces: " + to_string(f.space()) + " vs " +
                       to_string(g.space()));
  }
}

}  // namespace

CoefficientFunction ring_add(const CoefficientFunction& f, const CoefficientFunction& g) {
  require_same(f, g);
  if (f.space() == Space::line) return f.poly() + g.poly();
  return f.trig() + g.trig();
}

CoefficientFunction ring_sub(const CoefficientFunction& f, const CoefficientFunction& g) {
  require_same(f, g);
  if (f.space() == Space::line) return f.poly() - g.poly();
  return f.trig() - g.trig();
}

CoefficientFunction ring_mul(const CoefficientFunction& f, const CoefficientFunction& g) {
  require_same(f, g);
  if (f.space() == Space::line) return f.poly() * g.poly();
  return f.trig() * g.trig();
}

CoefficientFunction ring_scale(const Rat& s, const CoefficientFunction& f) {
  if (f.space() == Space::line) return s * f.poly();
  return s * f.trig();
}

CoefficientFunction ring_diff(const CoefficientFunction& f, unsigned n) {
  if (n == 0) return f;
  if (f.space() == Space::line) return f.poly().diff(n);
  return f.trig().diff(n);
}

Rat circle_mean(const CoefficientFunction& f) {
  if (f.space() != Space::circle) {
    throw UnsupportedFunctional("the circle mean is not defined for coefficients on the line");
  }
  return f.trig().mean();
}

// ---- text form ----

namespace {

std::string signed_term(bool first, const Rat& c, const std::string& monomial) {
  std::string out;
  if (first) {
    out = c.str();
  } else {
    out = c.sign() < 0 ? " - " + (-c).str() : " + " + c.str();
  }
  return monomial.empty() ? out : out + "*" + monomial;
}

std::string strip(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(strip(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(strip(cur));
  return out;
}

unsigned parse_unsigned(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError("expected a non-negative integer, got '" + s + "'");
  }
  return static_cast<unsigned>(std::stoul(s));
}

PolyFn parse_poly(const std::string& body) {
  // terms separated by + or - at top level; a leading sign belongs to the term
  std::vector<std::pair<int, std::string>> terms;
  std::string cur;
  int sign = 1;
  bool have = false;
  auto flush = [&]() {
    const std::string t = strip(cur);
    if (!t.empty()) terms.emplace_back(sign, t);
    else if (have) throw ParseError("dangling sign in polynomial '" + body + "'");
    cur.clear();
  };
  for (std::size_t i = 0; i < body.size(); ++i) {
    const char ch = body[i];
    const bool after_slash = !cur.empty() && strip(cur).back() == '/';
    if ((ch == '+' || ch == '-') && !after_slash && !strip(cur).empty()) {
      flush();
      sign = ch == '-' ? -1 : 1;
      have = true;
    } else if ((ch == '+' || ch == '-') && strip(cur).empty()) {
      sign *= ch == '-' ? -1 : 1;
      have = true;
    } else {
      cur += ch;
    }
  }
  flush();
  PolyFn out;
  for (const auto& [sg, term] : terms) {
    Rat coef(1);
    unsigned deg = 0;
    const auto star = term.find('*');
    std::string mono = term;
    if (star != std::string::npos) {
      coef = Rat::parse(term.substr(0, star));
      mono = strip(term.substr(star + 1));
    } else if (term.find('x') == std::string::npos) {
      coef = Rat::parse(term);
      mono.clear();
    }
    if (!mono.empty()) {
      if (mono == "x") {
        deg = 1;
      } else if (mono.rfind("x^", 0) == 0) {
        deg = parse_unsigned(mono.substr(2));
      } else {
        throw ParseError("bad monomial '" + mono + "'");
      }
    }
    out = out + PolyFn::monomial(deg, Rat(sg) * coef);
  }
  return out;
}

TrigFn parse_trig(const std::string& body) {
  const auto bar = body.find('|');
  TrigFn out = TrigFn::constant(Rat::parse(body.substr(0, bar)));
  if (bar == std::string::npos) return out;
  const std::string rest = strip(body.substr(bar + 1));
  if (rest.empty()) return out;
  for (const std::string& entry : split(rest, ';')) {
    const auto colon = entry.find(':');
    if (colon == std::string::npos) throw ParseError("bad trig entry '" + entry + "'");
    const unsigned n = parse_unsigned(strip(entry.substr(0, colon)));
    if (n == 0) throw ParseError("trig frequencies start at 1");
    for (const std::string& kv : split(entry.substr(colon + 1), ',')) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw ParseError("bad trig coefficient '" + kv + "'");
      const std::string key = strip(kv.substr(0, eq));
      const Rat v = Rat::parse(kv.substr(eq + 1));
      if (key == "cos") {
        out = out + TrigFn::cos(n, v);
      } else if (key == "sin") {
        out = out + TrigFn::sin(n, v);
      } else {
        throw ParseError("unknown trig key '" + key + "'");
      }
    }
  }
  return out;
}

}  // namespace

std::string to_string(const CoefficientFunction& f) {
  std::ostringstream os;
  if (f.space() == Space::line) {
    const auto& c = f.poly().coeffs();
    os << "poly: ";
    if (c.empty()) return "poly: 0";
    bool first = true;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i].is_zero()) continue;
      const std::string mono = i == 0 ? "" : (i == 1 ? "x" : "x^" + std::to_string(i));
      os << signed_term(first, c[i], mono);
      first = false;
    }
    return os.str();
  }
  const TrigFn& t = f.trig();
  os << "trig: " << t.mean();
  const unsigned top = t.max_frequency();
  bool first = true;
  for (unsigned n = 1; n <= top; ++n) {
    const Rat c = t.cos_coeff(n);
    const Rat s = t.sin_coeff(n);
    if (c.is_zero() && s.is_zero()) continue;
    os << (first ? " | " : " ; ") << n << ":cos=" << c << ",sin=" << s;
    first = false;
  }
  return os.str();
}

CoefficientFunction parse_coefficient(std::string_view text) {
  const std::string s = strip(text);
  if (s.rfind("poly:", 0) == 0) return parse_poly(strip(s.substr(5)));
  if (s.rfind("trig:", 0) == 0) return parse_trig(strip(s.substr(5)));
  throw ParseError("coefficient must start with 'poly:' or 'trig:': '" + s + "'");
}

}  // namespace dopsym
