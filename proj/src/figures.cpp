#include "dopsym/figures.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "dopsym/classifier.hpp"
#include "dopsym/errors.hpp"

namespace dopsym {

namespace {

Locus line(std::string label, long a, long b, long c, Rat sl, Rat sm) {
  return {std::move(label), false, Rat(a), Rat(b), Rat(c), {std::move(sl), std::move(sm)}};
}

Locus lambda0() { return line("lambda=0", 1, 0, 0, Rat(0), Rat(2, 7)); }
Locus mu1() { return line("mu=1", 0, 1, 1, Rat(2, 7), Rat(1)); }
Locus sum1() { return line("lambda+mu=1", 1, 1, 1, Rat(2, 7), Rat(5, 7)); }
Locus diff1() { return line("mu-lambda=1", -1, 1, 1, Rat(2, 7), Rat(9, 7)); }
Locus diff2() { return line("mu-lambda=2", -1, 1, 2, Rat(2, 7), Rat(16, 7)); }
Locus hyperbola() { return {"(3lambda+1)(3mu-4)=-1", true, Rat(0), Rat(0), Rat(0), {Rat(1, 3), Rat(7, 6)}}; }

std::vector<ExceptionalPoint> pts(std::initializer_list<std::pair<Rat, Rat>> ps) {
  std::vector<ExceptionalPoint> out;
  for (const auto& [l, m] : ps) out.push_back({l, m});
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string kind_at(unsigned k, const Rat& l, const Rat& m) {
  ClassifyOptions opts;
  opts.cross_check = false;
  const auto rep = classify(k, l, m, Space::circle, opts);
  return rep.kind ? rep.kind->str() : "unidentified";
}

}  // namespace

LociFigure exceptional_loci(unsigned k) {
  LociFigure f;
  f.k = k;
  switch (k) {
    case 2:
      f.curves = {diff1(), diff2(), lambda0(), mu1()};
      f.points = pts({{Rat(-1, 2), Rat(3, 2)}, {Rat(0), Rat(2)}, {Rat(-1), Rat(1)}, {Rat(0), Rat(1)}});
      break;
    case 3:
      f.curves = {sum1(), hyperbola(), diff2(), lambda0(), mu1()};
      f.points = pts({{Rat(-1, 2), Rat(3, 2)},
                      {Rat(-2, 3), Rat(5, 3)},
                      {Rat(0), Rat(1)},
                      {Rat(0), Rat(2)},
                      {Rat(0), Rat(3)},
                      {Rat(-1), Rat(1)},
                      {Rat(-2), Rat(1)}});
      break;
    case 4:
      f.curves = {sum1(), lambda0(), mu1()};
      f.points = pts({{Rat(1), Rat(1)},
                      {Rat(0), Rat(5, 4)},
                      {Rat(0), Rat(0)},
                      {Rat(-1, 4), Rat(1)},
                      {Rat(-2, 3), Rat(5, 3)},
                      {Rat(0), Rat(3)},
                      {Rat(-2), Rat(1)},
                      {Rat(0), Rat(1)}});
      break;
    case 5:
      f.curves = {sum1(), lambda0(), mu1()};
      f.points = pts({{Rat(0), Rat(0)}, {Rat(1), Rat(1)}, {Rat(0), Rat(1)}});
      break;
    default:
      throw ParseError("figures exist for k = 2, 3, 4, 5; got " + std::to_string(k));
  }
  return f;
}

bool on_locus(const Locus& l, const Rat& lambda, const Rat& mu) {
  if (l.hyperbola) return (3 * lambda + Rat(1)) * (3 * mu - Rat(4)) == Rat(-1);
  return l.a * lambda + l.b * mu == l.c;
}

std::string loci_csv(const LociFigure& fig) {
  std::ostringstream os;
  os << "type,label,lambda,mu,algebra\n";
  for (const auto& c : fig.curves) {
    os << "curve," << c.label << ',' << c.sample.first << ',' << c.sample.second << ','
       << kind_at(fig.k, c.sample.first, c.sample.second) << '\n';
  }
  for (const auto& p : fig.points) {
    os << "point,(" << p.lambda << ' ' << p.mu << ")," << p.lambda << ',' << p.mu << ','
       << kind_at(fig.k, p.lambda, p.mu) << '\n';
  }
  return os.str();
}

std::string loci_svg(const LociFigure& fig) {
  // plane window [-3,2] x [-1,4]
  const double lo_l = -3;
  const double hi_l = 2;
  const double lo_m = -1;
  const double hi_m = 4;
  const double size = 500;
  const double pad = 40;
  auto X = [&](double l) { return pad + (l - lo_l) / (hi_l - lo_l) * size; };
  auto Y = [&](double m) { return pad + (hi_m - m) / (hi_m - lo_m) * size; };
  static const char* colours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

  std::ostringstream os;
  const double w = size + 2 * pad + 200;
  const double h = size + 2 * pad;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(w) << "\" height=\"" << fmt(h)
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << fmt(pad) << "\" y=\"24\" font-size=\"14\">Exceptional modules, k = " << fig.k
     << (fig.k == 5 ? " (and higher)" : "") << "</text>\n";
  os << "<clipPath id=\"plane\"><rect x=\"" << fmt(pad) << "\" y=\"" << fmt(pad) << "\" width=\"" << fmt(size)
     << "\" height=\"" << fmt(size) << "\"/></clipPath>\n";
  os << "<g stroke=\"#dddddd\">\n";
  for (int l = -3; l <= 2; ++l) {
    os << "<line x1=\"" << fmt(X(l)) << "\" y1=\"" << fmt(Y(lo_m)) << "\" x2=\"" << fmt(X(l)) << "\" y2=\""
       << fmt(Y(hi_m)) << "\"/>\n";
  }
  for (int m = -1; m <= 4; ++m) {
    os << "<line x1=\"" << fmt(X(lo_l)) << "\" y1=\"" << fmt(Y(m)) << "\" x2=\"" << fmt(X(hi_l)) << "\" y2=\""
       << fmt(Y(m)) << "\"/>\n";
  }
  os << "</g>\n";
  os << "<g stroke=\"black\">\n";
  os << "<line x1=\"" << fmt(X(0)) << "\" y1=\"" << fmt(Y(lo_m)) << "\" x2=\"" << fmt(X(0)) << "\" y2=\""
     << fmt(Y(hi_m)) << "\" stroke-dasharray=\"2,3\"/>\n";
  os << "<line x1=\"" << fmt(X(lo_l)) << "\" y1=\"" << fmt(Y(0)) << "\" x2=\"" << fmt(X(hi_l)) << "\" y2=\""
     << fmt(Y(0)) << "\" stroke-dasharray=\"2,3\"/>\n";
  os << "</g>\n";
  for (int l = -3; l <= 2; ++l) {
    os << "<text x=\"" << fmt(X(l) - 4) << "\" y=\"" << fmt(Y(lo_m) + 16) << "\">" << l << "</text>\n";
  }
  for (int m = -1; m <= 4; ++m) {
    os << "<text x=\"" << fmt(pad - 20) << "\" y=\"" << fmt(Y(m) + 4) << "\">" << m << "</text>\n";
  }
  os << "<text x=\"" << fmt(pad + size / 2) << "\" y=\"" << fmt(h - 4) << "\">lambda</text>\n";
  os << "<text x=\"6\" y=\"" << fmt(pad + size / 2) << "\">mu</text>\n";

  os << "<g clip-path=\"url(#plane)\" fill=\"none\" stroke-width=\"2\">\n";
  for (std::size_t i = 0; i < fig.curves.size(); ++i) {
    const auto& c = fig.curves[i];
    const char* col = colours[i % 6];
    if (c.hyperbola) {
      // μ = (4 - 1/(3λ+1))/3, one polyline per branch
      for (int branch = 0; branch < 2; ++branch) {
        os << "<polyline stroke=\"" << col << "\" points=\"";
        const double a = branch == 0 ? lo_l : -1.0 / 3 + 0.01;
        const double b = branch == 0 ? -1.0 / 3 - 0.01 : hi_l;
        const int steps = 200;
        for (int s = 0; s <= steps; ++s) {
          const double l = a + (b - a) * s / steps;
          double m = (4 - 1 / (3 * l + 1)) / 3;
          m = std::fmax(lo_m - 5, std::fmin(hi_m + 5, m));
          os << fmt(X(l)) << ',' << fmt(Y(m)) << ' ';
        }
        os << "\"/>\n";
      }
    } else if (c.b.is_zero()) {
      const double l = (c.c / c.a).to_double();
      os << "<line stroke=\"" << col << "\" x1=\"" << fmt(X(l)) << "\" y1=\"" << fmt(Y(lo_m)) << "\" x2=\""
         << fmt(X(l)) << "\" y2=\"" << fmt(Y(hi_m)) << "\"/>\n";
    } else {
      auto mu_at = [&](double l) { return (c.c.to_double() - c.a.to_double() * l) / c.b.to_double(); };
      os << "<line stroke=\"" << col << "\" x1=\"" << fmt(X(lo_l)) << "\" y1=\"" << fmt(Y(mu_at(lo_l))) << "\" x2=\""
         << fmt(X(hi_l)) << "\" y2=\"" << fmt(Y(mu_at(hi_l))) << "\"/>\n";
    }
  }
  os << "</g>\n";
  for (const auto& p : fig.points) {
    const double x = X(p.lambda.to_double());
    const double y = Y(p.mu.to_double());
    os << "<circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(y) << "\" r=\"4\" fill=\"black\"/>\n";
    os << "<text x=\"" << fmt(x + 6) << "\" y=\"" << fmt(y - 6) << "\">(" << p.lambda << ", " << p.mu
       << ")</text>\n";
  }
  // legend
  const double lx = pad + size + 20;
  for (std::size_t i = 0; i < fig.curves.size(); ++i) {
    const double ly = pad + 20 * static_cast<double>(i);
    os << "<line x1=\"" << fmt(lx) << "\" y1=\"" << fmt(ly) << "\" x2=\"" << fmt(lx + 20) << "\" y2=\"" << fmt(ly)
       << "\" stroke=\"" << colours[i % 6] << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << fmt(lx + 26) << "\" y=\"" << fmt(ly + 4) << "\">" << fig.curves[i].label << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace dopsym
