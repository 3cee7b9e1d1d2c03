#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dopsym/rational.hpp"

namespace dopsym {

/// a λ + b μ = c, or the hyperbola (3λ+1)(3μ-4) = -1.
struct Locus {
  std::string label;
  bool hyperbola = false;
  Rat a;
  Rat b;
  Rat c;
  /// A point on the locus away from every other special point.
  std::pair<Rat, Rat> sample;
};

struct ExceptionalPoint {
  Rat lambda;
  Rat mu;
};

struct LociFigure {
  unsigned k = 0;
  std::vector<Locus> curves;
  std::vector<ExceptionalPoint> points;
};

/// Exceptional curves and isolated points for order k ∈ {2, 3, 4, 5} (5 stands for k ≥ 5).
LociFigure exceptional_loci(unsigned k);

bool on_locus(const Locus& l, const Rat& lambda, const Rat& mu);

/// One row per curve and point: type,label,lambda,mu,algebra. Algebra kinds come from
/// classifying the sample (curves) or the point itself on the circle.
std::string loci_csv(const LociFigure& fig);
std::string loci_svg(const LociFigure& fig);

}  // namespace dopsym
