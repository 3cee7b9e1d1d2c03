#include <doctest.h>

#include "dopsym/equivariance.hpp"
#include "dopsym/errors.hpp"
#include "dopsym/identities.hpp"
#include "dopsym/invariant_ops.hpp"

using namespace dopsym;

TEST_SUITE("identities") {
  TEST_CASE("every named identity except calv_conjugation holds") {
    for (const auto& name : identity_names()) {
      if (name == "calv_conjugation") continue;
      CAPTURE(name);
      const auto r = verify_identity(name);
      CHECK(r.passed);
      CHECK(r.defect == Rat(0));
      CHECK(r.checks > 0);
    }
  }

  TEST_CASE("calV equals λ(2λ+1)(C - Id) fails; the opposite sign holds") {
    const auto r = verify_identity("calv_conjugation");
    CHECK_FALSE(r.passed);
    CHECK(r.defect > Rat(0));
    for (const Rat& l : {Rat(1, 3), Rat(-3, 4), Rat(2)}) {
      const Rat m = Rat(1) - l;
      const TruncatedBasis b(2, 8, Space::circle, l, m);
      const auto v = realize("calV", b);
      const auto c = realize("C", b);
      const auto id = identity_map(b);
      const Rat s = l * (2 * l + 1);
      CHECK(v.matrix == s * (id.matrix - c.matrix));
      CHECK_FALSE(v.matrix == s * (c.matrix - id.matrix));
    }
  }

  TEST_CASE("mult_table_01 counts 36 products") {
    for (unsigned k : {3U, 4U, 5U}) {
      IdentityParams p;
      p.k = k;
      const auto r = verify_identity("mult_table_01", p);
      CHECK(r.passed);
      CHECK(r.checks == 36);
    }
  }

  TEST_CASE("operator checks") {
    for (const auto& name : operator_names()) {
      CAPTURE(name);
      const auto r = verify_operator(name);
      CHECK(r.passed);
      CHECK(r.defect == Rat(0));
    }
  }

  TEST_CASE("W is equivariant only where its weight condition holds") {
    const auto r = verify_identity("w_sharpness");
    CHECK(r.passed);
    const ProjectionSpec off = projection_formula(ProjectionKind::w_map, 4, Rat(1, 3), Rat(1, 5));
    const TruncatedBasis b(4, 10, Space::line, Rat(1, 3), Rat(1, 5));
    CHECK(projection_defect(off, b, line_family(3)) > Rat(0));
    const ProjectionSpec on = make_projection(ProjectionKind::w_map, 4, Rat(0), Rat(5, 4));
    const TruncatedBasis b2(4, 10, Space::line, Rat(0), Rat(5, 4));
    CHECK(projection_defect(on, b2, line_family(3)) == Rat(0));
  }

  TEST_CASE("oracle triples cover the exceptional set") {
    const auto triples = oracle_triples(20240607);
    CHECK(triples.size() >= 60);
    bool generic = false;
    bool hyperbola = false;
    for (const auto& [k, w] : triples) {
      CHECK(k <= 6);
      const Rat& l = w.first;
      const Rat& m = w.second;
      if ((3 * l + 1) * (3 * m - 4) == Rat(-1)) hyperbola = true;
      if (l != Rat(0) && m != Rat(1) && l + m != Rat(1) && m - l != Rat(1) && m - l != Rat(2) &&
          (3 * l + 1) * (3 * m - 4) != Rat(-1)) {
        generic = true;
      }
    }
    CHECK(generic);
    CHECK(hyperbola);
  }

  TEST_CASE("unknown names and output") {
    CHECK_THROWS_AS(verify_identity("nosuch"), ParseError);
    CHECK_THROWS_AS(verify_operator("nosuch"), ParseError);
    const auto r = verify_identity("conj_involution");
    CHECK(r.to_text().rfind("identity conj_involution: PASS", 0) == 0);
    CHECK(r.to_json()["passed"] == true);
  }
}
