#include "dopsym/algebra.hpp"

#include <sstream>

#include "dopsym/errors.hpp"

namespace dopsym {

namespace {

std::vector<Rat> zeros(std::size_t n) { return std::vector<Rat>(n, Rat(0)); }

std::vector<Rat> lin(const std::vector<std::pair<Rat, const std::vector<Rat>*>>& terms, std::size_t n) {
  std::vector<Rat> out = zeros(n);
  for (const auto& [c, v] : terms) {
    for (std::size_t i = 0; i < n; ++i) out[i] += c * (*v)[i];
  }
  return out;
}

bool all_zero(const std::vector<Rat>& v) {
  for (const auto& x : v) {
    if (!x.is_zero()) return false;
  }
  return true;
}

RatMatrix columns(const std::vector<std::vector<Rat>>& vs, std::size_t n) {
  RatMatrix m = zero_matrix(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(vs.size()));
  for (std::size_t j = 0; j < vs.size(); ++j) {
    for (std::size_t i = 0; i < n; ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = vs[j][i];
  }
  return m;
}

// Solves for coordinates of v in terms of the columns of basis (assumed independent).
std::optional<std::vector<Rat>> express(const RatMatrix& basis, const std::vector<Rat>& v) {
  RatVector b(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) b(static_cast<Eigen::Index>(i)) = v[i];
  try {
    const RatVector x = solve(basis, b);
    std::vector<Rat> out(static_cast<std::size_t>(x.size()));
    for (Eigen::Index i = 0; i < x.size(); ++i) out[static_cast<std::size_t>(i)] = x(i);
    return out;
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace

std::vector<Rat> FiniteAlgebra::product(const std::vector<Rat>& x, const std::vector<Rat>& y) const {
  std::vector<Rat> out = zeros(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < dim; ++j) {
      if (y[j].is_zero()) continue;
      const Rat xy = x[i] * y[j];
      for (std::size_t k = 0; k < dim; ++k) {
        if (!constants[i][j][k].is_zero()) out[k] += xy * constants[i][j][k];
      }
    }
  }
  return out;
}

bool FiniteAlgebra::is_associative() const {
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      for (std::size_t k = 0; k < dim; ++k) {
        std::vector<Rat> ek = zeros(dim);
        ek[k] = Rat(1);
        std::vector<Rat> ei = zeros(dim);
        ei[i] = Rat(1);
        if (product(constants[i][j], ek) != product(ei, constants[j][k])) return false;
      }
    }
  }
  return true;
}

std::optional<std::vector<Rat>> FiniteAlgebra::element(const std::string& name) const {
  for (std::size_t i = 0; i < basis_names.size(); ++i) {
    if (basis_names[i] == name) {
      std::vector<Rat> v = zeros(dim);
      v[i] = Rat(1);
      return v;
    }
  }
  auto it = named.find(name);
  if (it != named.end()) return it->second;
  return std::nullopt;
}

std::optional<std::vector<Rat>> FiniteAlgebra::unit() const {
  // e with e x = x e = x for all basis x: linear in e
  RatMatrix m = zero_matrix(static_cast<Eigen::Index>(2 * dim * dim), static_cast<Eigen::Index>(dim));
  RatVector rhs = zero_vector(static_cast<Eigen::Index>(2 * dim * dim));
  for (std::size_t j = 0; j < dim; ++j) {
    for (std::size_t k = 0; k < dim; ++k) {
      const auto r1 = static_cast<Eigen::Index>(j * dim + k);
      const auto r2 = static_cast<Eigen::Index>(dim * dim + j * dim + k);
      for (std::size_t i = 0; i < dim; ++i) {
        m(r1, static_cast<Eigen::Index>(i)) = constants[i][j][k];
        m(r2, static_cast<Eigen::Index>(i)) = constants[j][i][k];
      }
      if (j == k) {
        rhs(r1) = Rat(1);
        rhs(r2) = Rat(1);
      }
    }
  }
  try {
    const RatVector x = solve(m, rhs);
    std::vector<Rat> out(dim);
    for (std::size_t i = 0; i < dim; ++i) out[i] = x(static_cast<Eigen::Index>(i));
    return out;
  } catch (const Error&) {
    return std::nullopt;
  }
}

FiniteAlgebra span_algebra(const std::vector<SymmetryMap>& maps, const std::vector<SymmetryMap>& extra) {
  FiniteAlgebra alg;
  alg.dim = maps.size();
  SparseEchelon ech;
  for (const auto& m : maps) {
    if (!(m.basis == maps.front().basis)) throw Error("maps realized on different bases");
    if (!ech.insert(to_sparse(m.matrix))) {
      throw Error("span_algebra needs linearly independent maps; " + m.name + " is dependent");
    }
    alg.basis_names.push_back(m.name);
  }
  alg.constants.assign(alg.dim, std::vector<std::vector<Rat>>(alg.dim));
  for (std::size_t i = 0; i < alg.dim; ++i) {
    for (std::size_t j = 0; j < alg.dim; ++j) {
      const RatMatrix p = multiply(maps[i].matrix, maps[j].matrix);
      std::vector<Rat> c;
      if (!ech.coordinates(to_sparse(p), &c)) {
        throw SpanNotClosed(maps[i].name + " * " + maps[j].name + " leaves the span");
      }
      alg.constants[i][j] = std::move(c);
    }
  }
  for (const auto& m : extra) {
    std::vector<Rat> c;
    if (!ech.coordinates(to_sparse(m.matrix), &c)) {
      throw SpanNotClosed(m.name + " is not in the span");
    }
    alg.named[m.name] = std::move(c);
  }
  return alg;
}

FiniteAlgebra independent_span_algebra(const std::vector<SymmetryMap>& maps) {
  SparseEchelon ech;
  std::vector<SymmetryMap> basis;
  std::vector<SymmetryMap> rest;
  for (const auto& m : maps) {
    if (ech.insert(to_sparse(m.matrix))) {
      basis.push_back(m);
    } else {
      rest.push_back(m);
    }
  }
  return span_algebra(basis, rest);
}

FiniteAlgebra matrix_algebra(const std::vector<RatMatrix>& generators, const std::vector<std::string>& names) {
  std::vector<SymmetryMap> maps;
  const TruncatedBasis dummy(0, 0, Space::line, Rat(0), Rat(0));
  for (std::size_t i = 0; i < generators.size(); ++i) {
    maps.push_back({names.at(i), dummy, generators[i], false});
  }
  return span_algebra(maps);
}

std::string AlgebraKind::str() const {
  if (!identified) return "unidentified";
  std::vector<std::string> parts;
  for (int i = 0; i < b; ++i) parts.emplace_back("b");
  for (int i = 0; i < t2; ++i) parts.emplace_back("t2");
  for (int i = 0; i < a; ++i) parts.emplace_back("a");
  if (r == 1) parts.emplace_back("R");
  if (r > 1) parts.push_back("R^" + std::to_string(r));
  if (parts.empty()) return "0";
  std::string out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out += "+" + parts[i];
  return out;
}

AlgebraKind parse_algebra_kind(const std::string& s) {
  AlgebraKind k;
  if (s == "unidentified") {
    k.identified = false;
    return k;
  }
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, '+')) {
    if (part == "b") {
      ++k.b;
    } else if (part == "t2") {
      ++k.t2;
    } else if (part == "a") {
      ++k.a;
    } else if (part == "R") {
      k.r += 1;
    } else if (part.rfind("R^", 0) == 0 && part.size() > 2 &&
               part.find_first_not_of("0123456789", 2) == std::string::npos) {
      k.r += std::stoi(part.substr(2));
    } else {
      throw ParseError("unknown algebra summand '" + part + "'");
    }
  }
  return k;
}

RatMatrix centre_basis(const FiniteAlgebra& alg) {
  const std::size_t n = alg.dim;
  RatMatrix m = zero_matrix(static_cast<Eigen::Index>(n * n), static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        m(static_cast<Eigen::Index>(j * n + k), static_cast<Eigen::Index>(i)) =
            alg.constants[i][j][k] - alg.constants[j][i][k];
      }
    }
  }
  return nullspace(m);
}

RatMatrix radical_basis(const FiniteAlgebra& alg) {
  const std::size_t n = alg.dim;
  // trace of left multiplication by e_m
  std::vector<Rat> tr(n, Rat(0));
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t l = 0; l < n; ++l) tr[m] += alg.constants[m][l][l];
  }
  RatMatrix g = zero_matrix(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Rat s(0);
      for (std::size_t m = 0; m < n; ++m) s += alg.constants[i][j][m] * tr[m];
      g(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = s;
    }
  }
  return nullspace(g);
}

Fingerprint fingerprint(const FiniteAlgebra& alg) {
  Fingerprint f;
  f.dim = alg.dim;
  f.centre = static_cast<std::size_t>(centre_basis(alg).cols());
  const RatMatrix rad = radical_basis(alg);
  f.radical = static_cast<std::size_t>(rad.cols());
  std::vector<std::vector<Rat>> prods;
  for (Eigen::Index i = 0; i < rad.cols(); ++i) {
    for (Eigen::Index j = 0; j < rad.cols(); ++j) {
      std::vector<Rat> x(alg.dim);
      std::vector<Rat> y(alg.dim);
      for (std::size_t t = 0; t < alg.dim; ++t) {
        x[t] = rad(static_cast<Eigen::Index>(t), i);
        y[t] = rad(static_cast<Eigen::Index>(t), j);
      }
      prods.push_back(alg.product(x, y));
    }
  }
  f.radical_squared = prods.empty() ? 0 : static_cast<std::size_t>(rank(columns(prods, alg.dim)));
  return f;
}

namespace {

RatMatrix mat(int n, std::initializer_list<std::pair<int, int>> ones) {
  RatMatrix m = zero_matrix(n, n);
  for (auto [i, j] : ones) m(i, j) = Rat(1);
  return m;
}

struct Block {
  std::vector<RatMatrix> gens;
  std::vector<std::string> names;
};

Block atom_b() {
  // a 0 0 d / 0 a 0 0 / 0 c b 0 / 0 0 0 b
  return {{mat(4, {{0, 0}, {1, 1}}), mat(4, {{2, 2}, {3, 3}}), mat(4, {{2, 1}}), mat(4, {{0, 3}})},
          {"b.a", "b.b", "b.c", "b.d"}};
}
Block atom_t2() { return {{mat(2, {{0, 0}}), mat(2, {{1, 0}}), mat(2, {{1, 1}})}, {"t2.e11", "t2.e21", "t2.e22"}}; }
Block atom_a() { return {{mat(2, {{0, 0}, {1, 1}}), mat(2, {{1, 0}})}, {"a.a", "a.b"}}; }
Block atom_r(int n) {
  Block b;
  RatMatrix one = identity_matrix(n);
  b.gens.push_back(one);
  b.names.emplace_back("R.1");
  for (int i = 0; i + 1 < n; ++i) {
    b.gens.push_back(mat(n, {{i, i}}));
    b.names.push_back("R.a" + std::to_string(i + 1));
  }
  return b;
}

}  // namespace

FiniteAlgebra template_algebra(const AlgebraKind& kind) {
  std::vector<Block> blocks;
  for (int i = 0; i < kind.b; ++i) blocks.push_back(atom_b());
  for (int i = 0; i < kind.t2; ++i) blocks.push_back(atom_t2());
  for (int i = 0; i < kind.a; ++i) blocks.push_back(atom_a());
  if (kind.r > 0) blocks.push_back(atom_r(kind.r));
  Eigen::Index total = 0;
  for (const auto& b : blocks) total += b.gens.front().rows();
  std::vector<RatMatrix> gens;
  std::vector<std::string> names;
  Eigen::Index off = 0;
  for (const auto& b : blocks) {
    const auto n = b.gens.front().rows();
    for (std::size_t g = 0; g < b.gens.size(); ++g) {
      RatMatrix m = zero_matrix(total, total);
      m.block(off, off, n, n) = b.gens[g];
      gens.push_back(std::move(m));
      names.push_back(b.names[g]);
    }
    off += n;
  }
  return matrix_algebra(gens, names);
}

BasisChangeReport basis_change_01(const FiniteAlgebra& alg) {
  BasisChangeReport rep;
  const auto id = alg.element("Id");
  const auto c = alg.element("C");
  const auto p0 = alg.element("P0");
  const auto p0s = alg.element("P0star");
  const auto p1 = alg.element("P1");
  const auto l = alg.element("L");
  if (!id || !c || !p0 || !p0s || !p1) return rep;
  rep.applies = true;
  const std::size_t n = alg.dim;
  const Rat h(1, 2);
  std::vector<std::vector<Rat>> main{
      lin({{Rat(1), &*p1}, {h, &*p0}, {-h, &*p0s}}, n),
      lin({{h, &*p0}, {h, &*p0s}}, n),
      lin({{h, &*p0}, {-h, &*p0s}}, n),
  };
  rep.names = {"abar", "bbar", "cbar"};
  if (l) {
    main.push_back(*l);
    rep.names.emplace_back("dbar");
  }
  const auto z1 = lin({{Rat(1), &*id}, {Rat(1), &*c}, {Rat(-1), &*p0}, {Rat(-1), &*p0s}}, n);
  const auto z2 = lin({{Rat(1), &*id}, {Rat(-1), &*c}, {Rat(-1), &*p0}, {Rat(1), &*p0s}, {Rat(-2), &*p1}}, n);
  rep.z1_zero = all_zero(z1);
  rep.z2_zero = all_zero(z2);

  const RatMatrix mb = columns(main, n);
  if (rank(mb) != static_cast<Eigen::Index>(main.size())) return rep;
  // products of the new basis, expressed in it
  const std::size_t m = main.size();
  rep.table.assign(m, std::vector<std::vector<Rat>>(m));
  bool closed = true;
  for (std::size_t i = 0; i < m && closed; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      auto co = express(mb, alg.product(main[i], main[j]));
      if (!co) {
        closed = false;
        break;
      }
      rep.table[i][j] = *co;
    }
  }
  if (closed) {
    // ā²=ā, ād̄=d̄, b̄²=b̄, b̄c̄=c̄, c̄ā=c̄, d̄b̄=d̄, all other products vanish
    auto expect = [&](std::size_t i, std::size_t j) {
      std::vector<Rat> e = zeros(m);
      auto set = [&](std::size_t t) { e[t] = Rat(1); };
      if (i == 0 && j == 0) set(0);
      if (i == 0 && j == 3) set(3);
      if (i == 1 && j == 1) set(1);
      if (i == 1 && j == 2) set(2);
      if (i == 2 && j == 0) set(2);
      if (i == 3 && j == 1) set(3);
      return e;
    };
    rep.table_matches = true;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        if (rep.table[i][j] != expect(i, j)) rep.table_matches = false;
      }
    }
  }
  // z's: central and annihilating the main block
  rep.z_central = true;
  std::vector<std::vector<Rat>> zs;
  for (const auto* z : {&z1, &z2}) {
    if (all_zero(*z)) continue;
    zs.push_back(*z);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Rat> e = zeros(n);
      e[i] = Rat(1);
      if (alg.product(*z, e) != alg.product(e, *z)) rep.z_central = false;
    }
    for (const auto& x : main) {
      if (!all_zero(alg.product(*z, x))) rep.z_central = false;
    }
  }
  rep.z_rank = zs.empty() ? 0 : static_cast<std::size_t>(rank(columns(zs, n)));
  return rep;
}

AlgebraKind identify(const FiniteAlgebra& alg) {
  const BasisChangeReport bc = basis_change_01(alg);
  if (bc.applies && bc.table_matches && bc.z_central && bc.names.size() + bc.z_rank == alg.dim) {
    AlgebraKind k;
    if (bc.names.size() == 4) {
      k.b = 1;
    } else {
      k.t2 = 1;
    }
    k.r = static_cast<int>(bc.z_rank);
    return k;
  }
  const Fingerprint fp = fingerprint(alg);
  std::vector<AlgebraKind> matches;
  for (int b = 0; 4 * b <= static_cast<int>(alg.dim) && b <= 1; ++b) {
    for (int t = 0; 4 * b + 3 * t <= static_cast<int>(alg.dim) && t <= 1; ++t) {
      for (int a = 0; 4 * b + 3 * t + 2 * a <= static_cast<int>(alg.dim) && a <= 2; ++a) {
        AlgebraKind k{b, t, a, static_cast<int>(alg.dim) - 4 * b - 3 * t - 2 * a, true};
        if (fingerprint(template_algebra(k)) == fp) matches.push_back(k);
      }
    }
  }
  if (matches.size() == 1) return matches.front();
  AlgebraKind none;
  none.identified = false;
  return none;
}

std::string structure_constants_csv(const FiniteAlgebra& alg) {
  std::ostringstream os;
  os << "i,j,k,c\n";
  for (std::size_t i = 0; i < alg.dim; ++i) {
    for (std::size_t j = 0; j < alg.dim; ++j) {
      for (std::size_t k = 0; k < alg.dim; ++k) {
        if (!alg.constants[i][j][k].is_zero()) {
          os << alg.basis_names[i] << "," << alg.basis_names[j] << "," << alg.basis_names[k] << ","
             << alg.constants[i][j][k] << "\n";
        }
      }
    }
  }
  return os.str();
}

}  // namespace dopsym
