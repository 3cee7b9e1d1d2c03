#include "dopsym/classifier.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "dopsym/errors.hpp"

namespace dopsym {

std::string to_string(RecurrenceVariant v) {
  return v == RecurrenceVariant::derived ? "derived" : "two_term";
}

RecurrenceVariant parse_recurrence_variant(const std::string& s) {
  if (s == "derived") return RecurrenceVariant::derived;
  if (s == "two_term") return RecurrenceVariant::two_term;
  throw ParseError("unknown recurrence variant '" + s + "'");
}

RatMatrix RecurrenceSystem::dense() const {
  RatMatrix m = zero_matrix(static_cast<Eigen::Index>(equations.size()), static_cast<Eigen::Index>(unknowns));
  for (std::size_t i = 0; i < equations.size(); ++i) {
    for (const auto& [j, c] : equations[i]) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = c;
  }
  return m;
}

namespace {

class EquationBuilder {
 public:
  explicit EquationBuilder(unsigned k) : k_(k) {}
  void add(const Rat& c, int r, int l) {
    if (c.is_zero() || l < 0 || r < 0 || l > r || r > static_cast<int>(k_)) return;
    terms_.emplace_back(ansatz_index(static_cast<unsigned>(r), static_cast<unsigned>(l)), c);
  }
  SparseVec take() {
    std::sort(terms_.begin(), terms_.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseVec out;
    for (auto& t : terms_) {
      if (!out.empty() && out.back().first == t.first) {
        out.back().second += t.second;
        if (out.back().second.is_zero()) out.pop_back();
      } else {
        out.push_back(std::move(t));
      }
    }
    terms_.clear();
    return out;
  }

 private:
  unsigned k_;
  SparseVec terms_;
};

Rat R(long v) { return Rat(v); }

}  // namespace

RecurrenceSystem build_system(unsigned k, const Rat& lambda, const Rat& mu, RecurrenceVariant variant) {
  RecurrenceSystem sys;
  sys.k = k;
  sys.lambda = lambda;
  sys.mu = mu;
  sys.variant = variant;
  sys.unknowns = ansatz_size(k);
  const Rat d = mu - lambda;
  EquationBuilder eb(k);
  auto push = [&] {
    SparseVec e = eb.take();
    if (!e.empty()) sys.equations.push_back(std::move(e));
  };
  const int K = static_cast<int>(k);
  for (int r = 1; r <= K; ++r) {
    for (int l = 1; l <= r; ++l) {
      eb.add(R(r) + 2 * lambda - R(1), r - 1, l - 1);
      eb.add(-(R(r) + 2 * lambda - R(l)), r, l - 1);
      eb.add(-R(l) * (2 * d - R(2 * r) + R(l - 1)), r, l);
      push();
    }
  }
  for (int r = 1; r <= K; ++r) {
    for (int l = 1; l <= r; ++l) {
      if (variant == RecurrenceVariant::derived) {
        if (l < 2) continue;
        eb.add(R(l * (l - 1)) * (3 * d - R(3 * r) + R(l - 2)), r, l);
        eb.add(-R(3 * (l - 1)) * (R(r - 1) + 2 * lambda), r - 1, l - 1);
        eb.add(-(R(r - 2) + 3 * lambda), r - 2, l - 2);
        eb.add(R(r - l) + 3 * lambda, r, l - 2);
      } else {
        eb.add(6 * lambda + R(3 * r - 3), r - 1, l - 1);
        eb.add(R(l) * (3 * d - R(3 * r) + R(l - 2)), r, l);
      }
      push();
    }
  }
  return sys;
}

std::size_t local_dimension(const RecurrenceSystem& sys) {
  if (sys.equations.empty()) return sys.unknowns;
  return sys.unknowns - static_cast<std::size_t>(bareiss_rank(sys.dense()));
}

std::size_t local_dimension(unsigned k, const Rat& lambda, const Rat& mu) {
  return local_dimension(build_system(k, lambda, mu));
}

std::size_t nonlocal_dimension(unsigned k, const Rat& lambda, const Rat& mu, Space space) {
  return (space == Space::circle && k >= 1 && lambda == Rat(0) && mu == Rat(1)) ? 1 : 0;
}

std::vector<Endomorphism> candidate_pool(unsigned k, const Rat& lambda, const Rat& mu, Space space,
                                         unsigned depth) {
  std::vector<Endomorphism> pool;
  for (const char* name : {"Id", "C", "P0", "P0star", "P1", "L", "S", "Sstar"}) {
    try {
      Endomorphism t = catalog_endomorphism(name, k, lambda, mu);
      if (t.circle_only && space == Space::line) continue;
      pool.push_back(std::move(t));
    } catch (const InapplicableSymmetry&) {
    }
  }
  for (auto& t : projection_symmetries(k, lambda, mu)) pool.push_back(std::move(t));
  if (depth == 0) return pool;
  if (lambda == Rat(0) && k >= 1) {
    for (const auto& t : candidate_pool(k - 1, Rat(1), mu, space, depth - 1)) {
      if (t.name == "Id" || t.nonlocal) continue;
      pool.push_back(delta_transport(t));
    }
  }
  const Rat l2 = Rat(1) - mu;
  const Rat m2 = Rat(1) - lambda;
  if (!(l2 == lambda && m2 == mu)) {
    for (const auto& t : candidate_pool(k, l2, m2, space, depth - 1)) {
      if (t.name == "Id" || t.nonlocal) continue;
      pool.push_back(conjugation_transport(t));
    }
  }
  return pool;
}

nlohmann::json ClassificationReport::to_json() const {
  nlohmann::json j;
  j["k"] = k;
  j["lambda"] = lambda.str();
  j["mu"] = mu.str();
  j["space"] = dopsym::to_string(space);
  j["local_dim"] = local_dim;
  j["nonlocal_dim"] = nonlocal_dim;
  j["algebra"] = kind ? kind->str() : std::string("unidentified");
  j["generators"] = generators;
  return j;
}

ClassificationReport classify(unsigned k, const Rat& lambda, const Rat& mu, Space space,
                              const ClassifyOptions& opts) {
  ClassificationReport rep;
  rep.k = k;
  rep.lambda = lambda;
  rep.mu = mu;
  rep.space = space;
  rep.truncation = opts.truncation == 0 ? k + 6 : opts.truncation;
  rep.local_dim = local_dimension(k, lambda, mu);
  if (opts.cross_check) {
    const auto bf = brute_force_local_symmetries(k, lambda, mu, Space::line, k + 4);
    if (bf.dimension != rep.local_dim) {
      throw OracleDisagreement("k=" + std::to_string(k) + " (" + lambda.str() + "," + mu.str() +
                               "): recurrence gives " + std::to_string(rep.local_dim) + ", brute force " +
                               std::to_string(bf.dimension));
    }
  }
  rep.nonlocal_dim = nonlocal_dimension(k, lambda, mu, space);

  const TruncatedBasis basis(k, rep.truncation, space, lambda, mu);
  SparseEchelon ech;
  std::vector<SymmetryMap> extra;
  std::set<std::string> seen;
  for (const auto& t : candidate_pool(k, lambda, mu, space)) {
    if (!seen.insert(t.name).second) continue;
    SymmetryMap m = realize(t, basis);
    if (ech.insert(to_sparse(m.matrix))) {
      rep.generators.push_back(m.name);
      rep.maps.push_back(std::move(m));
    } else {
      extra.push_back(std::move(m));
    }
  }
  if (rep.maps.size() != rep.total()) {
    throw SpanMismatch("k=" + std::to_string(k) + " (" + lambda.str() + "," + mu.str() + ") on the " +
                       to_string(space) + ": expected " + std::to_string(rep.total()) +
                       " independent symmetries, the candidates span " + std::to_string(rep.maps.size()));
  }
  if (opts.identify_algebra) {
    rep.algebra = span_algebra(rep.maps, extra);
    rep.kind = identify(*rep.algebra);
  }
  return rep;
}

// ---- loci and sampling ----

const std::vector<std::pair<Rat, Rat>>& isolated_points() {
  static const std::vector<std::pair<Rat, Rat>> pts{
      {Rat(-1, 4), Rat(1)}, {Rat(-2), Rat(1)},    {Rat(0), Rat(5, 4)},   {Rat(0), Rat(3)},
      {Rat(0), Rat(0)},     {Rat(1), Rat(1)},     {Rat(-2, 3), Rat(5, 3)}, {Rat(-1, 2), Rat(3, 2)},
      {Rat(0), Rat(1)},     {Rat(0), Rat(2)},     {Rat(-1), Rat(1)}};
  return pts;
}

std::vector<std::string> exceptional_tags(const Rat& lambda, const Rat& mu) {
  std::vector<std::string> tags;
  if (lambda == Rat(0)) tags.emplace_back("lambda0");
  if (mu == Rat(1)) tags.emplace_back("mu1");
  if (lambda + mu == Rat(1)) tags.emplace_back("sum1");
  if (mu - lambda == Rat(1)) tags.emplace_back("diff1");
  if (mu - lambda == Rat(2)) tags.emplace_back("diff2");
  if (satisfies_hk(3, lambda, mu)) tags.emplace_back("hyperbola");
  for (unsigned k = 4; k <= 6; ++k) {
    if (satisfies_hk(k, lambda, mu)) tags.push_back("hk" + std::to_string(k));
  }
  for (const auto& p : isolated_points()) {
    if (p.first == lambda && p.second == mu) tags.emplace_back("isolated");
  }
  return tags;
}

Rat random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-97, 97);
  std::uniform_int_distribution<long> den(1, 97);
  return Rat(num(rng), den(rng));
}

const std::vector<std::string>& table_row_labels() {
  static const std::vector<std::string> labels{
      "generic",
      "lambda=0 or mu=1",
      "lambda+mu=1",
      "(3lambda+1)(3mu-4)=-1 or mu-lambda=2",
      "(-1/4,1) (-2,1) (0,5/4) (0,3)",
      "(0,0) (1,1)",
      "(-2/3,5/3)",
      "(-1/2,3/2)",
      "(0,1)"};
  return labels;
}

std::pair<Rat, Rat> sample_row(std::size_t row, std::size_t index, std::mt19937_64& rng) {
  static const std::vector<std::vector<std::pair<Rat, Rat>>> fixed{
      {{Rat(-1, 4), Rat(1)}, {Rat(-2), Rat(1)}, {Rat(0), Rat(5, 4)}, {Rat(0), Rat(3)}},
      {{Rat(0), Rat(0)}, {Rat(1), Rat(1)}},
      {{Rat(-2, 3), Rat(5, 3)}},
      {{Rat(-1, 2), Rat(3, 2)}},
      {{Rat(0), Rat(1)}}};
  if (row >= 4 && row <= 8) {
    const auto& pts = fixed[row - 4];
    return pts[index % pts.size()];
  }
  if (row > 8) throw Error("no table row " + std::to_string(row));
  using Tags = std::vector<std::string>;
  for (int attempt = 0; attempt < 10000; ++attempt) {
    Rat l = random_rational(rng);
    Rat m;
    Tags want;
    switch (row) {
      case 0:
        m = random_rational(rng);
        break;
      case 1:
        if (index % 2 == 0) {
          m = l;
          l = Rat(0);
          want = {"lambda0"};
        } else {
          m = Rat(1);
          want = {"mu1"};
        }
        break;
      case 2:
        m = Rat(1) - l;
        want = {"sum1"};
        break;
      default:
        if (index % 2 == 0) {
          if ((3 * l + Rat(1)).is_zero()) continue;
          m = (Rat(4) - Rat(1) / (3 * l + Rat(1))) / Rat(3);
          want = {"hyperbola"};
        } else {
          m = l + Rat(2);
          want = {"diff2"};
        }
        break;
    }
    if (exceptional_tags(l, m) == want) return {l, m};
  }
  throw Error("could not sample table row " + std::to_string(row));
}

std::vector<TableRow> dimension_table(unsigned kmax, std::size_t samples, std::uint64_t seed, bool with_kinds) {
  std::mt19937_64 rng(seed);
  std::vector<TableRow> rows;
  for (std::size_t r = 0; r < table_row_labels().size(); ++r) {
    TableRow row;
    row.label = table_row_labels()[r];
    for (std::size_t s = 0; s < std::max<std::size_t>(samples, 1); ++s) row.samples.push_back(sample_row(r, s, rng));
    for (unsigned k = 0; k <= kmax; ++k) {
      std::size_t dim = 0;
      for (std::size_t s = 0; s < row.samples.size(); ++s) {
        const auto& [l, m] = row.samples[s];
        const std::size_t d = local_dimension(k, l, m);
        if (s == 0) {
          dim = d;
        } else if (d != dim) {
          throw OracleDisagreement("row '" + row.label + "', k=" + std::to_string(k) + ": (" +
                                   row.samples[0].first.str() + "," + row.samples[0].second.str() + ") gives " +
                                   std::to_string(dim) + " but (" + l.str() + "," + m.str() + ") gives " +
                                   std::to_string(d));
        }
      }
      row.dims.push_back(dim);
      if (with_kinds) {
        const auto& [l, m] = row.samples.front();
        ClassifyOptions opts;
        opts.cross_check = false;
        const auto rep = classify(k, l, m, Space::circle, opts);
        row.kinds.push_back(rep.kind ? rep.kind->str() : "unidentified");
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string table_csv(const std::vector<TableRow>& rows) {
  std::ostringstream os;
  os << "row,k,local_dim,total_dim,algebra\n";
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.dims.size(); ++k) {
      const auto& [l, m] = row.samples.front();
      const std::size_t total = row.dims[k] + nonlocal_dimension(static_cast<unsigned>(k), l, m, Space::circle);
      os << '"' << row.label << "\"," << k << ',' << row.dims[k] << ',' << total << ','
         << (k < row.kinds.size() ? row.kinds[k] : "") << '\n';
    }
  }
  return os.str();
}

nlohmann::json table_json(const std::vector<TableRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json j;
    j["row"] = row.label;
    nlohmann::json samples = nlohmann::json::array();
    for (const auto& [l, m] : row.samples) samples.push_back({{"lambda", l.str()}, {"mu", m.str()}});
    j["samples"] = samples;
    j["local_dims"] = row.dims;
    std::vector<std::size_t> totals;
    for (std::size_t k = 0; k < row.dims.size(); ++k) {
      totals.push_back(row.dims[k] + nonlocal_dimension(static_cast<unsigned>(k), row.samples.front().first,
                                                        row.samples.front().second, Space::circle));
    }
    j["total_dims"] = totals;
    if (!row.kinds.empty()) j["algebra"] = row.kinds;
    out.push_back(j);
  }
  return out;
}

}  // namespace dopsym
