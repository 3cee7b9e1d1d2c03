#include "dopsym/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>

#include <CLI11.hpp>

#include "dopsym/classifier.hpp"
#include "dopsym/errors.hpp"
#include "dopsym/figures.hpp"
#include "dopsym/identities.hpp"

namespace dopsym::cli {

namespace {

struct RunConfig {
  std::optional<unsigned> k;
  std::string lambda;
  std::string mu;
  std::string space = "circle";
  bool space_given = false;
  unsigned truncation = 0;
  std::string format;
  std::string out;
  std::uint64_t seed = 20240607;
  std::size_t samples = 3;
  bool no_kinds = false;
  std::string identity;
  std::string op;
  bool list = false;
};

std::filesystem::path resolve(const std::string& out) {
  std::filesystem::path p(out);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("DOPSYM_OUTPUT_DIR"); dir != nullptr && *dir != '\0') {
      p = std::filesystem::path(dir) / p;
    }
  }
  return p;
}

void write_file(const std::filesystem::path& p, const std::string& content) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  if (!f) throw ParseError("cannot write " + p.string());
  f << content;
}

void emit(const RunConfig& cfg, const std::string& content, std::ostream& out) {
  if (cfg.out.empty()) {
    out << content;
  } else {
    write_file(resolve(cfg.out), content);
  }
}

Rat need_rat(const std::string& s, const char* what) {
  if (s.empty()) throw ParseError(std::string("--") + what + " is required");
  return Rat::parse(s);
}

void check_format(const std::string& f, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (f == a) return;
  }
  throw ParseError("unsupported --format '" + f + "' for this command");
}

int cmd_classify(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.k) throw ParseError("-k/--order is required");
  const Rat l = need_rat(cfg.lambda, "lambda");
  const Rat m = need_rat(cfg.mu, "mu");
  const std::string fmt = cfg.format.empty() ? "json" : cfg.format;
  check_format(fmt, {"json", "csv"});
  ClassifyOptions opts;
  opts.truncation = cfg.truncation;
  const auto rep = classify(*cfg.k, l, m, parse_space(cfg.space), opts);
  if (fmt == "json") {
    emit(cfg, rep.to_json().dump(2) + "\n", out);
  } else {
    std::string gens;
    for (const auto& g : rep.generators) gens += (gens.empty() ? "" : ";") + g;
    emit(cfg,
         "k,lambda,mu,space,local_dim,nonlocal_dim,total,algebra,generators\n" + std::to_string(rep.k) + "," +
             rep.lambda.str() + "," + rep.mu.str() + "," + to_string(rep.space) + "," +
             std::to_string(rep.local_dim) + "," + std::to_string(rep.nonlocal_dim) + "," +
             std::to_string(rep.total()) + "," + (rep.kind ? rep.kind->str() : "unidentified") + "," + gens + "\n",
         out);
  }
  return ok;
}

int cmd_table(const RunConfig& cfg, std::ostream& out) {
  const std::string fmt = cfg.format.empty() ? "csv" : cfg.format;
  check_format(fmt, {"json", "csv"});
  const unsigned kmax = cfg.k.value_or(6);
  const auto rows = dimension_table(kmax, cfg.samples, cfg.seed, !cfg.no_kinds);
  emit(cfg, fmt == "csv" ? table_csv(rows) : table_json(rows).dump(2) + "\n", out);
  return ok;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  if (cfg.list) {
    std::string s = "identities:\n";
    for (const auto& n : identity_names()) s += "  " + n + "\n";
    s += "operators (--op):\n";
    for (const auto& n : operator_names()) s += "  " + n + "\n";
    emit(cfg, s, out);
    return ok;
  }
  const std::string fmt = cfg.format.empty() ? "text" : cfg.format;
  check_format(fmt, {"text", "json"});
  IdentityParams p;
  p.k = cfg.k;
  if (!cfg.lambda.empty()) p.lambda = Rat::parse(cfg.lambda);
  if (!cfg.mu.empty()) p.mu = Rat::parse(cfg.mu);
  if (cfg.space_given) p.space = parse_space(cfg.space);
  p.truncation = cfg.truncation;
  p.seed = cfg.seed;
  IdentityResult r;
  if (!cfg.op.empty()) {
    r = verify_operator(cfg.op, p);
  } else if (!cfg.identity.empty()) {
    r = verify_identity(cfg.identity, p);
  } else {
    throw ParseError("name an identity, or pass --op <name>; --list shows both");
  }
  emit(cfg, fmt == "json" ? r.to_json().dump(2) + "\n" : r.to_text(), out);
  return r.passed ? ok : identity_failed;
}

int cmd_figures(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.k) throw ParseError("-k/--order is required");
  const auto fig = exceptional_loci(*cfg.k);
  const std::string fmt = cfg.format.empty() ? "svg" : cfg.format;
  check_format(fmt, {"svg", "csv"});
  if (cfg.out.empty()) {
    out << (fmt == "svg" ? loci_svg(fig) : loci_csv(fig));
    return ok;
  }
  std::filesystem::path p = resolve(cfg.out);
  std::filesystem::path svg = p;
  std::filesystem::path csv = p;
  svg.replace_extension(".svg");
  csv.replace_extension(".csv");
  write_file(svg, loci_svg(fig));
  write_file(csv, loci_csv(fig));
  return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Symmetries of modules of differential operators on tensor densities", "dopsym"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file mirroring the long flags");
  app.add_option("-k,--order", cfg.k, "operator order (table: largest order, default 6)");
  app.add_option("--lambda", cfg.lambda, "source weight, p/q");
  app.add_option("--mu", cfg.mu, "target weight, p/q");
  auto* space_opt = app.add_option("--space", cfg.space, "circle or line")->capture_default_str();
  app.add_option("-M,--truncation", cfg.truncation, "window size (default k+6)");
  app.add_option("--format", cfg.format, "json, csv, svg or text");
  app.add_option("-o,--out", cfg.out, "output file (relative paths go under $DOPSYM_OUTPUT_DIR)");
  app.add_option("--seed", cfg.seed, "seed for random sample points")->capture_default_str();

  auto* classify = app.add_subcommand("classify", "dimension, generators and algebra of I^k_{lambda,mu}");
  auto* table = app.add_subcommand("table", "dimension table for k = 0..6 with algebra kinds");
  table->add_option("--samples", cfg.samples, "random points per row")->capture_default_str();
  table->add_flag("--no-kinds", cfg.no_kinds, "skip algebra identification");
  auto* verify = app.add_subcommand("verify", "check a named identity or the equivariance of a map");
  verify->add_option("identity", cfg.identity, "identity name");
  verify->add_option("--op", cfg.op, "catalog map to check for equivariance");
  verify->add_flag("--list", cfg.list, "list identities and maps");
  auto* figures = app.add_subcommand("figures", "exceptional loci in the (lambda, mu) plane, k = 2..5");

  std::vector<const char*> argv{"dopsym"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : bad_input;
  }
  cfg.space_given = space_opt->count() > 0;

  try {
    if (classify->parsed()) return cmd_classify(cfg, out);
    if (table->parsed()) return cmd_table(cfg, out);
    if (verify->parsed()) return cmd_verify(cfg, out);
    if (figures->parsed()) return cmd_figures(cfg, out);
  } catch (const OracleDisagreement& e) {
    err << "oracle disagreement: " << e.what() << "\n";
    return oracle_disagreement;
  } catch (const SpanMismatch& e) {
    err << "span check failed: " << e.what() << "\n";
    return oracle_disagreement;
  } catch (const SpanNotClosed& e) {
    err << "span not closed: " << e.what() << "\n";
    return oracle_disagreement;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return bad_input;
  } catch (const InapplicableSymmetry& e) {
    err << "error: " << e.what() << "\n";
    return bad_input;
  } catch (const WeightMismatch& e) {
    err << "error: " << e.what() << "\n";
    return bad_input;
  } catch (const TruncationOverflow& e) {
    err << "error: " << e.what() << " (raise -M)\n";
    return bad_input;
  } catch (const UnsupportedFunctional& e) {
    err << "error: " << e.what() << "\n";
    return bad_input;
  } catch (const RingMismatch& e) {
    err << "error: " << e.what() << "\n";
    return bad_input;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return oracle_disagreement;
  }
  return bad_input;
}

}  // namespace dopsym::cli
