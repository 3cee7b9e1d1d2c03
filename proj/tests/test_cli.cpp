#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dopsym/classifier.hpp"
#include "dopsym/cli.hpp"
#include "dopsym/errors.hpp"
#include "dopsym/figures.hpp"

using namespace dopsym;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("dopsym_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("classify") {
    auto r = run({"classify", "-k", "3", "--lambda", "-1/2", "--mu", "3/2"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["algebra"] == "t2");
    CHECK(j["local_dim"].get<int>() + j["nonlocal_dim"].get<int>() == 3);

    r = run({"classify", "-k", "2", "--lambda", "0", "--mu", "1"});
    REQUIRE(r.code == 0);
    j = nlohmann::json::parse(r.out);
    CHECK(j["algebra"] == "b+R");
    CHECK(j["local_dim"].get<int>() + j["nonlocal_dim"].get<int>() == 5);

    r = run({"classify", "-k", "1", "--lambda", "2/7", "--mu", "9/7", "--space", "line"});
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["algebra"] == "a");

    r = run({"--order", "1", "--lambda", "2/7", "--mu", "9/7", "--format", "csv", "classify"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("k,lambda,mu,space,local_dim,nonlocal_dim,total,algebra,generators\n", 0) == 0);
  }

  TEST_CASE("table rows") {
    const auto r = run({"table", "--no-kinds"});
    REQUIRE(r.code == 0);
    auto dims = [&](const std::string& row) {
      std::vector<int> d;
      std::istringstream in(r.out);
      std::string line;
      while (std::getline(in, line)) {
        if (line.rfind("\"" + row + "\",", 0) != 0) continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        d.push_back(std::stoi(cells[3]));
      }
      return d;
    };
    const auto& labels = table_row_labels();
    CHECK(dims(labels.front()) == std::vector<int>{1, 2, 2, 1, 1, 1, 1});
    CHECK(dims(labels.back()) == std::vector<int>{1, 3, 4, 5, 5, 5, 5});
    CHECK(dims(labels[7]) == std::vector<int>{1, 2, 3, 3, 2, 2, 2});
  }

  TEST_CASE("verify") {
    auto r = run({"verify", "conj_involution"});
    CHECK(r.code == 0);
    CHECK(r.out.find("PASS") != std::string::npos);
    r = run({"verify", "mult_table_01", "-k", "4"});
    CHECK(r.code == 0);
    CHECK(r.out.find("checks = 36") != std::string::npos);
    r = run({"verify", "gsigma_decomposition"});
    CHECK(r.code == 0);
    r = run({"verify", "calv_conjugation"});
    CHECK(r.code == 1);
    r = run({"verify", "--op", "grozman", "--format", "json"});
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["passed"] == true);
    r = run({"verify", "--list"});
    CHECK(r.code == 0);
    CHECK(r.out.find("oracle_agreement") != std::string::npos);
  }

  TEST_CASE("bad input") {
    CHECK(run({"classify", "-k", "2", "--lambda", "0.5", "--mu", "1"}).code == 2);
    CHECK(run({"classify", "-k", "2", "--lambda", "1/0", "--mu", "1"}).code == 2);
    CHECK(run({"classify", "-k", "2", "--space", "torus"}).code == 2);
    CHECK(run({"figures", "-k", "7"}).code == 2);
    CHECK(run({"verify", "nosuch"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({}).code == 2);
    const auto r = run({"classify", "-k", "2", "--lambda", "0.5"});
    CHECK(r.err.find("0.5") != std::string::npos);
  }

  TEST_CASE("output is deterministic") {
    for (const std::vector<std::string>& args :
         {std::vector<std::string>{"table", "-k", "3", "--format", "json"},
          std::vector<std::string>{"classify", "-k", "4", "--lambda", "0", "--mu", "1"},
          std::vector<std::string>{"figures", "-k", "4"}}) {
      const auto a = run(args);
      const auto b = run(args);
      CHECK(a.code == 0);
      CHECK(a.out == b.out);
    }
  }

  TEST_CASE("config file mirrors flags") {
    const fs::path dir = scratch("config");
    {
      std::ofstream f(dir / "run.ini");
      f << "order=3\nlambda=-1/2\nmu=3/2\n";
    }
    const auto r = run({"classify", "--config", (dir / "run.ini").string()});
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["algebra"] == "t2");
  }

  TEST_CASE("figures write svg and csv") {
    const fs::path dir = scratch("figures");
    auto r = run({"figures", "-k", "3", "-o", (dir / "loci3").string()});
    REQUIRE(r.code == 0);
    const std::string svg = slurp(dir / "loci3.svg");
    const std::string csv = slurp(dir / "loci3.csv");
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(csv.rfind("type,label,lambda,mu,algebra\n", 0) == 0);

    const fs::path env_dir = scratch("env");
    setenv("DOPSYM_OUTPUT_DIR", env_dir.c_str(), 1);
    r = run({"figures", "-k", "5", "-o", "loci5"});
    unsetenv("DOPSYM_OUTPUT_DIR");
    REQUIRE(r.code == 0);
    CHECK(fs::exists(env_dir / "loci5.svg"));
    CHECK(fs::exists(env_dir / "loci5.csv"));
  }
}

TEST_SUITE("figures") {
  TEST_CASE("loci for k = 3") {
    const auto fig = exceptional_loci(3);
    CHECK(fig.curves.size() == 5);
    CHECK(fig.points.size() == 7);
    for (const auto& c : fig.curves) CHECK(on_locus(c, c.sample.first, c.sample.second));
    bool hyperbola = false;
    for (const auto& c : fig.curves) hyperbola = hyperbola || c.hyperbola;
    CHECK(hyperbola);
    const std::vector<std::pair<Rat, Rat>> want{{Rat(-1, 2), Rat(3, 2)}, {Rat(-2, 3), Rat(5, 3)},
                                                {Rat(0), Rat(1)},       {Rat(0), Rat(2)},
                                                {Rat(0), Rat(3)},       {Rat(-1), Rat(1)},
                                                {Rat(-2), Rat(1)}};
    for (const auto& [l, m] : want) {
      bool found = false;
      for (const auto& p : fig.points) found = found || (p.lambda == l && p.mu == m);
      CHECK(found);
    }
  }

  TEST_CASE("loci for k = 5 and k = 2") {
    const auto fig = exceptional_loci(5);
    CHECK(fig.curves.size() == 3);
    CHECK(fig.points.size() == 3);
    const auto two = exceptional_loci(2);
    CHECK(two.points.size() == 4);
    CHECK(two.curves.size() == 4);
    CHECK_THROWS_AS(exceptional_loci(1), ParseError);
    CHECK_THROWS_AS(exceptional_loci(6), ParseError);
  }

  TEST_CASE("svg draws one marker per point") {
    const auto fig = exceptional_loci(4);
    const std::string svg = loci_svg(fig);
    std::size_t circles = 0;
    for (std::size_t pos = svg.find("<circle"); pos != std::string::npos; pos = svg.find("<circle", pos + 1)) {
      ++circles;
    }
    CHECK(circles == fig.points.size());
    CHECK(svg.find("</svg>") != std::string::npos);
  }
}
