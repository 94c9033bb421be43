#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "xyzchain/cli.hpp"

using namespace xyzchain;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> split(const std::string& line, char sep = ',') {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, sep)) cells.push_back(cell);
  return cells;
}

std::vector<std::string> lines(const std::string& text) { return split(text, '\n'); }

std::string value_of(const std::string& report, const std::string& key) {
  for (const auto& l : lines(report)) {
    std::istringstream is(l);
    std::string k, v;
    is >> k >> v;
    if (k == key) return v;
  }
  return {};
}

fs::path temp_file(const std::string& name) { return fs::temp_directory_path() / name; }

}  // namespace

TEST_CASE("cli: usage errors exit 2") {
  CHECK(run({}).code == cli::kExitUsage);
  CHECK(run({"bogus"}).code == cli::kExitUsage);
  CHECK(run({"eval", "--jx", "1", "--jy", "1", "--jz", "1"}).code == cli::kExitUsage);

  const auto zero = run({"eval", "--jx", "1", "--jy", "1", "--jz", "1", "--kt", "0"});
  CHECK(zero.code == cli::kExitUsage);
  CHECK(zero.err.find("kt") != std::string::npos);

  CHECK(run({"eval", "--jx", "1", "--jy", "1", "--kt", "-1"}).code == cli::kExitUsage);
  CHECK(run({"eval", "--jx", "nan", "--jy", "1", "--kt", "1"}).code == cli::kExitUsage);
  CHECK(run({"eval", "--jx", "1", "--delta", "1", "--sigma", "1", "--kt", "1"}).code ==
        cli::kExitUsage);
  CHECK(run({"sweep", "--preset", "fig99"}).code == cli::kExitUsage);
  CHECK(run({"sweep", "--var", "kt", "--from", "0.1", "--to", "1", "--steps", "1", "--jx", "1",
             "--jy", "1"})
            .code == cli::kExitUsage);
  CHECK(run({"tc", "--jx", "1", "--jy", "1", "--jz", "1", "--from", "2", "--to", "1"}).code ==
        cli::kExitUsage);
  CHECK(run({"scan", "--step", "0"}).code == cli::kExitUsage);
  CHECK(run({"verify", "--n", "0"}).code == cli::kExitUsage);
}

TEST_CASE("cli: help exits 0") {
  const auto h = run({"--help"});
  CHECK(h.code == cli::kExitOk);
  CHECK(h.out.find("sweep") != std::string::npos);
}

TEST_CASE("cli: eval") {
  const auto r = run({"eval", "--jx", "1", "--jy", "1", "--jz", "1", "--kt", "0.25"});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(value_of(r.out, "concurrence") == "0.895829987655");
  CHECK(value_of(r.out, "branch") == "C1");
  CHECK(value_of(r.out, "anisotropy") == "0");

  const auto ds = run({"eval", "--delta", "4", "--sigma", "2", "--jz", "1", "--kt", "0.2"});
  REQUIRE(ds.code == cli::kExitOk);
  CHECK(value_of(ds.out, "concurrence") == "0");
  CHECK(value_of(ds.out, "zero_manifold_distance") == "0");

  const auto ising = run({"eval", "--jz", "1", "--kt", "1"});
  REQUIRE(ising.code == cli::kExitOk);
  CHECK(value_of(ising.out, "anisotropy") == "undefined");

  const auto csv = run({"eval", "--jx", "1", "--jy", "1", "--jz", "1", "--kt", "0.25", "--csv"});
  REQUIRE(csv.code == cli::kExitOk);
  const auto ls = lines(csv.out);
  REQUIRE(ls.size() == 2);
  CHECK(split(ls[0]).size() == split(ls[1]).size());
  CHECK(split(ls[0])[4] == "concurrence");
  CHECK(split(ls[1])[4] == "0.895829987655");
}

TEST_CASE("cli: tc") {
  CHECK(run({"tc", "--jx", "1", "--jy", "1", "--jz", "1"}).out == "0.91023923\n");
  CHECK(run({"tc", "--jz", "1"}).out == "none\n");
  CHECK(run({"tc", "--jx", "10", "--jy", "10", "--jz", "10", "--to", "1"}).out ==
        "above 1.00000000\n");
}

TEST_CASE("cli: sweep CSV") {
  const auto r = run({"sweep", "--var", "jz", "--from", "-10", "--to", "10", "--steps", "201",
                      "--delta", "7", "--sigma", "1", "--kt", "0.4", "--threads", "1"});
  REQUIRE(r.code == cli::kExitOk);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 202);
  CHECK(ls[0] == cli::kSweepCsvHeader);

  // Round trip: every row reproduces the library values to 1e-9.
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const auto cells = split(ls[i]);
    REQUIRE(cells.size() == 8);
    CHECK(cells[0] == "jz");
    const double jz = std::stod(cells[1]);
    const Couplings c = Couplings::from_delta_sigma(7, 1, jz);
    const auto cr = concurrence(c, 0.4);
    const auto p = bell_probabilities(c, 0.4);
    CHECK(std::abs(std::stod(cells[2]) - cr.value) <= 1e-9);
    CHECK(cells[3] == to_string(cr.branch));
    CHECK(std::abs(std::stod(cells[4]) - p.phi_plus) <= 1e-9);
    CHECK(std::abs(std::stod(cells[5]) - p.phi_minus) <= 1e-9);
    CHECK(std::abs(std::stod(cells[6]) - p.psi_plus) <= 1e-9);
    CHECK(std::abs(std::stod(cells[7]) - p.psi_minus) <= 1e-9);
  }
}

TEST_CASE("cli: presets") {
  for (const auto& name : cli::preset_names()) {
    CAPTURE(name);
    const auto series = cli::figure_preset(name);
    CHECK_FALSE(series.empty());
    for (const auto& s : series) CHECK_NOTHROW(analysis::validate(s.spec));
  }
  CHECK_THROWS_AS(cli::figure_preset("nope"), Error);
  CHECK(cli::preset_names().size() == 10);
  CHECK(cli::figure_preset("fig5").size() == 20);
  const auto bb = cli::figure_preset("fig5bb");
  REQUIRE(bb.size() == 5);
  CHECK(bb.front().label == "delta@kt=0.05");
  CHECK(bb.back().label == "delta@kt=0.8");
  CHECK(cli::figure_preset("fig6a").front().label == "jz@kt=0.4");

  const auto r = run({"sweep", "--preset", "fig2", "--threads", "2"});
  REQUIRE(r.code == cli::kExitOk);
  const auto ls = lines(r.out);
  CHECK(ls[0] == cli::kSweepCsvHeader);
  CHECK(ls.size() == 1 + 3 * 200);
  CHECK(split(ls[1])[0] == "kt@anisotropy=1.2");
  CHECK(split(ls.back())[0] == "kt@anisotropy=1.7");

  CHECK(run({"probs", "--preset", "fig2", "--threads", "2"}).out == r.out);
}

TEST_CASE("cli: output is identical across thread counts") {
  const auto one = run({"sweep", "--preset", "fig5", "--threads", "1"});
  const auto four = run({"sweep", "--preset", "fig5", "--threads", "4"});
  REQUIRE(one.code == cli::kExitOk);
  CHECK(one.out == four.out);

  const std::vector<std::string> scan = {"scan", "--range", "1", "--step", "0.25"};
  auto a = scan;
  a.insert(a.end(), {"--threads", "1"});
  auto b = scan;
  b.insert(b.end(), {"--threads", "3"});
  const auto sa = run(a);
  const auto sb = run(b);
  CHECK(sa.code == cli::kExitOk);
  CHECK(sb.code == cli::kExitOk);
  CHECK(value_of(sa.out, "max") == value_of(sb.out, "max"));
  CHECK(lines(sa.out).back() == "0 violations");
}

TEST_CASE("cli: sweep to a file") {
  const fs::path path = temp_file("xyzchain_cli_sweep.csv");
  fs::remove(path);
  const auto r = run({"sweep", "--preset", "fig5a", "-o", path.string()});
  REQUIRE(r.code == cli::kExitOk);
  std::ifstream f(path);
  std::string header;
  std::getline(f, header);
  CHECK(header == cli::kSweepCsvHeader);
  fs::remove(path);

  CHECK(run({"sweep", "--preset", "fig5a", "-o", "/nonexistent/dir/x.csv"}).code != cli::kExitOk);
}

TEST_CASE("cli: config files") {
  const fs::path path = temp_file("xyzchain_cli_test.cfg");
  {
    std::ofstream f(path);
    f << "# XXX antiferromagnet\njx = 1\njy=1\n\njz=1\nkt=0.5\n";
  }
  const auto r = run({"eval", "--config", path.string()});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(value_of(r.out, "kt") == "0.5");

  // Flags override the file.
  const auto o = run({"eval", "--config", path.string(), "--kt", "0.25"});
  REQUIRE(o.code == cli::kExitOk);
  CHECK(value_of(o.out, "concurrence") == "0.895829987655");

  {
    std::ofstream f(path);
    f << "jx 1\n";
  }
  CHECK(run({"eval", "--config", path.string()}).code == cli::kExitUsage);
  fs::remove(path);
  CHECK(run({"eval", "--config", path.string()}).code == cli::kExitUsage);

  std::istringstream is("a=1\n # note\n b = two words \n");
  const auto m = cli::parse_config(is);
  CHECK(m.at("a") == "1");
  CHECK(m.at("b") == "two words");
}

TEST_CASE("cli: thread resolution") {
  CHECK(cli::resolve_threads(3) == 3u);
  ::setenv("XYZCHAIN_THREADS", "5", 1);
  CHECK(cli::resolve_threads(0) == 5u);
  CHECK(cli::resolve_threads(2) == 2u);
  ::unsetenv("XYZCHAIN_THREADS");
  CHECK(cli::resolve_threads(0) >= 1u);
}

TEST_CASE("cli: verify") {
  const auto r = run({"verify", "--n", "500", "--seed", "7"});
  CHECK(r.code == cli::kExitOk);
  CHECK(lines(r.out).back().rfind("PASS", 0) == 0);
  const auto a = cli::verify_against_oracle(200, 1);
  const auto b = cli::verify_against_oracle(200, 1);
  CHECK(a.max_deviation == b.max_deviation);
  CHECK(a.samples == 200);
}

TEST_CASE("format_number") {
  CHECK(cli::format_number(0.1) == "0.1");
  CHECK(cli::format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(cli::format_number(-2.0) == "-2");
}
