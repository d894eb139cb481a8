#include <doctest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "sio/sio.hpp"

namespace fs = std::filesystem;
using sio::Complex;
using sio::Json;

namespace {

std::string cli_path() {
  const char* p = std::getenv("SIO_CLI_PATH");
  REQUIRE(p != nullptr);
  return p;
}

int run_cli(const std::string& args) {
  std::string cmd = "\"" + cli_path() + "\" " + args + " >/dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -2;
}

fs::path fresh_dir(const std::string& tag) {
  fs::path dir = fs::temp_directory_path() / ("sio_cli_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

Json circle_curve_json(int n = 256) {
  Json samples = Json::array();
  for (int i = 0; i <= n; ++i) {
    double th = sio::kTwoPi * static_cast<double>(i) / n;
    samples.push_back(Json::array({th, std::cos(th), std::sin(th)}));
  }
  return Json{{"samples", samples}};
}

Json constant_exponent_json(double p) {
  return Json{{"values", Json::array({Json::array({0.0, p}),
                                      Json::array({sio::kTwoPi, p})})}};
}

Json jump_symbol_json(Complex left, Complex right) {
  // 1x1 matrix: one row holding one [re, im] cell
  auto cell = [](Complex c) {
    return Json::array({Json::array({Json::array({c.real(), c.imag()})})});
  };
  Json background = Json::array();
  for (int i = 0; i < 16; ++i)
    background.push_back(
        {{"s", sio::kTwoPi * (i + 0.5) / 16.0}, {"value", cell(right)}});
  Json jumps = Json::array();
  jumps.push_back({{"point", Json::array({1.0, 0.0})},
                   {"left", cell(left)},
                   {"right", cell(right)}});
  return Json{{"dimension", 1}, {"background", background}, {"jumps", jumps}};
}

Json base_problem_json() {
  return Json{{"curve", circle_curve_json()},
              {"exponent", constant_exponent_json(2.0)}};
}

std::string write_input(const fs::path& dir, const Json& j) {
  fs::path file = dir / "input.json";
  sio::write_json_file(file.string(), j);
  return file.string();
}

std::string slurp(const fs::path& file) {
  std::ifstream in(file);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("fredholm command exit codes and report") {
  SUBCASE("jump ratio i is Fredholm: exit 0") {
    fs::path dir = fresh_dir("fred_yes");
    Json in = base_problem_json();
    in["symbol"] = jump_symbol_json(Complex(0.0, 1.0), Complex(1.0, 0.0));
    std::string input = write_input(dir, in);
    CHECK(run_cli("fredholm --input " + input + " --out " + dir.string()) == 0);
    Json report = sio::load_json_file((dir / "report.json").string());
    CHECK(report.at("fredholm").get<bool>());
    CHECK(report.at("command").get<std::string>() == "fredholm");
    CHECK(report.contains("margins"));
    CHECK(report.contains("seed"));
  }
  SUBCASE("jump ratio -1 is not Fredholm: exit 1") {
    fs::path dir = fresh_dir("fred_no");
    Json in = base_problem_json();
    in["symbol"] = jump_symbol_json(Complex(-1.0, 0.0), Complex(1.0, 0.0));
    std::string input = write_input(dir, in);
    CHECK(run_cli("fredholm --input " + input + " --out " + dir.string()) == 1);
    Json report = sio::load_json_file((dir / "report.json").string());
    CHECK(!report.at("fredholm").get<bool>());
    CHECK(!report.at("failures").empty());
  }
  SUBCASE("reports regenerate byte-identically") {
    Json in = base_problem_json();
    in["symbol"] = jump_symbol_json(Complex(0.0, 1.0), Complex(1.0, 0.0));
    fs::path d1 = fresh_dir("fred_a"), d2 = fresh_dir("fred_b");
    std::string input = write_input(d1, in);
    CHECK(run_cli("fredholm --seed 7 --input " + input + " --out " +
                  d1.string()) == 0);
    CHECK(run_cli("fredholm --seed 7 --input " + input + " --out " +
                  d2.string()) == 0);
    CHECK(slurp(d1 / "report.json") == slurp(d2 / "report.json"));
  }
}

TEST_CASE("schema and input failures: exit 2") {
  fs::path dir = fresh_dir("schema");
  SUBCASE("missing input file") {
    CHECK(run_cli("validate --input " + (dir / "nope.json").string()) == 2);
  }
  SUBCASE("malformed JSON") {
    fs::path file = dir / "bad.json";
    std::ofstream(file) << "{ not json";
    CHECK(run_cli("validate --input " + file.string()) == 2);
  }
  SUBCASE("missing required section") {
    std::string input =
        write_input(dir, Json{{"curve", circle_curve_json()}});
    CHECK(run_cli("validate --input " + input + " --out " + dir.string()) == 2);
  }
  SUBCASE("fredholm without a symbol") {
    std::string input = write_input(dir, base_problem_json());
    CHECK(run_cli("fredholm --input " + input + " --out " + dir.string()) == 2);
  }
}

TEST_CASE("bounded command") {
  SUBCASE("admissible power weight: exit 0") {
    fs::path dir = fresh_dir("bnd_yes");
    Json in = base_problem_json();
    in["weight"] = Json{
        {"nodes", Json::array({Json{{"point", Json::array({1.0, 0.0})},
                                    {"profile", Json{{"type", "power"},
                                                     {"gamma", 0.3}}}}})}};
    std::string input = write_input(dir, in);
    CHECK(run_cli("bounded --input " + input + " --out " + dir.string()) == 0);
    Json report = sio::load_json_file((dir / "report.json").string());
    CHECK(report.at("bounded").get<bool>());
  }
  SUBCASE("inadmissible power weight: exit 1") {
    fs::path dir = fresh_dir("bnd_no");
    Json in = base_problem_json();
    in["weight"] = Json{
        {"nodes", Json::array({Json{{"point", Json::array({1.0, 0.0})},
                                    {"profile", Json{{"type", "power"},
                                                     {"gamma", 0.8}}}}})}};
    std::string input = write_input(dir, in);
    CHECK(run_cli("bounded --input " + input + " --out " + dir.string()) == 1);
  }
}

TEST_CASE("validate command accepts the circle problem") {
  fs::path dir = fresh_dir("validate");
  std::string input = write_input(dir, base_problem_json());
  CHECK(run_cli("validate --input " + input + " --out " + dir.string()) == 0);
  Json report = sio::load_json_file((dir / "report.json").string());
  CHECK(report.at("valid").get<bool>());
  CHECK(report.at("carleson_constant").get<double>() > 1.0);
}

TEST_CASE("local-spectrum writes spectra outputs") {
  fs::path dir = fresh_dir("locspec");
  Json in = base_problem_json();
  std::string input = write_input(dir, in);
  CHECK(run_cli("local-spectrum --point-re 1 --point-im 0 --input " + input +
                " --out " + dir.string()) == 0);
  Json report = sio::load_json_file((dir / "report.json").string());
  CHECK(report.at("shape").get<std::string>() == "segment");
  CHECK(fs::exists(dir / "spectra.csv"));
  std::string svg = slurp(dir / "spectra.svg");
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("segment") != std::string::npos);
}

TEST_CASE("ess-spectrum emits horn geometry and plots") {
  fs::path dir = fresh_dir("essspec");
  Json in = base_problem_json();
  in["symbol"] = jump_symbol_json(Complex(0.0, 1.0), Complex(1.0, 0.0));
  std::string input = write_input(dir, in);
  CHECK(run_cli("ess-spectrum --input " + input + " --out " + dir.string()) ==
        0);
  Json report = sio::load_json_file((dir / "report.json").string());
  REQUIRE(!report.at("horns").empty());
  CHECK(report.at("horns")[0].at("shape").get<std::string>() == "segment");
  std::string svg = slurp(dir / "spectra.svg");
  CHECK(svg.find("polyline") != std::string::npos);
  std::string csv = slurp(dir / "spectra.csv");
  CHECK(csv.find("re,im,c") == 0);
}

TEST_CASE("symbol-det command") {
  fs::path dir = fresh_dir("symdet");
  Json in = base_problem_json();
  in["symbol"] = jump_symbol_json(Complex(0.0, 1.0), Complex(1.0, 0.0));
  // a P + Q as an explicit expression tree
  Json P = Json{{"op", "prod"},
                {"args", Json::array(
                             {Json{{"op", "scalar"},
                                   {"value", Json::array({0.5, 0.0})}},
                              Json{{"op", "sum"},
                                   {"args", Json::array({Json{{"op", "identity"}},
                                                         Json{{"op", "S"}}})}}})}};
  Json aP = Json{{"op", "prod"}, {"args", Json::array({Json{{"op", "coef"}}, P})}};
  Json minusS =
      Json{{"op", "prod"},
           {"args", Json::array({Json{{"op", "scalar"},
                                      {"value", Json::array({-1.0, 0.0})}},
                                 Json{{"op", "S"}}})}};
  Json Q = Json{{"op", "prod"},
                {"args", Json::array(
                             {Json{{"op", "scalar"},
                                   {"value", Json::array({0.5, 0.0})}},
                              Json{{"op", "sum"},
                                   {"args", Json::array({Json{{"op", "identity"}},
                                                         minusS})}}})}};
  in["expr"] = Json{{"op", "sum"}, {"args", Json::array({aP, Q})}};
  std::string input = write_input(dir, in);
  CHECK(run_cli("symbol-det --grid-t 32 --grid-z 8 --input " + input +
                " --out " + dir.string()) == 0);
  Json report = sio::load_json_file((dir / "report.json").string());
  CHECK(report.at("fredholm").get<bool>());
  CHECK(report.at("exact_criterion").get<bool>());

  SUBCASE("unknown op is a schema error") {
    in["expr"] = Json{{"op", "frobnicate"}};
    std::string bad = write_input(dir, in);
    CHECK(run_cli("symbol-det --input " + bad + " --out " + dir.string()) == 2);
  }
}

TEST_CASE("oracle command on a small section") {
  fs::path dir = fresh_dir("oracle");
  Json in = base_problem_json();
  in["symbol"] = jump_symbol_json(Complex(0.0, 1.0), Complex(1.0, 0.0));
  std::string input = write_input(dir, in);
  CHECK(run_cli("oracle --section-n 96 --fft-size 1024 --input " + input +
                " --out " + dir.string()) == 0);
  Json report = sio::load_json_file((dir / "report.json").string());
  CHECK(report.at("agreement_rate").get<double>() >= 0.95);
  CHECK(report.at("classified").get<int>() > 0);
  std::string csv = slurp(dir / "sweep.csv");
  CHECK(csv.find("re,im,sigma_min") == 0);
}
