#include <CLI11.hpp>
#include <cstring>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "sio/sio.hpp"

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitSchema = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitNonConvergence = 4;

struct Options {
  std::string input;
  std::string out_dir = ".";
  int grid_t = 256;
  int grid_z = 64;
  int section_n = 512;
  int fft_size = 8192;
  long seed = 1;
  double margin_warn = 1e-6;
  double point_re = 0.0, point_im = 0.0;
  bool point_set = false;
};

sio::Json index_pair_json(const sio::IndexPair& p) {
  return sio::Json{{"lower", p.lower}, {"upper", p.upper}};
}

void write_report(const Options& opt, sio::Json& report) {
  std::filesystem::create_directories(opt.out_dir);
  report["seed"] = opt.seed;
  sio::write_json_file(opt.out_dir + "/report.json", report);
}

void write_spectra(const Options& opt,
                   const std::vector<sio::SpiralicHorn>& horns,
                   const std::vector<sio::Complex>& extra_points) {
  std::filesystem::create_directories(opt.out_dir);
  std::ofstream csv(opt.out_dir + "/spectra.csv");
  csv << "re,im,c\n";
  sio::SvgPlot svg;
  const char* colors[] = {"#1f6feb", "#d1242f", "#1a7f37", "#8250df"};
  int hi = 0;
  for (const auto& h : horns) {
    sio::HornShape shape = sio::classify(h);
    svg.add_legend_line(std::string("horn ") + std::to_string(hi) + ": " +
                        sio::shape_name(shape));
    if (shape == sio::HornShape::point) {
      csv << h.z1.real() << "," << h.z1.imag() << "," << h.a << "\n";
      svg.add_path({h.z1}, "point", colors[hi % 4]);
      ++hi;
      continue;
    }
    int nc = (h.a == h.b) ? 1 : opt.grid_z;
    for (int j = 0; j < nc; ++j) {
      double c = (nc == 1) ? h.a
                           : h.a + (h.b - h.a) * static_cast<double>(j) /
                                       static_cast<double>(nc - 1);
      sio::BoundaryCurve bc = sio::boundary_curve(h, c);
      for (sio::Complex z : bc.points)
        csv << z.real() << "," << z.imag() << "," << c << "\n";
      svg.add_path(bc.points, "c=" + std::to_string(c), colors[hi % 4]);
    }
    ++hi;
  }
  if (!extra_points.empty()) {
    for (sio::Complex z : extra_points)
      csv << z.real() << "," << z.imag() << ",range\n";
    svg.add_legend_line("range points");
  }
  svg.write(opt.out_dir + "/spectra.svg");
}

int cmd_indices(const Options& opt, const sio::Json& in) {
  sio::ProblemInstance problem = sio::problem_from_json(in);
  sio::Json nodes = sio::Json::array();
  bool converged = true;
  for (const auto& node : problem.weight().nodes) {
    sio::MoReport mo = sio::mo_indices(node.profile);
    sio::EnvelopeReport env = sio::envelope_check(node.profile);
    converged = converged && mo.converged;
    nodes.push_back({{"point", sio::complex_to_json(node.point)},
                     {"mo", index_pair_json(mo.indices)},
                     {"consistent", mo.consistent},
                     {"converged", mo.converged},
                     {"in_W", env.in_W},
                     {"envelope_a", env.a},
                     {"envelope_b", env.b}});
  }
  sio::Json report{{"command", "indices"}, {"nodes", nodes}};
  write_report(opt, report);
  if (!converged) return kExitNonConvergence;
  return kExitYes;
}

int cmd_validate(const Options& opt, const sio::Json& in) {
  sio::ProblemInstance problem = sio::problem_from_json(in);
  sio::LogHolderReport lh =
      sio::validate_exponent(problem.exponent(), problem.curve());
  double carleson = sio::carleson_constant(problem.curve());
  bool all_in_W = true;
  for (const auto& node : problem.weight().nodes)
    all_in_W = all_in_W && sio::envelope_check(node.profile).in_W;
  bool ok = lh.holds && all_in_W;
  sio::Json report{{"command", "validate"},
                   {"log_holder_holds", lh.holds},
                   {"min_A_estimate", lh.min_A_estimate},
                   {"log_holder_diverging", lh.diverging},
                   {"carleson_constant", carleson},
                   {"weights_in_W", all_in_W},
                   {"valid", ok}};
  write_report(opt, report);
  return ok ? kExitYes : kExitNo;
}

int cmd_bounded(const Options& opt, const sio::Json& in) {
  sio::ProblemInstance problem = sio::problem_from_json(in);
  sio::BoundednessReport rep = sio::check_boundedness(problem);
  sio::Json slacks = sio::Json::array();
  for (const auto& s : rep.slacks)
    slacks.push_back(
        {{"point", sio::complex_to_json(s.point)}, {"slack", s.slack}});
  sio::Json report{
      {"command", "bounded"}, {"bounded", rep.bounded}, {"slacks", slacks}};
  write_report(opt, report);
  return rep.bounded ? kExitYes : kExitNo;
}

sio::Json fredholm_report_json(const sio::FredholmReport& rep,
                               double margin_warn) {
  sio::Json failures = sio::Json::array();
  for (const auto& f : rep.failures)
    failures.push_back({{"point", sio::complex_to_json(f.point)},
                        {"interval", {f.lo, f.hi}},
                        {"nearest_integer", f.nearest_integer}});
  sio::Json margins = sio::Json::array();
  bool warn = false;
  for (const auto& m : rep.margins) {
    sio::Json mj{{"point", sio::complex_to_json(m.point)},
                 {"margin", m.margin}};
    if (m.shift) mj["shift"] = *m.shift;
    if (m.margin > 0.0 && m.margin < margin_warn) warn = true;
    margins.push_back(mj);
  }
  sio::Json out{{"fredholm", rep.fredholm},
                {"failures", failures},
                {"margins", margins},
                {"margin_warning", warn},
                {"factorization_index_note",
                 "when a Wiener-Hopf factorization exists the operator index "
                 "equals minus the factorization integer; not computed here"}};
  if (rep.degenerate_zero_limit)
    out["degenerate_zero_limit"] =
        sio::complex_to_json(*rep.degenerate_zero_limit);
  return out;
}

int cmd_fredholm(const Options& opt, const sio::Json& in) {
  sio::ProblemInstance problem = sio::problem_from_json(in);
  sio::PcSymbol a = sio::symbol_from_json(in.at("symbol"));
  sio::FredholmReport rep = sio::fredholm_sio(a, problem);
  sio::Json report = fredholm_report_json(rep, opt.margin_warn);
  report["command"] = "fredholm";
  write_report(opt, report);
  return rep.fredholm ? kExitYes : kExitNo;
}

int cmd_closed_image(const Options& opt, const sio::Json& in) {
  sio::ProblemInstance problem = sio::problem_from_json(in);
  sio::PcSymbol a = sio::symbol_from_json(in.at("symbol"));
  bool closed = sio::closed_image(a, problem);
  sio::Json report{{"command", "closed-image"}, {"closed_image", closed}};
  write_report(opt, report);
  return closed ? kExitYes : kExitNo;
}

int cmd_local_spectrum(const Options& opt, const sio::Json& in) {
  sio::ProblemInstance problem = sio::problem_from_json(in);
  sio::Complex t = opt.point_set ? sio::Complex(opt.point_re, opt.point_im)
                                 : problem.curve().points().front();
  sio::SpiralicHorn horn = sio::local_spectrum(problem, t);
  sio::Json report{{"command", "local-spectrum"},
                   {"point", sio::complex_to_json(t)},
                   {"shape", sio::shape_name(sio::classify(horn))},
                   {"delta", horn.delta},
                   {"a", horn.a},
                   {"b", horn.b}};
  write_report(opt, report);
  write_spectra(opt, {horn}, {});
  return kExitYes;
}

int cmd_ess_spectrum(const Options& opt, const sio::Json& in) {
  sio::ProblemInstance problem = sio::problem_from_json(in);
  sio::PcSymbol a = sio::symbol_from_json(in.at("symbol"));
  sio::EssentialSpectrum spec = sio::essential_spectrum(a, problem);
  std::vector<sio::SpiralicHorn> horns;
  sio::Json horns_json = sio::Json::array();
  for (const auto& h : spec.horns) {
    horns.push_back(h.horn);
    horns_json.push_back({{"point", sio::complex_to_json(h.point)},
                          {"z1", sio::complex_to_json(h.horn.z1)},
                          {"z2", sio::complex_to_json(h.horn.z2)},
                          {"delta", h.horn.delta},
                          {"a", h.horn.a},
                          {"b", h.horn.b},
                          {"shape", sio::shape_name(sio::classify(h.horn))}});
  }
  sio::Json report{{"command", "ess-spectrum"}, {"horns", horns_json}};
  write_report(opt, report);
  write_spectra(opt, horns, spec.range_points);
  return kExitYes;
}

int cmd_symbol_det(const Options& opt, const sio::Json& in) {
  sio::ProblemInstance problem = sio::problem_from_json(in);
  std::map<std::string, std::shared_ptr<const sio::PcSymbol>> symbols;
  if (in.contains("symbol"))
    symbols["symbol"] = std::make_shared<const sio::PcSymbol>(
        sio::symbol_from_json(in.at("symbol")));
  if (in.contains("symbols"))
    for (const auto& [key, value] : in.at("symbols").items())
      symbols[key] =
          std::make_shared<const sio::PcSymbol>(sio::symbol_from_json(value));
  sio::OperatorExpr expr = sio::expr_from_json(in.at("expr"), symbols);
  sio::BundleOptions bopt;
  bopt.c_grid = opt.grid_z;
  bopt.t_grid = opt.grid_t;
  sio::AlgebraReport rep = sio::fredholm_algebra(expr, problem, bopt);
  sio::Json report{{"command", "symbol-det"},
                   {"fredholm", rep.fredholm},
                   {"min_abs_det", rep.min_abs_det},
                   {"near_zero", rep.near_zero},
                   {"exact_criterion", rep.exact_criterion},
                   {"semifredholm_equals_fredholm",
                    rep.semifredholm_equals_fredholm},
                   {"c_grid", bopt.c_grid},
                   {"s_count", bopt.s_count},
                   {"t_grid", bopt.t_grid}};
  if (rep.witness)
    report["witness"] = {{"t", sio::complex_to_json(rep.witness->first)},
                         {"z", sio::complex_to_json(rep.witness->second)}};
  write_report(opt, report);
  return rep.fredholm ? kExitYes : kExitNo;
}

int cmd_oracle(const Options& opt, const sio::Json& in) {
  sio::ProblemInstance problem = sio::problem_from_json(in);
  sio::PcSymbol a = sio::symbol_from_json(in.at("symbol"));
  sio::EssentialSpectrum spec = sio::essential_spectrum(a, problem);
  std::vector<sio::Complex> cloud = spec.range_points;
  for (const auto& h : spec.horns) {
    std::vector<sio::Complex> pts = sio::sample_region(h.horn);
    cloud.insert(cloud.end(), pts.begin(), pts.end());
  }
  // lambda grid: box around the cloud, expanded by 0.5
  double lo_re = 1e300, hi_re = -1e300, lo_im = 1e300, hi_im = -1e300;
  for (sio::Complex z : cloud) {
    lo_re = std::min(lo_re, z.real());
    hi_re = std::max(hi_re, z.real());
    lo_im = std::min(lo_im, z.imag());
    hi_im = std::max(hi_im, z.imag());
  }
  int side = 41;
  std::vector<sio::Complex> grid;
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j)
      grid.push_back(sio::Complex(
          lo_re - 0.5 + (hi_re - lo_re + 1.0) * i / double(side - 1),
          lo_im - 0.5 + (hi_im - lo_im + 1.0) * j / double(side - 1)));
  std::vector<sio::SweepPoint> sweep =
      sio::sigma_min_sweep(a, grid, opt.section_n, opt.fft_size);
  sio::OracleReport rep = sio::cluster_compare(cloud, sweep);
  std::filesystem::create_directories(opt.out_dir);
  std::ofstream csv(opt.out_dir + "/sweep.csv");
  csv << "re,im,sigma_min\n";
  for (const auto& p : sweep)
    csv << p.lambda.real() << "," << p.lambda.imag() << "," << p.sigma_min
        << "\n";
  sio::Json report{{"command", "oracle"},
                   {"agreement_rate", rep.agreement_rate},
                   {"classified", rep.classified},
                   {"unclassified", rep.unclassified},
                   {"section_n", opt.section_n},
                   {"fft_size", opt.fft_size}};
  write_report(opt, report);
  return rep.agreement_rate >= 0.95 ? kExitYes : kExitNo;
}

bool is_non_convergence(const char* msg) {
  return std::strstr(msg, "converge") != nullptr ||
         std::strstr(msg, "stabilize") != nullptr;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fredholm analysis of singular integral operators on weighted "
               "variable Lebesgue spaces"};
  app.require_subcommand(1);
  Options opt;
  const std::vector<std::string> names = {
      "indices",       "validate",     "bounded",
      "fredholm",      "closed-image", "local-spectrum",
      "ess-spectrum",  "symbol-det",   "oracle"};
  for (const auto& name : names) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--input", opt.input, "problem JSON")->required();
    sub->add_option("--out", opt.out_dir, "output directory");
    sub->add_option("--grid-t", opt.grid_t, "continuous t-grid size");
    sub->add_option("--grid-z", opt.grid_z, "c-grid size per horn");
    sub->add_option("--section-n", opt.section_n, "finite section size");
    sub->add_option("--fft-size", opt.fft_size, "symbol sampling grid");
    sub->add_option("--seed", opt.seed, "recorded seed");
    sub->add_option("--margin-warn", opt.margin_warn, "margin warning level");
    sub->add_option("--point-re", opt.point_re, "analysis point, real part");
    sub->add_option("--point-im", opt.point_im, "analysis point, imag part")
        ->each([&](const std::string&) { opt.point_set = true; });
  }
  CLI11_PARSE(app, argc, argv);
  std::string cmd = app.get_subcommands().front()->get_name();

  sio::Json in;
  try {
    in = sio::load_json_file(opt.input);
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitSchema;
  }

  try {
    if (cmd == "indices") return cmd_indices(opt, in);
    if (cmd == "validate") return cmd_validate(opt, in);
    if (cmd == "bounded") return cmd_bounded(opt, in);
    if (cmd == "fredholm") return cmd_fredholm(opt, in);
    if (cmd == "closed-image") return cmd_closed_image(opt, in);
    if (cmd == "local-spectrum") return cmd_local_spectrum(opt, in);
    if (cmd == "ess-spectrum") return cmd_ess_spectrum(opt, in);
    if (cmd == "symbol-det") return cmd_symbol_det(opt, in);
    if (cmd == "oracle") return cmd_oracle(opt, in);
  } catch (const sio::Json::exception& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const std::invalid_argument& e) {
    if (std::strstr(e.what(), "schema:") != nullptr) {
      std::cerr << "schema error: " << e.what() << "\n";
      return kExitSchema;
    }
    if (is_non_convergence(e.what())) {
      std::cerr << "non-convergence: " << e.what() << "\n";
      return kExitNonConvergence;
    }
    std::cerr << "precondition failure: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitNonConvergence;
  }
  return kExitSchema;
}
