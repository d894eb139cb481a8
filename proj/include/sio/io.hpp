#pragma once

#include <fstream>
#include <json.hpp>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "sio/curve.hpp"
#include "sio/exponent.hpp"
#include "sio/operator_expr.hpp"
#include "sio/pc_symbol.hpp"
#include "sio/problem.hpp"
#include "sio/weight.hpp"

namespace sio {

using Json = nlohmann::json;

inline Complex complex_from_json(const Json& j) {
  require(j.is_array() && j.size() == 2, "schema: complex must be [re, im]");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

inline Json complex_to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

inline MatrixXc matrix_from_json(const Json& j, int n) {
  require(j.is_array() && static_cast<int>(j.size()) == n,
          "schema: matrix row count mismatch");
  MatrixXc m(n, n);
  for (int r = 0; r < n; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    require(row.is_array() && static_cast<int>(row.size()) == n,
            "schema: matrix column count mismatch");
    for (int c = 0; c < n; ++c)
      m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

inline CurveSpec curve_from_json(const Json& j) {
  require(j.contains("samples"), "schema: curve.samples required");
  std::vector<double> s;
  std::vector<Complex> pts;
  for (const auto& row : j.at("samples")) {
    require(row.is_array() && row.size() == 3,
            "schema: curve sample must be [s, re, im]");
    s.push_back(row[0].get<double>());
    pts.push_back(Complex(row[1].get<double>(), row[2].get<double>()));
  }
  std::vector<WhirlPoint> whirl;
  if (j.contains("whirl_points"))
    for (const auto& row : j.at("whirl_points")) {
      require(row.is_array() && row.size() == 3,
              "schema: whirl point must be [re, im, delta]");
      whirl.push_back({Complex(row[0].get<double>(), row[1].get<double>()),
                       row[2].get<double>()});
    }
  double total = j.value("total_length", 0.0);
  return CurveSpec(std::move(s), std::move(pts), std::move(whirl), total);
}

inline ExponentSpec exponent_from_json(const Json& j, double period_default) {
  require(j.contains("values"), "schema: exponent.values required");
  std::vector<double> s, p;
  for (const auto& row : j.at("values")) {
    require(row.is_array() && row.size() == 2,
            "schema: exponent value must be [s, p]");
    s.push_back(row[0].get<double>());
    p.push_back(row[1].get<double>());
  }
  double period = j.value("period", period_default);
  double A = j.value("declared_A", 0.0);
  return ExponentSpec(std::move(s), std::move(p), period, A);
}

inline WeightProfile profile_from_json(const Json& j) {
  std::string type = j.value("type", "power");
  if (type == "power")
    return WeightProfile::power(j.at("gamma").get<double>(),
                                j.value("x_max", 1.0));
  require(type == "sampled", "schema: profile.type must be power or sampled");
  std::vector<std::pair<double, double>> samples;
  for (const auto& row : j.at("samples"))
    samples.emplace_back(row[0].get<double>(), row[1].get<double>());
  return WeightProfile::sampled(std::move(samples));
}

inline RadialWeightSpec weight_from_json(const Json& j) {
  std::vector<WeightNode> nodes;
  if (j.contains("nodes"))
    for (const auto& nj : j.at("nodes"))
      nodes.push_back({complex_from_json(nj.at("point")),
                       profile_from_json(nj.at("profile"))});
  return RadialWeightSpec(std::move(nodes));
}

inline PcSymbol symbol_from_json(const Json& j) {
  int n = j.value("dimension", 1);
  std::vector<PcSymbol::BackgroundSample> background;
  require(j.contains("background"), "schema: symbol.background required");
  for (const auto& bj : j.at("background"))
    background.push_back(
        {bj.at("s").get<double>(), matrix_from_json(bj.at("value"), n)});
  std::vector<PcSymbol::Jump> jumps;
  if (j.contains("jumps"))
    for (const auto& jj : j.at("jumps"))
      jumps.push_back({complex_from_json(jj.at("point")),
                       matrix_from_json(jj.at("left"), n),
                       matrix_from_json(jj.at("right"), n)});
  return PcSymbol(n, std::move(background), std::move(jumps));
}

inline ProblemInstance problem_from_json(const Json& j) {
  require(j.contains("curve") && j.contains("exponent"),
          "schema: curve and exponent required");
  CurveSpec curve = curve_from_json(j.at("curve"));
  ExponentSpec exponent =
      exponent_from_json(j.at("exponent"), curve.total_length());
  RadialWeightSpec weight =
      j.contains("weight") ? weight_from_json(j.at("weight")) : RadialWeightSpec();
  return ProblemInstance(std::move(curve), std::move(exponent), std::move(weight));
}

/// Operator expression per the grammar {"op": "sum"|"prod"|"S"|"coef"|
/// "scalar"|"identity", ...}; "coef" refs resolve against the symbol table.
inline OperatorExpr expr_from_json(
    const Json& j,
    const std::map<std::string, std::shared_ptr<const PcSymbol>>& symbols) {
  std::string op = j.at("op").get<std::string>();
  if (op == "S") return OperatorExpr::singular();
  if (op == "identity") return OperatorExpr::identity();
  if (op == "scalar")
    return OperatorExpr::scalar(complex_from_json(j.at("value")));
  if (op == "coef") {
    std::string ref = j.value("ref", "symbol");
    auto it = symbols.find(ref);
    require(it != symbols.end(), "schema: unknown symbol ref in coef");
    return OperatorExpr::coef(it->second);
  }
  if (op == "sum" || op == "prod") {
    std::vector<OperatorExpr> children;
    for (const auto& cj : j.at("args")) children.push_back(expr_from_json(cj, symbols));
    return op == "sum" ? OperatorExpr::sum(std::move(children))
                       : OperatorExpr::product(std::move(children));
  }
  require(false, "schema: unknown expression op");
  return OperatorExpr::identity();
}

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "input file not readable");
  Json j;
  in >> j;
  return j;
}

inline void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  require(out.good(), "output file not writable");
  out << j.dump(2) << "\n";
}

}  // namespace sio
