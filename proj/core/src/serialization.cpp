#include "bandfit/serialization.hpp"

#include <limits>

#include <json.hpp>

#include "bandfit/error.hpp"

namespace bandfit {

using nlohmann::json;

namespace {

// JSON has no infinity; a non-positive spectrum reports condition as null.
json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double number_from(const json& j, double fallback) {
  return j.is_null() ? fallback : j.get<double>();
}

}  // namespace

std::string to_json(const Approximant& a, int indent) {
  const SolveReport& r = a.fit_report();
  json coefficients = json::array();
  for (int k = -a.spec().order(); k <= a.spec().order(); ++k)
    coefficients.push_back(a.coefficients().at(k));
  json doc = {
      {"format", kApproximantFormat},
      {"version", kApproximantVersion},
      {"omega", a.spec().omega()},
      {"n", a.spec().order()},
      {"window", {{"q", a.window().q()}, {"s", a.window().s()}}},
      {"lambda", a.lambda()},
      {"coefficients", coefficients},
      {"report",
       {{"residual_e", r.residual_e},
        {"min_eig", r.min_eig},
        {"max_eig", r.max_eig},
        {"condition", number_or_null(r.condition)},
        {"used_fallback", r.used_fallback}}},
  };
  return doc.dump(indent);
}

Approximant approximant_from_json(std::string_view text) {
  try {
    const json doc = json::parse(text);
    if (doc.at("format").get<std::string>() != kApproximantFormat)
      throw DataError("not a bandfit approximant document");
    if (doc.at("version").get<int>() != kApproximantVersion)
      throw DataError("unsupported approximant version");
    const BasisSpec spec(doc.at("omega").get<double>(), doc.at("n").get<int>());
    const Window window(doc.at("window").at("q").get<double>(),
                        doc.at("window").at("s").get<double>());
    const auto values = doc.at("coefficients").get<std::vector<double>>();
    if (values.size() != spec.dimension())
      throw DataError("coefficient count does not match 2N+1");
    Eigen::VectorXd y(static_cast<Eigen::Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) y[static_cast<Eigen::Index>(i)] = values[i];
    Coefficients c = Coefficients::from_storage(spec, y);

    const json& rep = doc.at("report");
    SolveReport report{c};
    report.lambda = doc.at("lambda").get<double>();
    report.residual_e = rep.at("residual_e").get<double>();
    report.min_eig = rep.at("min_eig").get<double>();
    report.max_eig = rep.at("max_eig").get<double>();
    report.condition = number_from(rep.at("condition"), std::numeric_limits<double>::infinity());
    report.used_fallback = rep.at("used_fallback").get<bool>();
    return Approximant(spec, std::move(c), window, report.lambda, std::move(report));
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed approximant JSON: ") + e.what());
  } catch (const ContractError& e) {
    throw DataError(std::string("invalid approximant: ") + e.what());
  }
}

}  // namespace bandfit
