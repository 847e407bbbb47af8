#include "mixsmooth/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace mixsmooth {
namespace {

using nlohmann::ordered_json;

// JSON has no infinities; non-finite values are written as null.
ordered_json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

ordered_json points_json(const std::vector<RatePoint>& pts) {
  auto arr = ordered_json::array();
  for (const auto& p : pts) {
    ordered_json o;
    o["delta"] = number(p.delta);
    o["value"] = number(p.value);
    arr.push_back(std::move(o));
  }
  return arr;
}

ordered_json fit_object(const RateFit& f) {
  ordered_json o;
  o["a"] = number(f.a);
  o["b"] = number(f.b);
  o["c"] = number(f.c);
  o["residual"] = number(f.residual);
  o["points"] = points_json(f.points);
  return o;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string modulus_csv(const std::vector<ModulusRow>& rows) {
  bool refined = false;
  for (const auto& r : rows) refined = refined || r.refinement_change >= 0;
  std::ostringstream out;
  out << "delta1,delta2,omega" << (refined ? ",refinement_change" : "") << "\n";
  for (const auto& r : rows) {
    out << format_number(r.delta1) << ',' << format_number(r.delta2) << ',' << format_number(r.omega);
    if (refined) out << ',' << format_number(r.refinement_change);
    out << "\n";
  }
  return out.str();
}

std::string modulus_json(const std::vector<ModulusRow>& rows) {
  auto arr = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json o;
    o["delta1"] = number(r.delta1);
    o["delta2"] = number(r.delta2);
    o["omega"] = number(r.omega);
    if (r.refinement_change >= 0) o["refinement_change"] = number(r.refinement_change);
    arr.push_back(std::move(o));
  }
  return dump(arr);
}

std::string ulyanov_csv(const UlyanovReport& report) {
  std::ostringstream out;
  out << "delta1,delta2,lhs,rhs,ratio\n";
  for (const auto& r : report.rows) {
    out << format_number(r.delta1) << ',' << format_number(r.delta2) << ',' << format_number(r.lhs) << ','
        << format_number(r.rhs) << ',' << format_number(r.ratio) << "\n";
  }
  return out.str();
}

std::string ulyanov_json(const UlyanovReport& report) {
  ordered_json j;
  j["max_ratio"] = number(report.max_ratio);
  j["min_ratio"] = number(report.min_ratio);
  j["argmax_delta1"] = number(report.argmax_delta1);
  j["argmax_delta2"] = number(report.argmax_delta2);
  auto rows = ordered_json::array();
  for (const auto& r : report.rows) {
    ordered_json o;
    o["delta1"] = number(r.delta1);
    o["delta2"] = number(r.delta2);
    o["lhs"] = number(r.lhs);
    o["rhs"] = number(r.rhs);
    o["ratio"] = number(r.ratio);
    rows.push_back(std::move(o));
  }
  j["rows"] = std::move(rows);
  return dump(j);
}

std::string rate_fit_json(const RateFit& fit) { return dump(fit_object(fit)); }

std::string separation_json(const Separation& sep) {
  ordered_json j;
  j["delta_a"] = number(sep.delta_a);
  j["delta_b"] = number(sep.delta_b);
  j["lhs"] = fit_object(sep.lhs);
  j["rhs"] = fit_object(sep.rhs);
  return dump(j);
}

std::string properties_csv(const std::vector<PropertyOutcome>& outcomes) {
  std::ostringstream out;
  out << "name,passed,worst,threshold,witness\n";
  for (const auto& o : outcomes) {
    std::string w = o.witness;
    for (auto& ch : w) {
      if (ch == ',' || ch == '"') ch = ';';
    }
    out << o.name << ',' << (o.passed ? "true" : "false") << ',' << format_number(o.worst) << ','
        << format_number(o.threshold) << ',' << w << "\n";
  }
  return out.str();
}

std::string properties_json(const std::vector<PropertyOutcome>& outcomes) {
  auto arr = ordered_json::array();
  for (const auto& o : outcomes) {
    ordered_json j;
    j["name"] = o.name;
    j["passed"] = o.passed;
    j["worst"] = number(o.worst);
    j["threshold"] = number(o.threshold);
    j["witness"] = o.witness;
    arr.push_back(std::move(j));
  }
  return dump(arr);
}

}  // namespace mixsmooth
