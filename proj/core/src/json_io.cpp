#include <cstdio>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "ultrahardy/inequality_lab.hpp"
#include "ultrahardy/sphere.hpp"
#include "ultrahardy/transform.hpp"

// Emission is hand-rolled so the byte output is deterministic across
// platforms; parsing goes through nlohmann::json.

namespace ultrahardy {

namespace {

void put(std::string& s, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  s += buf;
}

void put(std::string& s, int v) {
  s += std::to_string(v);
}

void put(std::string& s, bool v) { s += v ? "true" : "false"; }

void put_array(std::string& s, const std::vector<double>& a) {
  s += '[';
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) s += ',';
    put(s, a[i]);
  }
  s += ']';
}

nlohmann::json parse(const std::string& text, const char* who) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string(who) + ": " + e.what());
  }
}

}  // namespace

std::string to_json(const CoefficientVector& c) {
  std::string s = "{\"lambda\":";
  put(s, c.lambda);
  s += ",\"coeffs\":";
  put_array(s, c.coeffs);
  s += '}';
  return s;
}

CoefficientVector coefficient_vector_from_json(const std::string& text) {
  const auto j = parse(text, "coefficient_vector_from_json");
  try {
    CoefficientVector c;
    c.lambda = j.at("lambda").get<double>();
    c.coeffs = j.at("coeffs").get<std::vector<double>>();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("coefficient_vector_from_json: ") +
                                e.what());
  }
}

std::string to_json(const HardyReport& r) {
  std::string s = "{\"lambda\":";
  put(s, r.lambda);
  s += ",\"sigma\":";
  put(s, r.sigma);
  s += ",\"N\":";
  put(s, r.N);
  s += ",\"lhs\":";
  put(s, r.lhs);
  s += ",\"rhs\":";
  put(s, r.rhs);
  s += ",\"deficit\":";
  put(s, r.deficit);
  s += ",\"has_gsr\":";
  put(s, r.has_gsr);
  s += ",\"gsr_value\":";
  put(s, r.gsr_value);
  s += ",\"pass\":";
  put(s, r.pass);
  s += ",\"deficit_rel_tol\":";
  put(s, r.deficit_rel_tol);
  s += ",\"gsr_rel_tol\":";
  put(s, r.gsr_rel_tol);
  s += '}';
  return s;
}

HardyReport hardy_report_from_json(const std::string& text) {
  const auto j = parse(text, "hardy_report_from_json");
  try {
    HardyReport d;
    HardyReport r;
    r.lambda = j.at("lambda").get<double>();
    r.sigma = j.at("sigma").get<double>();
    r.N = j.value("N", d.N);
    r.lhs = j.at("lhs").get<double>();
    r.rhs = j.at("rhs").get<double>();
    r.deficit = j.value("deficit", r.rhs - r.lhs);
    r.has_gsr = j.value("has_gsr", d.has_gsr);
    r.gsr_value = j.value("gsr_value", d.gsr_value);
    r.pass = j.value("pass", d.pass);
    r.deficit_rel_tol = j.value("deficit_rel_tol", d.deficit_rel_tol);
    r.gsr_rel_tol = j.value("gsr_rel_tol", d.gsr_rel_tol);
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("hardy_report_from_json: ") +
                                e.what());
  }
}

std::string to_json(const SphereField& f) {
  std::string s = "{\"d\":";
  put(s, f.d);
  s += ",\"max_j\":";
  put(s, f.max_j);
  s += ",\"channels\":[";
  for (std::size_t i = 0; i < f.channels.size(); ++i) {
    const SphereChannel& ch = f.channels[i];
    if (i) s += ',';
    s += "{\"j\":";
    put(s, ch.j);
    s += ",\"k\":";
    put(s, ch.k);
    s += ",\"lambda_j\":";
    put(s, ch.lambda_j);
    s += ",\"coeffs\":";
    put_array(s, ch.coeffs.coeffs);
    s += '}';
  }
  s += "]}";
  return s;
}

SphereField sphere_field_from_json(const std::string& text) {
  const auto j = parse(text, "sphere_field_from_json");
  try {
    SphereField f;
    f.d = j.at("d").get<int>();
    f.max_j = j.at("max_j").get<int>();
    for (const auto& jc : j.at("channels")) {
      SphereChannel ch;
      ch.j = jc.at("j").get<int>();
      ch.k = jc.at("k").get<int>();
      ch.lambda_j = jc.at("lambda_j").get<double>();
      ch.coeffs.lambda = ch.lambda_j;
      ch.coeffs.coeffs = jc.at("coeffs").get<std::vector<double>>();
      f.channels.push_back(std::move(ch));
    }
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("sphere_field_from_json: ") +
                                e.what());
  }
}

}  // namespace ultrahardy
