#pragma once

#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "asymptotics.hpp"
#include "oracle.hpp"
#include "json.hpp"

namespace gdseries {

inline constexpr const char* kVersion = "1.0.0";

using json = nlohmann::ordered_json;

struct RunConfig {
  std::string command;
  std::string family;
  Rational alpha = 2;
  int root_degree = 24;
  int order = 10;
  int beta = 0;  // 0: the family's natural grade
  long n = 20;
  int terms = 0;
  std::vector<std::string> marks;
  bool marks_set = false;
  std::string format = "table";
  std::string scope = "all";
  int max_n = 0;
  bool unsafe_n = false;
  bool approx = false;
};

inline json to_json(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  j["family"] = c.family;
  j["alpha"] = to_string(c.alpha);
  j["root_degree"] = c.root_degree;
  j["order"] = c.order;
  j["beta"] = c.beta;
  j["n"] = c.n;
  j["terms"] = c.terms;
  j["marks"] = c.marks_set ? json(c.marks) : json(nullptr);
  j["format"] = c.format;
  j["scope"] = c.scope;
  j["max_n"] = c.max_n;
  j["unsafe_n"] = c.unsafe_n;
  j["approx"] = c.approx;
  return j;
}

inline RunConfig config_from_json(const json& j) {
  RunConfig c;
  c.command = j.value("command", c.command);
  c.family = j.value("family", c.family);
  c.alpha = parse_rational(j.value("alpha", std::string("2")));
  c.root_degree = j.value("root_degree", c.root_degree);
  c.order = j.value("order", c.order);
  c.beta = j.value("beta", c.beta);
  c.n = j.value("n", c.n);
  c.terms = j.value("terms", c.terms);
  if (j.contains("marks") && !j["marks"].is_null()) {
    c.marks = j["marks"].get<std::vector<std::string>>();
    c.marks_set = true;
  }
  c.format = j.value("format", c.format);
  c.scope = j.value("scope", c.scope);
  c.max_n = j.value("max_n", c.max_n);
  c.unsafe_n = j.value("unsafe_n", c.unsafe_n);
  c.approx = j.value("approx", c.approx);
  return c;
}

inline json header_json(const RunConfig& c) { return json{{"tool", "gdseries"}, {"version", kVersion}, {"config", to_json(c)}}; }

// '#'-prefixed header for line formats
inline std::string header_comment(const RunConfig& c) {
  return std::string("# gdseries ") + kVersion + " " + to_json(c).dump() + "\n";
}

inline json algnum_json(const AlgNum& a, FieldPtr f) {
  json pairs = json::array();
  AlgNum x = f ? a.with_field(f) : a;
  for (const auto& c : x.components()) pairs.push_back({c.get_num().get_str(), c.get_den().get_str()});
  json j;
  j["num_den_pairs"] = pairs;
  j["alpha"] = f ? to_string(f->alpha) : "";
  j["D"] = f ? f->root_degree : 1;
  return j;
}

inline json series_json(const std::vector<MarkedScalar>& counts, int n_from = 0) {
  json out = json::array();
  for (size_t n = static_cast<size_t>(n_from); n < counts.size(); ++n)
    out.push_back({{"n", n}, {"count", counts[n].str()}});
  return out;
}

// "n a(n)" per line; counts must be plain integers
inline std::string bfile(const std::vector<MarkedScalar>& counts, int n_from = 0) {
  std::ostringstream os;
  for (size_t n = static_cast<size_t>(n_from); n < counts.size(); ++n) {
    const MarkedScalar& c = counts[n];
    if (!c.is_constant() || !c.as_constant().is_rational() || c.as_constant().rational().get_den() != 1)
      fail(Errc::InvalidArgument, "b-file needs integer counts, a(" + std::to_string(n) + ") = " + c.str());
    os << n << " " << c.str() << "\n";
  }
  return os.str();
}

inline json coeffgf_json(const CoeffGf& c) {
  json j;
  j["alpha"] = to_string(c.field()->alpha);
  j["beta"] = c.beta();
  auto mm = c.m_min();
  j["m_min"] = mm ? json(*mm) : json(nullptr);
  j["z_order"] = c.z_order();
  json entries = json::array();
  for (const auto& [k, v] : c.table())
    for (const auto& [mono, val] : v.terms())
      entries.push_back({{"m", k.first}, {"l", k.second}, {"marks", v.exponents(mono)}, {"value", val.str()}});
  j["entries"] = entries;
  return j;
}

// rows m, columns l
inline std::string coeffgf_table(const CoeffGf& c, bool approx = false) {
  std::vector<std::vector<std::string>> cells;
  int lmax = 0;
  for (const auto& [k, v] : c.table()) lmax = std::max(lmax, k.second);
  auto mm = c.m_min();
  int m0 = mm ? std::min(*mm, 0) : 0;
  auto fmt = [&](const MarkedScalar& v) {
    if (approx && v.is_constant()) {
      std::ostringstream os;
      os << std::setprecision(10) << v.as_constant().to_double();
      return os.str();
    }
    return v.str();
  };
  std::vector<std::string> head{"m \\ l"};
  for (int l = 0; l <= lmax; ++l) head.push_back(std::to_string(l));
  cells.push_back(head);
  for (int m = m0; m <= c.z_order(); ++m) {
    std::vector<std::string> row{std::to_string(m)};
    for (int l = 0; l <= lmax; ++l) row.push_back(fmt(c.get(m, l)));
    cells.push_back(row);
  }
  std::vector<size_t> width(head.size());
  for (const auto& r : cells)
    for (size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  std::ostringstream os;
  os << "# alpha = " << to_string(c.field()->alpha) << ", beta = " << c.beta()
     << ", m_min = " << (mm ? std::to_string(*mm) : "none") << "\n";
  for (const auto& r : cells) {
    for (size_t i = 0; i < r.size(); ++i) os << (i ? "  " : "") << std::setw(static_cast<int>(width[i])) << r[i];
    os << "\n";
  }
  return os.str();
}

inline std::string error_csv(const ErrorProfile& p) {
  std::ostringstream os;
  os << "n,M,rel_error_log2\n";
  os << std::setprecision(12);
  for (const auto& c : p.cells) os << c.n << "," << c.M << "," << c.log2 << "\n";
  return os.str();
}

inline json wright_json(const WrightPoly& w) {
  json mono = json::array();
  for (size_t d = 0; d < w.coeffs.size(); ++d)
    if (!w.coeffs[d].is_zero()) mono.push_back({{"deg", d}, {"coeff", w.coeffs[d].str()}});
  return json{{"m", w.m}, {"monomials", mono}};
}

inline json histogram_json(const oracle::Histogram& h) {
  json out = json::array();
  for (const auto& [k, v] : h) out.push_back({{"key", k}, {"count", v}});
  return out;
}

}  // namespace gdseries
