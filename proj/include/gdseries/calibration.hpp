#pragma once

#include <string>
#include <vector>

#include "families.hpp"
#include "oracle.hpp"

namespace gdseries {

struct CalibrationRow {
  int n;
  Integer series;
  oracle::Count half, full;
};

struct CalibrationReport {
  oracle::Universe chosen = oracle::Universe::Full;
  std::vector<CalibrationRow> rows;
};

// Picks the clause universe whose satisfiable counts equal the SAT series for n = 1..n_max.
inline CalibrationReport calibrate_sat_model(int n_max = 3, oracle::Limits lim = {}) {
  FieldPtr f = make_field(2);
  Evaluator ev(f);
  auto series = integer_counts(build_family("sat", f), n_max, ev);
  CalibrationReport rep;
  bool half_ok = true, full_ok = true;
  for (int n = 1; n <= n_max; ++n) {
    auto h = oracle::enumerate_2cnf(n, oracle::Universe::Half, lim);
    auto fu = oracle::enumerate_2cnf(n, oracle::Universe::Full, lim);
    const Integer& s = series[static_cast<size_t>(n)];
    rep.rows.push_back({n, s, h.satisfiable, fu.satisfiable});
    half_ok = half_ok && s == Integer(std::to_string(h.satisfiable));
    full_ok = full_ok && s == Integer(std::to_string(fu.satisfiable));
  }
  if (half_ok && full_ok) fail(Errc::CalibrationAmbiguous, "both clause universes reproduce the SAT series");
  if (!half_ok && !full_ok) fail(Errc::CalibrationFailed, "neither clause universe reproduces the SAT series");
  rep.chosen = full_ok ? oracle::Universe::Full : oracle::Universe::Half;
  return rep;
}

}  // namespace gdseries
