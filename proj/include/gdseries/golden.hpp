#pragma once

#include <vector>

#include "rational.hpp"

namespace gdseries::golden {

// irreducible tournaments, k = 1..10
inline const std::vector<const char*> it = {"1",       "0",        "2",         "24",          "544",
                                            "22320",   "1677488",  "236522496", "64026088576", "33832910196480"};
// tournaments with exactly two irreducible parts, k = 1..10
inline const std::vector<const char*> it2 = {"0",      "2",       "0",        "16",         "240",
                                             "6608",   "315840",  "27001984", "4268194560", "1281626527232"};
// semi-strong digraphs, k = 0..8
inline const std::vector<const char*> ssd = {"1",         "1",         "2",
                                             "22",        "1688",      "573496",
                                             "738218192", "3528260038192", "63547436065854848"};
// cg°_{k,k}, k = 0..7
inline const std::vector<const char*> cg_diag = {"1",     "-2",          "0",         "-64/3",
                                                 "-1024", "-2228224/15", "-65011712", "-28143578513408/315"};
// it°_{k,k}, k = 0..7
inline const std::vector<const char*> it_diag = {"1",          "-4",          "8",
                                                 "-128/3",     "-4096/3",     "-3473408/15",
                                                 "-4984930304/45", "-50988241125376/315"};
// scd°_{m,l}, rows m = 0..6, entries from l = 0
inline const std::vector<std::vector<const char*>> scd_table = {
    {"1"},
    {"0", "-4"},
    {"0", "4", "8"},
    {"0", "0", "-32", "-128/3"},
    {"0", "0", "64", "128", "-4096/3"},
    {"0", "0", "0", "-1024", "-4096/3", "-3473408/15"},
    {"0", "0", "0", "45056/3", "8192", "-262144/3", "-4984930304/45"},
};

// w_m(n) = c * prod of factors, each factor listed from the constant term up
struct FactoredPoly {
  const char* c;
  std::vector<std::vector<long>> factors;
};

inline const std::vector<FactoredPoly> wright = {
    {"1", {}},
    {"-4", {{0, 1}}},
    {"4", {{0, 1}, {-1, 2}}},
    {"-32/3", {{0, 1}, {-1, 1}, {-5, 4}}},
    {"-64/3", {{0, 1}, {-1, 1}, {393, -326, 64}}},
    {"-1024/15", {{0, 1}, {-1, 1}, {-2, 1}, {40659, -23724, 3392}}},
    {"-4096/45", {{0, 1}, {-1, 1}, {-2, 1}, {-73009815, 57193318, -14603328, 1217024}}},
};

inline std::vector<Rational> expand(const FactoredPoly& p) {
  std::vector<Rational> out{parse_rational(p.c)};
  for (const auto& f : p.factors) {
    std::vector<Rational> next(out.size() + f.size() - 1);
    for (size_t i = 0; i < out.size(); ++i)
      for (size_t j = 0; j < f.size(); ++j) next[i + j] += out[i] * f[j];
    out = next;
  }
  return out;
}

}  // namespace gdseries::golden
