#pragma once

#include <array>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "errors.hpp"

namespace gdseries::oracle {

using Count = std::uint64_t;
using Histogram = std::map<std::vector<int>, Count>;

inline void merge_into(Histogram& dst, const Histogram& src) {
  for (const auto& [k, v] : src) dst[k] += v;
}

// GDSERIES_THREADS caps the worker count
inline unsigned worker_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("GDSERIES_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(std::min<long>(v, 256));
  }
  return hw;
}

// Splits [0, total) into contiguous ranges; partial results are merged in range order.
template <class Acc, class Fn>
Acc parallel_ranges(std::uint64_t total, Fn&& fn) {
  unsigned t = static_cast<unsigned>(std::min<std::uint64_t>(worker_count(), std::max<std::uint64_t>(total, 1)));
  std::vector<Acc> parts(t);
  std::vector<std::thread> pool;
  std::uint64_t chunk = (total + t - 1) / t;
  for (unsigned i = 0; i < t; ++i) {
    std::uint64_t lo = std::min(total, chunk * i), hi = std::min(total, lo + chunk);
    if (t == 1)
      fn(lo, hi, parts[i]);
    else
      pool.emplace_back([&, i, lo, hi] { fn(lo, hi, parts[i]); });
  }
  for (auto& th : pool) th.join();
  for (unsigned i = 1; i < t; ++i) parts[0].merge(parts[i]);
  return parts[0];
}

struct Limits {
  bool unsafe = false;
};

inline void check_size(const char* what, int n, int cap, int unsafe_cap, Limits lim) {
  if (n < 0) fail(Errc::InvalidArgument, "negative size");
  int c = lim.unsafe ? unsafe_cap : cap;
  if (n > c)
    fail(Errc::SizeLimit, std::string(what) + " enumeration capped at n = " + std::to_string(c) +
                              (lim.unsafe ? "" : " (--unsafe-n raises it)"));
}

// Tarjan over bitmask adjacency; comp[v] numbers components in reverse topological order.
inline int scc_bitmask(const std::uint32_t* adj, int n, int* comp) {
  int index[32], low[32], stack[32], sp = 0, counter = 0, ncomp = 0;
  bool on[32] = {};
  for (int v = 0; v < n; ++v) index[v] = -1;
  struct Frame {
    int v;
    std::uint32_t rest;
  };
  Frame call[32];
  for (int root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    int depth = 0;
    call[depth++] = {root, adj[root]};
    index[root] = low[root] = counter++;
    stack[sp++] = root;
    on[root] = true;
    while (depth) {
      Frame& fr = call[depth - 1];
      if (fr.rest) {
        int w = __builtin_ctz(fr.rest);
        fr.rest &= fr.rest - 1;
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack[sp++] = w;
          on[w] = true;
          call[depth++] = {w, adj[w]};
        } else if (on[w]) {
          low[fr.v] = std::min(low[fr.v], index[w]);
        }
        continue;
      }
      int v = fr.v;
      --depth;
      if (depth) low[call[depth - 1].v] = std::min(low[call[depth - 1].v], low[v]);
      if (low[v] == index[v]) {
        int w;
        do {
          w = stack[--sp];
          on[w] = false;
          comp[w] = ncomp;
        } while (w != v);
        ++ncomp;
      }
    }
  }
  return ncomp;
}

// Per-component flags: has incoming / outgoing edges from / to other components.
struct ComponentShape {
  int count = 0;
  std::uint32_t mask[32] = {};
  bool in[32] = {};
  bool out[32] = {};
};

inline ComponentShape component_shape(const std::uint32_t* adj, int n) {
  ComponentShape s;
  int comp[32];
  s.count = scc_bitmask(adj, n, comp);
  for (int v = 0; v < n; ++v) s.mask[comp[v]] |= 1u << v;
  for (int v = 0; v < n; ++v) {
    std::uint32_t foreign = adj[v] & ~s.mask[comp[v]];
    if (foreign) {
      s.out[comp[v]] = true;
      for (std::uint32_t f = foreign; f; f &= f - 1) s.in[comp[__builtin_ctz(f)]] = true;
    }
  }
  return s;
}

struct GraphCounts {
  int n = 0;
  Count total = 0, connected = 0;
  Histogram by_components;  // {k} -> graphs with k components

  void merge(const GraphCounts& o) {
    total += o.total;
    connected += o.connected;
    merge_into(by_components, o.by_components);
  }
};

inline GraphCounts enumerate_graphs(int n, Limits lim = {}) {
  check_size("graph", n, 6, 8, lim);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  std::uint64_t total = 1ULL << edges.size();
  GraphCounts out = parallel_ranges<GraphCounts>(total, [&](std::uint64_t lo, std::uint64_t hi, GraphCounts& acc) {
    std::vector<Count> hist(static_cast<size_t>(n + 1));
    for (std::uint64_t mask = lo; mask < hi; ++mask) {
      int parent[32];
      for (int v = 0; v < n; ++v) parent[v] = v;
      auto find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
      };
      int comps = n;
      for (size_t e = 0; e < edges.size(); ++e)
        if (mask >> e & 1) {
          int a = find(edges[e].first), b = find(edges[e].second);
          if (a != b) parent[a] = b, --comps;
        }
      ++hist[static_cast<size_t>(comps)];
    }
    for (int k = 0; k <= n; ++k)
      if (hist[static_cast<size_t>(k)]) acc.by_components[{k}] += hist[static_cast<size_t>(k)];
    acc.total += hi - lo;
    if (n >= 1) acc.connected += hist[1];
  });
  out.n = n;
  return out;
}

struct DigraphCounts {
  int n = 0;
  Count total = 0, strongly_connected = 0, semi_strong = 0, dag = 0;
  Histogram by_scc;                // {k}
  Histogram semi_strong_by_scc;    // {k}
  Histogram by_source_like;        // {source-like components, k}; isolated ones count as source-like
  Histogram by_type;               // {purely source-like, purely sink-like, isolated, k}

  void merge(const DigraphCounts& o) {
    total += o.total;
    strongly_connected += o.strongly_connected;
    semi_strong += o.semi_strong;
    dag += o.dag;
    merge_into(by_scc, o.by_scc);
    merge_into(semi_strong_by_scc, o.semi_strong_by_scc);
    merge_into(by_source_like, o.by_source_like);
    merge_into(by_type, o.by_type);
  }
};

inline DigraphCounts enumerate_digraphs(int n, Limits lim = {}) {
  check_size("digraph", n, 5, 6, lim);
  std::vector<std::pair<int, int>> arcs;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) arcs.emplace_back(i, j);
  std::uint64_t total = 1ULL << arcs.size();
  DigraphCounts out = parallel_ranges<DigraphCounts>(total, [&](std::uint64_t lo, std::uint64_t hi, DigraphCounts& acc) {
    std::map<std::array<int, 4>, Count> types;
    std::map<std::array<int, 2>, Count> sources;
    std::vector<Count> scc(static_cast<size_t>(n + 1)), semi(static_cast<size_t>(n + 1));
    for (std::uint64_t mask = lo; mask < hi; ++mask) {
      std::uint32_t adj[32] = {};
      for (std::uint64_t m = mask; m; m &= m - 1) {
        const auto& a = arcs[static_cast<size_t>(__builtin_ctzll(m))];
        adj[a.first] |= 1u << a.second;
      }
      ComponentShape s = component_shape(adj, n);
      int src = 0, snk = 0, iso = 0;
      for (int c = 0; c < s.count; ++c) {
        if (!s.in[c] && !s.out[c])
          ++iso;
        else if (!s.in[c])
          ++src;
        else if (!s.out[c])
          ++snk;
      }
      ++scc[static_cast<size_t>(s.count)];
      if (iso == s.count) ++semi[static_cast<size_t>(s.count)];
      ++types[{src, snk, iso, s.count}];
      ++sources[{src + iso, s.count}];
    }
    for (int k = 0; k <= n; ++k) {
      if (scc[static_cast<size_t>(k)]) acc.by_scc[{k}] += scc[static_cast<size_t>(k)];
      if (semi[static_cast<size_t>(k)]) acc.semi_strong_by_scc[{k}] += semi[static_cast<size_t>(k)];
      acc.semi_strong += semi[static_cast<size_t>(k)];
    }
    for (const auto& [k, v] : types) acc.by_type[{k[0], k[1], k[2], k[3]}] += v;
    for (const auto& [k, v] : sources) acc.by_source_like[{k[0], k[1]}] += v;
    acc.total += hi - lo;
    if (n >= 1) acc.strongly_connected += scc[1];
    acc.dag += scc[static_cast<size_t>(n)];
  });
  out.n = n;
  return out;
}

struct TournamentCounts {
  int n = 0;
  Count total = 0, irreducible = 0;
  Histogram by_parts;  // {k}

  void merge(const TournamentCounts& o) {
    total += o.total;
    irreducible += o.irreducible;
    merge_into(by_parts, o.by_parts);
  }
};

inline TournamentCounts enumerate_tournaments(int n, Limits lim = {}) {
  check_size("tournament", n, 6, 8, lim);
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::uint64_t total = 1ULL << pairs.size();
  TournamentCounts out =
      parallel_ranges<TournamentCounts>(total, [&](std::uint64_t lo, std::uint64_t hi, TournamentCounts& acc) {
        std::vector<Count> parts(static_cast<size_t>(n + 1));
        for (std::uint64_t mask = lo; mask < hi; ++mask) {
          std::uint32_t adj[32] = {};
          for (size_t e = 0; e < pairs.size(); ++e) {
            auto [i, j] = pairs[e];
            if (mask >> e & 1)
              adj[i] |= 1u << j;
            else
              adj[j] |= 1u << i;
          }
          int comp[32];
          ++parts[static_cast<size_t>(scc_bitmask(adj, n, comp))];
        }
        for (int k = 0; k <= n; ++k)
          if (parts[static_cast<size_t>(k)]) acc.by_parts[{k}] += parts[static_cast<size_t>(k)];
        acc.total += hi - lo;
        if (n >= 1) acc.irreducible += parts[1];
      });
  out.n = n;
  return out;
}

// full: every clause on two distinct variables, 4 C(n,2) = 2n(n-1) of them;
// half: one clause (x_i or not x_j) per ordered pair, n(n-1) of them
enum class Universe { Half, Full };

inline const char* universe_name(Universe u) { return u == Universe::Full ? "full" : "half"; }

struct CnfCounts {
  int n = 0;
  Universe universe = Universe::Full;
  Count total = 0, satisfiable = 0, strongly_connected = 0;
  Histogram by_contradictory;     // {contradictory components}
  Histogram by_types_pairs;       // {contradictory, ordinary component pairs}
  Histogram by_types_raw;         // {contradictory, ordinary components}

  void merge(const CnfCounts& o) {
    total += o.total;
    satisfiable += o.satisfiable;
    strongly_connected += o.strongly_connected;
    merge_into(by_contradictory, o.by_contradictory);
    merge_into(by_types_pairs, o.by_types_pairs);
    merge_into(by_types_raw, o.by_types_raw);
  }
};

// literal 2i is x_i, 2i+1 is its negation
inline std::vector<std::pair<int, int>> clause_universe(int n, Universe u) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (u == Universe::Half) {
        out.emplace_back(2 * i, 2 * j + 1);
      } else if (i < j) {
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) out.emplace_back(2 * i + a, 2 * j + b);
      }
    }
  return out;
}

inline CnfCounts enumerate_2cnf(int n, Universe u, Limits lim = {}) {
  check_size("2-CNF", n, 3, 4, lim);
  auto clauses = clause_universe(n, u);
  std::uint64_t total = 1ULL << clauses.size();
  CnfCounts out = parallel_ranges<CnfCounts>(total, [&](std::uint64_t lo, std::uint64_t hi, CnfCounts& acc) {
    std::map<std::array<int, 2>, Count> raw;
    for (std::uint64_t mask = lo; mask < hi; ++mask) {
      std::uint32_t adj[32] = {};
      for (std::uint64_t m = mask; m; m &= m - 1) {
        auto [a, b] = clauses[static_cast<size_t>(__builtin_ctzll(m))];
        adj[a ^ 1] |= 1u << b;  // not a -> b
        adj[b ^ 1] |= 1u << a;  // not b -> a
      }
      int comp[32];
      int k = scc_bitmask(adj, 2 * n, comp);
      std::vector<bool> contra(static_cast<size_t>(k));
      for (int i = 0; i < n; ++i)
        if (comp[2 * i] == comp[2 * i + 1]) contra[static_cast<size_t>(comp[2 * i])] = true;
      int c = 0;
      for (bool x : contra) c += x;
      ++raw[{c, k - c}];
      if (n >= 1 && k == 1) ++acc.strongly_connected;
    }
    for (const auto& [key, v] : raw) {
      acc.by_contradictory[{key[0]}] += v;
      acc.by_types_raw[{key[0], key[1]}] += v;
      acc.by_types_pairs[{key[0], key[1] / 2}] += v;
      if (key[0] == 0) acc.satisfiable += v;
    }
    acc.total += hi - lo;
  });
  out.n = n;
  out.universe = u;
  return out;
}

}  // namespace gdseries::oracle
