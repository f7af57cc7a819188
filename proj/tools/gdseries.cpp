#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gdseries/gdseries.hpp"

using namespace gdseries;

namespace {

struct Flags {
  std::string config_file, out_file, alpha;
  int root_degree = 0, order = 0, beta = 0, terms = 0, max_n = 0;
  long n = 0;
  std::vector<std::string> marks;
  std::string format, scope, family;
  bool unsafe_n = false, approx = false;
};

struct Options {
  CLI::Option *alpha, *root_degree, *order, *beta, *n, *terms, *marks, *format, *scope, *max_n, *unsafe_n, *approx,
      *family;
};

Options add_common(CLI::App* app, Flags& f) {
  Options o{};
  o.alpha = app->add_option("--alpha", f.alpha, "edge weight alpha > 1, as a fraction (default 2)");
  o.root_degree = app->add_option("--root-degree", f.root_degree, "D in Q(alpha^(1/D)) (default 24)");
  o.order = app->add_option("--order", f.order, "series or table order");
  o.beta = app->add_option("--beta", f.beta, "transfer grade (default: the family's grade)");
  o.n = app->add_option("--n", f.n, "size parameter");
  o.terms = app->add_option("--terms", f.terms, "number of expansion terms M");
  o.marks = app->add_option("--marks", f.marks, "marks to keep; the others are set to 1");
  o.format = app->add_option("--format", f.format, "json, csv, bfile or table")
                 ->check(CLI::IsMember({"json", "csv", "bfile", "table"}));
  o.scope = nullptr;
  o.max_n = nullptr;
  o.unsafe_n = app->add_flag("--unsafe-n", f.unsafe_n, "lift the enumeration size caps");
  o.approx = app->add_flag("--approx", f.approx, "print floating point approximations");
  app->add_option("--config", f.config_file, "read a run config written by an earlier run");
  app->add_option("--out", f.out_file, "write output to FILE");
  return o;
}

RunConfig resolve(const std::string& command, const Flags& f, const Options& o, RunConfig defaults) {
  RunConfig c = defaults;
  if (!f.config_file.empty()) {
    std::ifstream in(f.config_file);
    if (!in) fail(Errc::InvalidArgument, "cannot read config " + f.config_file);
    json j = json::parse(in);
    c = config_from_json(j.contains("config") ? j["config"] : j);
  }
  c.command = command;
  if (o.family && o.family->count()) c.family = f.family;
  if (o.alpha->count()) c.alpha = parse_rational(f.alpha);
  if (o.root_degree->count()) c.root_degree = f.root_degree;
  if (o.order->count()) c.order = f.order;
  if (o.beta->count()) c.beta = f.beta;
  if (o.n->count()) c.n = f.n;
  if (o.terms->count()) c.terms = f.terms;
  if (o.marks->count()) {
    c.marks = f.marks;
    c.marks_set = true;
  }
  if (o.format->count()) c.format = f.format;
  if (o.scope && o.scope->count()) c.scope = f.scope;
  if (o.max_n && o.max_n->count()) c.max_n = f.max_n;
  if (o.unsafe_n->count()) c.unsafe_n = true;
  if (o.approx->count()) c.approx = true;
  if (c.order < 0 || c.n < 0 || c.terms < 0 || c.max_n < 0) fail(Errc::InvalidArgument, "sizes must be nonnegative");
  return c;
}

std::string pad(const std::string& s, size_t w) { return s.size() >= w ? s : std::string(w - s.size(), ' ') + s; }

// "-3*2^5.25" style approximation that never overflows a double
std::string approx_str(const AlgNum& a) {
  if (a.is_zero()) return "0";
  if (!a.is_rational()) {
    std::ostringstream os;
    os << std::setprecision(10) << a.to_double();
    return os.str();
  }
  const Rational& r = a.rational();
  double l = log2_abs(r);
  if (std::abs(l) < 60) {
    std::ostringstream os;
    os << std::setprecision(12) << r.get_d();
    return os.str();
  }
  std::ostringstream os;
  os << (r < 0 ? "-" : "") << "2^" << std::fixed << std::setprecision(6) << l;
  return os.str();
}

FamilySpec family_for(const RunConfig& c, FieldPtr f, bool keep_all_by_default) {
  FamilySpec spec = build_family(c.family, f);
  if (c.marks_set) return restrict_marks(spec, c.marks);
  return keep_all_by_default ? spec : restrict_marks(spec, {});
}

int beta_for(const RunConfig& c, const FamilySpec& spec) { return c.beta > 0 ? c.beta : std::max(spec.grade, 1); }

std::string cmd_seq(const RunConfig& c) {
  FieldPtr f = make_field(c.alpha, c.root_degree);
  FamilySpec spec = family_for(c, f, false);
  Evaluator ev(f);
  auto counts = family_counts(spec, c.order, ev);
  std::ostringstream os;
  if (c.format == "json") {
    json j = header_json(c);
    j["family"] = spec.name;
    j["kind"] = kind_name(spec.kind);
    j["marks"] = spec.vars && c.marks_set ? json(c.marks) : json::array();
    j["counts"] = series_json(counts);
    os << j.dump(2) << "\n";
    return os.str();
  }
  os << header_comment(c);
  if (c.format == "bfile") {
    os << bfile(counts);
  } else if (c.format == "csv") {
    os << "n,count\n";
    for (size_t n = 0; n < counts.size(); ++n) os << n << "," << counts[n].str() << "\n";
  } else {
    for (size_t n = 0; n < counts.size(); ++n) {
      std::string v = c.approx && counts[n].is_constant() ? approx_str(counts[n].as_constant()) : counts[n].str();
      os << pad(std::to_string(n), 3) << "  " << v << "\n";
    }
  }
  return os.str();
}

std::string cmd_coeffs(const RunConfig& c) {
  FieldPtr f = make_field(c.alpha, c.root_degree);
  FamilySpec spec = family_for(c, f, true);
  Evaluator ev(f);
  Transfer tr(ev);
  CoeffGf t = tr(spec.formula, beta_for(c, spec), c.order);
  std::ostringstream os;
  if (c.format == "json") {
    json j = header_json(c);
    j["family"] = spec.name;
    j["table"] = coeffgf_json(t);
    os << j.dump(2) << "\n";
    return os.str();
  }
  os << header_comment(c);
  if (c.format == "csv") {
    os << "m,l,value\n";
    for (const auto& [k, v] : t.table()) os << k.first << "," << k.second << ",\"" << v.str() << "\"\n";
  } else if (c.format == "bfile") {
    fail(Errc::InvalidArgument, "coeffs has no b-file form");
  } else {
    os << coeffgf_table(t, c.approx);
  }
  return os.str();
}

std::string cmd_wright(const RunConfig& c) {
  FieldPtr f = make_field(c.alpha, c.root_degree);
  FamilySpec spec = family_for(c, f, false);
  Evaluator ev(f);
  Transfer tr(ev);
  CoeffGf t = tr(spec.formula, beta_for(c, spec), c.order);
  auto ws = wright_polynomials(t, c.order);
  std::ostringstream os;
  if (c.format == "json") {
    json j = header_json(c);
    j["family"] = spec.name;
    json arr = json::array();
    for (const auto& w : ws) arr.push_back(wright_json(w));
    j["polynomials"] = arr;
    os << j.dump(2) << "\n";
    return os.str();
  }
  os << header_comment(c);
  if (c.format == "csv") {
    os << "m,degree,coeff\n";
    for (const auto& w : ws)
      for (size_t d = 0; d < w.coeffs.size(); ++d)
        if (!w.coeffs[d].is_zero()) os << w.m << "," << d << "," << w.coeffs[d].str() << "\n";
  } else {
    for (const auto& w : ws) os << "w_" << w.m << "(n) = " << w.str() << "\n";
  }
  return os.str();
}

std::string cmd_expand(const RunConfig& c) {
  FieldPtr f = make_field(c.alpha, c.root_degree);
  FamilySpec spec = family_for(c, f, false);
  Evaluator ev(f);
  Transfer tr(ev);
  CoeffGf t = tr(spec.formula, beta_for(c, spec), c.terms);
  AlgNum truth = expansion_truth(spec, c.n, ev)[static_cast<size_t>(c.n)];
  ExpansionEstimate est = partial_sum(t, c.n, c.terms, truth);
  std::vector<std::pair<int, double>> errs;  // error after each cutoff
  auto mm = t.m_min();
  if (mm)
    for (int M = *mm; M <= c.terms; ++M) errs.emplace_back(M, partial_sum(t, c.n, M, truth).rel_error_log2());
  std::ostringstream os;
  auto relative = [&](const AlgNum& x) -> std::string {
    if (truth.is_zero() || x.is_zero()) return "0";
    std::ostringstream r;
    r << std::setprecision(12) << Rational(x.rational() / truth.rational()).get_d();
    return r.str();
  };
  auto err_str = [&](const ExpansionEstimate& e) -> std::string {
    if (!e.rel_error) return "undefined";
    if (*e.rel_error == 0) return "exact";
    std::ostringstream r;
    r << std::setprecision(8) << e.rel_error_log2();
    return r.str();
  };
  if (c.format == "json") {
    json j = header_json(c);
    j["family"] = spec.name;
    j["beta"] = t.beta();
    j["m_min"] = mm ? json(*mm) : json(nullptr);
    j["estimate"] = c.approx ? approx_str(est.value) : est.value.str();
    j["truth"] = c.approx ? approx_str(truth) : truth.str();
    j["rel_error"] = est.rel_error ? json(to_string(*est.rel_error)) : json(nullptr);
    j["rel_error_log2"] = err_str(est);
    json terms = json::array();
    for (const auto& [m, v] : est.contributions)
      terms.push_back({{"m", m}, {"term", c.approx ? approx_str(v) : v.str()}, {"term_over_truth", relative(v)}});
    j["terms"] = terms;
    json cut = json::array();
    for (const auto& [M, e] : errs) cut.push_back({{"M", M}, {"rel_error_log2", e}});
    j["error_by_cutoff"] = cut;
    os << j.dump(2) << "\n";
    return os.str();
  }
  os << header_comment(c);
  if (c.format == "csv") {
    os << "m,term_over_truth,rel_error_log2_after\n";
    for (size_t i = 0; i < est.contributions.size(); ++i)
      os << est.contributions[i].first << "," << relative(est.contributions[i].second) << ","
         << std::setprecision(8) << errs[i].second << "\n";
    return os.str();
  }
  os << spec.name << " at n = " << c.n << ", beta = " << t.beta() << ", M = " << c.terms << "\n";
  os << "estimate        " << approx_str(est.value) << "\n";
  os << "truth           " << approx_str(truth) << "\n";
  os << "log2 rel error  " << err_str(est) << "\n";
  os << "  m  term/truth            log2 rel error after m\n";
  for (size_t i = 0; i < est.contributions.size(); ++i)
    os << pad(std::to_string(est.contributions[i].first), 3) << "  " << std::left << std::setw(20)
       << relative(est.contributions[i].second) << std::right << "  " << std::setprecision(8) << errs[i].second
       << "\n";
  return os.str();
}

std::string cmd_oracle(const RunConfig& c) {
  oracle::Limits lim{c.unsafe_n};
  int n = static_cast<int>(c.n);
  json j = header_json(c);
  json body;
  std::vector<std::pair<std::string, std::string>> rows;
  auto num = [](oracle::Count v) { return std::to_string(v); };
  auto hist_rows = [&](const std::string& label, const oracle::Histogram& h) {
    for (const auto& [k, v] : h) {
      std::string key;
      for (size_t i = 0; i < k.size(); ++i) key += (i ? "," : "") + std::to_string(k[i]);
      rows.emplace_back(label + "[" + key + "]", num(v));
    }
  };
  if (c.family == "graphs") {
    auto g = oracle::enumerate_graphs(n, lim);
    body = {{"total", g.total}, {"connected", g.connected}, {"by_components", histogram_json(g.by_components)}};
    rows = {{"total", num(g.total)}, {"connected", num(g.connected)}};
    hist_rows("by_components", g.by_components);
  } else if (c.family == "digraphs") {
    auto d = oracle::enumerate_digraphs(n, lim);
    body = {{"total", d.total},
            {"strongly_connected", d.strongly_connected},
            {"semi_strong", d.semi_strong},
            {"dag", d.dag},
            {"by_scc", histogram_json(d.by_scc)},
            {"semi_strong_by_scc", histogram_json(d.semi_strong_by_scc)},
            {"by_source_like", histogram_json(d.by_source_like)},
            {"by_type", histogram_json(d.by_type)}};
    rows = {{"total", num(d.total)},
            {"strongly_connected", num(d.strongly_connected)},
            {"semi_strong", num(d.semi_strong)},
            {"dag", num(d.dag)}};
    hist_rows("by_scc", d.by_scc);
    hist_rows("by_source_like", d.by_source_like);
    hist_rows("by_type", d.by_type);
  } else if (c.family == "tournaments") {
    auto t = oracle::enumerate_tournaments(n, lim);
    body = {{"total", t.total}, {"irreducible", t.irreducible}, {"by_parts", histogram_json(t.by_parts)}};
    rows = {{"total", num(t.total)}, {"irreducible", num(t.irreducible)}};
    hist_rows("by_parts", t.by_parts);
  } else if (c.family == "2cnf") {
    auto u = calibrate_sat_model(std::min(n, 3), lim).chosen;
    auto s = oracle::enumerate_2cnf(n, u, lim);
    body = {{"universe", oracle::universe_name(u)},
            {"total", s.total},
            {"satisfiable", s.satisfiable},
            {"strongly_connected", s.strongly_connected},
            {"by_contradictory", histogram_json(s.by_contradictory)},
            {"by_types", histogram_json(s.by_types_pairs)}};
    rows = {{"universe", oracle::universe_name(u)},
            {"total", num(s.total)},
            {"satisfiable", num(s.satisfiable)},
            {"strongly_connected", num(s.strongly_connected)}};
    hist_rows("by_contradictory", s.by_contradictory);
    hist_rows("by_types", s.by_types_pairs);
  } else {
    fail(Errc::InvalidArgument, "oracle kinds are graphs, digraphs, tournaments and 2cnf; got '" + c.family + "'");
  }
  std::ostringstream os;
  if (c.format == "json") {
    j["oracle"] = c.family;
    j["n"] = n;
    j["counts"] = body;
    os << j.dump(2) << "\n";
    return os.str();
  }
  os << header_comment(c);
  if (c.format == "csv") os << "quantity,count\n";
  size_t w = 0;
  for (const auto& r : rows) w = std::max(w, r.first.size());
  for (const auto& [k, v] : rows) {
    if (c.format == "csv")
      os << "\"" << k << "\"," << v << "\n";
    else
      os << std::left << std::setw(static_cast<int>(w)) << k << std::right << "  " << v << "\n";
  }
  return os.str();
}

std::string cmd_calibrate(const RunConfig& c) {
  auto rep = calibrate_sat_model(c.max_n > 0 ? c.max_n : 3, oracle::Limits{c.unsafe_n});
  std::ostringstream os;
  if (c.format == "json") {
    json j = header_json(c);
    j["chosen"] = oracle::universe_name(rep.chosen);
    json rows = json::array();
    for (const auto& r : rep.rows)
      rows.push_back({{"n", r.n}, {"series", r.series.get_str()}, {"half", r.half}, {"full", r.full}});
    j["rows"] = rows;
    os << j.dump(2) << "\n";
    return os.str();
  }
  os << header_comment(c);
  os << (c.format == "csv" ? "n,series,half,full\n" : "  n  series      half      full\n");
  for (const auto& r : rep.rows) {
    if (c.format == "csv")
      os << r.n << "," << r.series.get_str() << "," << r.half << "," << r.full << "\n";
    else
      os << pad(std::to_string(r.n), 3) << pad(r.series.get_str(), 8) << pad(std::to_string(r.half), 10)
         << pad(std::to_string(r.full), 10) << "\n";
  }
  os << "chosen universe: " << oracle::universe_name(rep.chosen) << "\n";
  return os.str();
}

std::string cmd_verify(const RunConfig& c, bool& ok) {
  verify::Report rep;
  bool all = c.scope == "all";
  if (all || c.scope == "appendix") verify::appendix_suite(rep);
  if (all || c.scope == "oracle") verify::oracle_suite(rep, c.max_n > 0 ? c.max_n : 5, oracle::Limits{c.unsafe_n});
  if (all || c.scope == "rules") {
    std::vector<std::string> only;
    if (!c.family.empty()) only.push_back(c.family);
    verify::rules_suite(rep, c.order, only);
  }
  ok = rep.ok();
  std::ostringstream os;
  if (c.format == "json") {
    json j = header_json(c);
    j["pass"] = ok;
    j["checks"] = rep.to_json();
    os << j.dump(2) << "\n";
    return os.str();
  }
  os << header_comment(c);
  if (c.format == "csv") os << "suite,check,pass\n";
  for (const auto& r : rep.checks) {
    if (c.format == "csv") {
      os << r.suite << ",\"" << r.name << "\"," << (r.pass ? "true" : "false") << "\n";
    } else {
      os << (r.pass ? "PASS  " : "FAIL  ") << r.suite << " / " << r.name;
      if (!r.pass) os << "\n      " << r.detail;
      os << "\n";
    }
  }
  if (c.format != "csv") os << (ok ? "all checks passed" : "some checks FAILED") << "\n";
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact coefficient tables and counts for graphic generating functions"};
  app.set_version_flag("--version", std::string("gdseries ") + kVersion);
  app.require_subcommand(1);

  struct Sub {
    CLI::App* app;
    Flags flags;
    Options opts;
    RunConfig defaults;
  };
  std::vector<std::unique_ptr<Sub>> subs;
  auto add = [&](const std::string& name, const std::string& help, RunConfig defaults, const std::string& pos_name,
                 const std::string& pos_help) {
    auto s = std::make_unique<Sub>();
    s->app = app.add_subcommand(name, help);
    s->opts = add_common(s->app, s->flags);
    s->defaults = defaults;
    s->defaults.command = name;
    if (!pos_name.empty()) s->opts.family = s->app->add_option(pos_name, s->flags.family, pos_help);
    subs.push_back(std::move(s));
    return subs.back().get();
  };
  std::string fam_help = "family name, one of: ";
  for (const auto& n : family_names()) fam_help += n + " ";

  RunConfig d;
  d.order = 10;
  add("seq", "counts a_n for n = 0..order (--n is accepted as an alias)", d, "family", fam_help);
  d.order = 6;
  add("coeffs", "coefficient table a°_{m,l} up to z-order --order", d, "family", fam_help);
  add("wright", "polynomials w_m(n) = sum_l a°_{m,l} n^(falling l) for m <= --order", d, "family", fam_help);
  d.order = 10;
  d.n = 20;
  d.terms = 3;
  add("expand", "partial sums of the asymptotic expansion at --n with --terms terms", d, "family", fam_help);
  d.n = 4;
  add("oracle", "brute-force counts at size --n", d, "kind", "graphs, digraphs, tournaments or 2cnf");
  d.max_n = 3;
  add("calibrate-sat", "decide which clause universe the SAT series counts", d, "", "");
  d.order = 8;
  d.max_n = 5;
  Sub* ver = add("verify", "run the golden, oracle and rule-consistency checks", d, "", "");
  ver->opts.scope = ver->app->add_option("--scope", ver->flags.scope, "appendix, oracle, rules or all")
                        ->check(CLI::IsMember({"appendix", "oracle", "rules", "all"}));
  ver->opts.max_n = ver->app->add_option("--max-n", ver->flags.max_n, "largest oracle size");
  ver->opts.family = ver->app->add_option("--family", ver->flags.family, "restrict the rules scope to one family");
  Sub* cal = subs[5].get();
  cal->opts.max_n = cal->app->add_option("--max-n", cal->flags.max_n, "largest size compared");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    for (auto& s : subs) {
      if (!s->app->parsed()) continue;
      RunConfig c = resolve(s->app->get_name(), s->flags, s->opts, s->defaults);
      // seq treats --n as the last index when --order is absent
      if (c.command == "seq" && s->opts.n->count() && !s->opts.order->count()) c.order = static_cast<int>(c.n);
      std::string out;
      bool ok = true;
      const std::string& cmd = c.command;
      if (cmd != "verify" && cmd != "calibrate-sat" && c.family.empty())
        fail(Errc::InvalidArgument, cmd + " needs a " + (cmd == "oracle" ? "kind" : "family"));
      if (cmd == "seq")
        out = cmd_seq(c);
      else if (cmd == "coeffs")
        out = cmd_coeffs(c);
      else if (cmd == "wright")
        out = cmd_wright(c);
      else if (cmd == "expand")
        out = cmd_expand(c);
      else if (cmd == "oracle")
        out = cmd_oracle(c);
      else if (cmd == "calibrate-sat")
        out = cmd_calibrate(c);
      else
        out = cmd_verify(c, ok);
      if (s->flags.out_file.empty()) {
        std::cout << out;
      } else {
        std::ofstream f(s->flags.out_file);
        if (!f) fail(Errc::InvalidArgument, "cannot write " + s->flags.out_file);
        f << out;
      }
      return ok ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == Errc::RecurrenceMismatch ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
