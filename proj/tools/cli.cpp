#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "quillen/errors.hpp"
#include "quillen/lie_expr.hpp"
#include "quillen/model_file.hpp"
#include "quillen/models.hpp"
#include "quillen/secat.hpp"

namespace quillen::cli {

namespace {

using json = nlohmann::ordered_json;

struct Common {
  bool json = false;
  bool no_timings = false;
  int max_degree = 8;
};

struct Result {
  json report;
  std::string text;
  int code = kOk;
};

std::string expr(const Tensor& x, const Dgl& l) {
  if (x.is_zero()) return "0";
  return format(to_lie_expr(x, l.degrees()), l.generators());
}

json residuals_json(const std::vector<Residual>& rs) {
  json out = json::array();
  for (const auto& r : rs) out.push_back({{"generator", r.generator}, {"degree", r.degree}, {"residual", r.residual}});
  return out;
}

json quasi_iso_json(const QuasiIsoReport& q) {
  json degrees = json::array();
  for (const auto& e : q.degrees)
    degrees.push_back({{"degree", e.degree},
                       {"source_dim", e.source_dim},
                       {"target_dim", e.target_dim},
                       {"rank", e.rank}});
  return {{"bound", q.bound}, {"pass", q.pass}, {"degrees", degrees}};
}

json invariants_json(const InvariantReport& r) { return {{"pass", r.pass}, {"failures", r.failures}}; }

json generators_json(const Dgl& l, const std::vector<bool>* domain = nullptr) {
  json out = json::array();
  auto stages = l.stages();
  for (std::size_t g = 0; g < l.size(); ++g) {
    const Letter x = static_cast<Letter>(g);
    json j = {{"id", l.id(x)}, {"degree", l.degree(x)}, {"stage", stages[g]}, {"d", expr(l.differential(x), l)}};
    if (domain) j["domain"] = static_cast<bool>((*domain)[g]);
    out.push_back(std::move(j));
  }
  return out;
}

std::string pass_word(bool b) { return b ? "pass" : "FAIL"; }

void write_or_embed(const std::string& path, const std::string& model_text, Result& r) {
  if (path.empty()) {
    r.text += model_text;
    r.report["model"] = model_text;
  } else {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    out << model_text;
    r.report["output"] = path;
  }
}

// --- check / homology -------------------------------------------------------

Result cmd_check(const std::string& file, const Common& c) {
  MapModel m = load_model(file);
  const Dgl& l = *m.dgl;
  auto d2 = check_d_squared(l, c.max_degree);
  auto lin = l.linear_part_violations();
  std::vector<std::string> lin_ids;
  for (Letter g : lin) lin_ids.push_back(l.id(g));
  Result r;
  r.report = {{"command", "check"},
              {"inputs", {{"file", file}}},
              {"max_degree", c.max_degree},
              {"status", d2.pass ? "pass" : "fail"},
              {"d_squared", {{"pass", d2.pass}, {"violations", residuals_json(d2.violations)}}},
              {"minimal", lin.empty()},
              {"linear_part", lin_ids},
              {"generators", generators_json(l, &m.domain)}};
  std::ostringstream t;
  t << "model " << (l.name().empty() ? "(unnamed)" : l.name()) << ": " << l.size() << " generators\n";
  t << "d^2 = 0 up to degree " << c.max_degree << ": " << pass_word(d2.pass) << "\n";
  for (const auto& v : d2.violations) t << "  d^2(" << v.generator << ") = " << v.residual << "\n";
  t << "minimal: " << (lin.empty() ? "yes" : "no") << "\n";
  for (const auto& id : lin_ids) t << "  linear part in d(" << id << ")\n";
  auto stages = l.stages();
  for (std::size_t g = 0; g < l.size(); ++g)
    t << "  " << l.id(static_cast<Letter>(g)) << "  degree " << l.degree(static_cast<Letter>(g)) << "  stage "
      << stages[g] << (m.domain[g] ? "  domain" : "") << "\n";
  r.text = t.str();
  r.code = d2.pass ? kOk : kNegative;
  return r;
}

Result cmd_homology(const std::string& file, const Common& c) {
  MapModel m = load_model(file);
  auto dims = homology_dims(*m.dgl, c.max_degree);
  Result r;
  json h = json::object();
  std::ostringstream t;
  t << "homology up to degree " << c.max_degree << "\n";
  for (auto [d, n] : dims) {
    h[std::to_string(d)] = n;
    t << "  H_" << d << " = " << n << "\n";
  }
  r.report = {{"command", "homology"}, {"inputs", {{"file", file}}}, {"max_degree", c.max_degree},
              {"status", "pass"},      {"dims", h}};
  r.text = t.str();
  return r;
}

// --- model builders ---------------------------------------------------------

Result report_product(const std::string& command, const ProductModel& p, const Common& c, bool binary,
                      const std::string& out_path, json inputs) {
  auto d2 = check_d_squared(*p.dgl, c.max_degree);
  auto qi = check_quasi_iso(p.projections, std::max(1, c.max_degree - 1));
  auto inv = check_product_invariants(p);
  std::optional<InvariantReport> st;
  if (binary) st = check_stage_containment(p);
  bool ok = d2.pass && qi.pass && inv.pass && (!st || st->pass);

  Result r;
  r.report = {{"command", command},
              {"inputs", std::move(inputs)},
              {"max_degree", c.max_degree},
              {"status", ok ? "pass" : "fail"},
              {"copies", p.copies},
              {"generators", generators_json(*p.dgl)},
              {"omitted", p.omitted},
              {"d_squared", {{"pass", d2.pass}, {"violations", residuals_json(d2.violations)}}},
              {"quasi_iso", quasi_iso_json(qi)},
              {"invariants", invariants_json(inv)}};
  if (st) r.report["stage_containment"] = invariants_json(*st);
  std::ostringstream t;
  t << command << ": " << p.dgl->size() << " generators up to degree " << c.max_degree;
  if (!p.omitted.empty()) t << " (" << p.omitted.size() << " above the bound omitted)";
  t << "\n";
  t << "d^2 = 0: " << pass_word(d2.pass) << "\n";
  t << "quasi-isomorphism up to degree " << qi.bound << ": " << pass_word(qi.pass) << "\n";
  t << "structure: " << pass_word(inv.pass) << "\n";
  for (const auto& f : inv.failures) t << "  " << f << "\n";
  if (st) {
    t << "stage containment: " << pass_word(st->pass) << "\n";
    for (const auto& f : st->failures) t << "  " << f << "\n";
  }
  r.text = t.str();
  write_or_embed(out_path, serialize_model(*p.dgl), r);
  r.code = ok ? kOk : kNegative;
  return r;
}

Result cmd_product(const std::string& a, const std::string& b, const std::string& out, const Common& c) {
  auto ma = load_model(a);
  auto mb = load_model(b);
  auto p = binary_product(ma.dgl, mb.dgl, c.max_degree);
  return report_product("product", p, c, true, out, {{"files", {a, b}}});
}

Result cmd_power(const std::string& file, int copies, const std::string& out, const Common& c) {
  auto m = load_model(file);
  auto p = power_model(m.dgl, copies, c.max_degree);
  return report_product("power", p, c, copies == 2, out, {{"file", file}, {"copies", copies}});
}

Result cmd_diagonal(const std::string& file, int copies, const std::string& out, const Common& c) {
  auto m = load_model(file);
  auto d = diagonal_model(m.dgl, copies, c.max_degree);
  auto rep = check_diagonal(d, c.max_degree);
  Result r;
  json delta = json::object();
  std::ostringstream t;
  t << "diagonal into " << copies << " copies, up to degree " << c.max_degree << "\n";
  const Dgl& src = d.delta.source();
  for (std::size_t g = 0; g < src.size(); ++g) {
    std::string e = expr(d.delta.image(static_cast<Letter>(g)), d.delta.target());
    delta[src.id(static_cast<Letter>(g))] = e;
    t << "  delta(" << src.id(static_cast<Letter>(g)) << ") = " << e << "\n";
  }
  t << "checks: " << pass_word(rep.pass) << "\n";
  for (const auto& f : rep.failures) t << "  " << f << "\n";
  r.report = {{"command", "diagonal"},
              {"inputs", {{"file", file}, {"copies", copies}}},
              {"max_degree", c.max_degree},
              {"status", rep.pass ? "pass" : "fail"},
              {"delta", delta},
              {"checks", invariants_json(rep)}};
  r.text = t.str();
  if (!out.empty()) write_or_embed(out, serialize_model(*d.power.dgl), r);
  r.code = rep.pass ? kOk : kNegative;
  return r;
}

Result cmd_fatwedge(const std::string& file, int n, const std::string& out, const Common& c) {
  auto m = load_model(file);
  auto fw = fat_wedge_model(m, n, c.max_degree);
  auto cm = check_chain_map(fw.inclusion, c.max_degree);
  std::vector<std::string> kept, u, removed;
  std::vector<bool> is_kept(fw.power.dgl->size());
  for (std::size_t i = 0; i < fw.kept_letters.size(); ++i) {
    is_kept[fw.kept_letters[i]] = true;
    kept.push_back(fw.kept->id(static_cast<Letter>(i)));
    if (fw.in_u[i]) u.push_back(kept.back());
  }
  for (std::size_t g = 0; g < is_kept.size(); ++g)
    if (!is_kept[g]) removed.push_back(fw.power.dgl->id(static_cast<Letter>(g)));
  Result r;
  r.report = {{"command", "fatwedge"},
              {"inputs", {{"file", file}, {"n", n}}},
              {"max_degree", c.max_degree},
              {"status", cm.pass ? "pass" : "fail"},
              {"kept", kept},
              {"u", u},
              {"removed", removed},
              {"inclusion_chain_map", cm.pass}};
  std::ostringstream t;
  t << "fat wedge n=" << n << ": " << kept.size() << " kept, " << removed.size() << " removed, " << u.size()
    << " relative\n";
  t << "  removed: ";
  for (std::size_t i = 0; i < removed.size(); ++i) t << (i ? ", " : "") << removed[i];
  t << "\n  U: ";
  for (std::size_t i = 0; i < u.size(); ++i) t << (i ? ", " : "") << u[i];
  t << "\ninclusion is a chain map: " << pass_word(cm.pass) << "\n";
  r.text = t.str();
  if (!out.empty()) write_or_embed(out, serialize_model(*fw.kept), r);
  r.code = cm.pass ? kOk : kNegative;
  return r;
}

// --- certificates -----------------------------------------------------------

json outcome_json(const SecatOutcome& o) {
  json records = json::array();
  for (const auto& rec : o.transcript.records) {
    json j = {{"generator", rec.generator},
              {"degree", rec.degree},
              {"unknowns", rec.unknowns},
              {"kernel_dim", rec.kernel_dim},
              {"consistent", rec.consistent},
              {"choice", rec.choice}};
    if (!rec.consistent) j["rhs"] = rec.rhs;
    records.push_back(std::move(j));
  }
  json j = {{"n", o.n},
            {"status", o.certificate ? "certificate" : "no-certificate"},
            {"effective_max_degree", o.effective_degree}};
  if (!o.certificate) {
    j["exhaustive"] = o.exhaustive;
    j["reason"] = o.reason;
  }
  j["transcript"] = {{"solves", o.transcript.solves},
                     {"restarts", o.transcript.restarts},
                     {"budget_exhausted", o.transcript.budget_exhausted},
                     {"records", records}};
  if (o.certificate) {
    const Certificate& cert = *o.certificate;
    json alpha = json::object();
    for (const auto& [g, e] : certificate_table(cert)) alpha[g] = e;
    std::vector<std::string> u;
    for (std::size_t i = 0; i < cert.wedge.kept_letters.size(); ++i)
      if (cert.wedge.in_u[i]) u.push_back(cert.wedge.kept->id(static_cast<Letter>(i)));
    auto v = verify_certificate(cert, cert.max_degree);
    j["certificate"] = {{"alpha", alpha}, {"u", u}, {"verified", v.pass}, {"failures", v.failures}};
  }
  return j;
}

void outcome_text(const SecatOutcome& o, std::ostream& t) {
  t << "n=" << o.n << ": ";
  if (o.certificate) {
    t << "certificate (" << o.transcript.solves << " solves)\n";
    for (const auto& [g, e] : certificate_table(*o.certificate)) t << "  alpha(" << g << ") = " << e << "\n";
    return;
  }
  t << "no certificate, " << (o.exhaustive ? "exhaustive" : "inconclusive") << " up to degree "
    << o.effective_degree << ": " << o.reason << "\n";
  for (const auto& rec : o.transcript.records)
    if (!rec.consistent) {
      t << "  first failure at " << rec.generator << ": unsolvable right-hand side " << rec.rhs << "\n";
      break;
    }
}

Result report_secat(const std::string& command, const SecatResult& s, json inputs, const Common& c,
                    const std::string& label) {
  Result r;
  json outcomes = json::array();
  std::ostringstream t;
  for (const auto& o : s.outcomes) {
    outcomes.push_back(outcome_json(o));
    outcome_text(o, t);
  }
  if (s.value)
    t << label << " <= " << *s.value << "\n";
  else
    t << "no certificate found up to n=" << (s.outcomes.empty() ? 0 : s.outcomes.back().n) << "\n";
  r.report = {{"command", command},
              {"inputs", std::move(inputs)},
              {"max_degree", c.max_degree},
              {"status", s.value ? "certificate" : "no-certificate"},
              {"value", s.value ? json(*s.value) : json(nullptr)},
              {"outcomes", outcomes}};
  r.text = t.str();
  r.code = s.value ? kOk : kNegative;
  return r;
}

json options_json(const SearchOptions& o) {
  return {{"seed", o.seed}, {"budget", o.budget}, {"restarts", o.restarts}};
}

Result cmd_secat(const std::string& file, std::optional<int> n, std::optional<int> max_n, const SearchOptions& opt,
                 const Common& c) {
  auto m = load_model(file);
  json inputs = {{"file", file}, {"search", options_json(opt)}};
  SecatResult s;
  if (max_n) {
    inputs["max_n"] = *max_n;
    s = secat_upper_bound(m, *max_n, c.max_degree, opt);
  } else {
    int k = n.value_or(1);
    inputs["n"] = k;
    s.outcomes.push_back(find_alpha(SecatProblem{m, k, c.max_degree, opt}));
    if (s.outcomes.back().certificate) s.value = k;
  }
  return report_secat("secat", s, std::move(inputs), c, "secat");
}

Result cmd_cat(const std::string& file, int max_n, const SearchOptions& opt, const Common& c) {
  auto m = load_model(file);
  auto s = cat(m.dgl, max_n, c.max_degree, opt);
  return report_secat("cat", s, {{"file", file}, {"max_n", max_n}, {"search", options_json(opt)}}, c, "cat");
}

Result cmd_tc(const std::string& file, int max_n, const SearchOptions& opt, const Common& c) {
  auto m = load_model(file);
  auto res = tc(m.dgl, max_n, c.max_degree, opt);
  Result r = report_secat("tc", res.secat, {{"file", file}, {"max_n", max_n}, {"search", options_json(opt)}}, c, "tc");
  auto qi = check_quasi_iso(res.replacement.rho, c.max_degree);
  r.report["replacement"] = {{"free_extension", res.replacement.free_extension},
                             {"minimal", res.replacement.minimal},
                             {"quasi_iso", quasi_iso_json(qi)},
                             {"model", serialize_model(res.replacement.map)}};
  r.text = "diagonal replaced by a free extension with " + std::to_string(res.replacement.map.dgl->size()) +
           " generators (quasi-isomorphism up to degree " + std::to_string(qi.bound) + ": " + pass_word(qi.pass) +
           ")\n" + r.text;
  return r;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_flag("--json", c.json, "Print a machine-readable report");
  sub->add_flag("--no-timings", c.no_timings, "Leave timings out of the report");
  sub->add_option("--max-degree,-N", c.max_degree, "Degree bound")->check(CLI::PositiveNumber);
}

void add_search(CLI::App* sub, SearchOptions& o) {
  sub->add_option("--seed", o.seed, "Seed for randomized restarts");
  sub->add_option("--budget", o.budget, "Maximum number of linear solves");
  sub->add_option("--restarts", o.restarts, "Maximum number of randomized restarts");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quillen models and sectional category certificates"};
  app.require_subcommand(1);
  Common common;
  SearchOptions search;
  std::string file, file_b, output;
  int copies = 2;
  std::optional<int> n, max_n;
  int max_n_plain = 3;

  auto* check = app.add_subcommand("check", "d^2 = 0, minimality and stages");
  check->add_option("file", file, "Model file")->required();
  add_common(check, common);

  auto* homology = app.add_subcommand("homology", "Homology dimensions");
  homology->add_option("file", file, "Model file")->required();
  add_common(homology, common);

  auto* product = app.add_subcommand("product", "Model of a product of two models");
  product->add_option("a", file, "First model")->required();
  product->add_option("b", file_b, "Second model")->required();
  product->add_option("-o,--output", output, "Write the model here");
  add_common(product, common);

  auto* power = app.add_subcommand("power", "Model of a Cartesian power");
  power->add_option("file", file, "Model file")->required();
  power->add_option("--copies", copies, "Number of factors")->check(CLI::PositiveNumber);
  power->add_option("-o,--output", output, "Write the model here");
  add_common(power, common);

  auto* diagonal = app.add_subcommand("diagonal", "Model of the diagonal");
  diagonal->add_option("file", file, "Model file")->required();
  diagonal->add_option("--copies", copies, "Number of factors")->check(CLI::PositiveNumber);
  diagonal->add_option("-o,--output", output, "Write the power model here");
  add_common(diagonal, common);

  auto* fatwedge = app.add_subcommand("fatwedge", "Fat-wedge sub-model of a map model");
  fatwedge->add_option("file", file, "Map model file")->required();
  fatwedge->add_option("--n", n, "Fat wedge index")->required()->check(CLI::NonNegativeNumber);
  fatwedge->add_option("-o,--output", output, "Write the kept sub-model here");
  add_common(fatwedge, common);

  auto* secat = app.add_subcommand("secat", "Search a certificate for secat <= n");
  secat->add_option("file", file, "Map model file")->required();
  secat->add_option("--n", n, "Candidate bound")->check(CLI::NonNegativeNumber);
  secat->add_option("--max-n", max_n, "Try n = 0, 1, ... up to this bound")->check(CLI::NonNegativeNumber);
  add_search(secat, search);
  add_common(secat, common);

  auto* cat_cmd = app.add_subcommand("cat", "Upper bound for LS category");
  cat_cmd->add_option("file", file, "Model file")->required();
  cat_cmd->add_option("--max-n", max_n_plain, "Largest n to try")->check(CLI::NonNegativeNumber);
  add_search(cat_cmd, search);
  add_common(cat_cmd, common);

  auto* tc_cmd = app.add_subcommand("tc", "Upper bound for topological complexity");
  tc_cmd->add_option("file", file, "Model file")->required();
  tc_cmd->add_option("--max-n", max_n_plain, "Largest n to try")->check(CLI::NonNegativeNumber);
  add_search(tc_cmd, search);
  add_common(tc_cmd, common);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kInputError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  const auto start = std::chrono::steady_clock::now();
  Result r;
  auto fail = [&](const char* kind, const std::string& what, int code) {
    if (common.json) {
      json j = {{"command", command}, {"status", "error"}, {"error", kind}, {"message", what}};
      out << j.dump(2) << "\n";
    } else {
      err << "error: " << what << "\n";
    }
    return code;
  };
  try {
    if (check->parsed()) r = cmd_check(file, common);
    else if (homology->parsed()) r = cmd_homology(file, common);
    else if (product->parsed()) r = cmd_product(file, file_b, output, common);
    else if (power->parsed()) r = cmd_power(file, copies, output, common);
    else if (diagonal->parsed()) r = cmd_diagonal(file, copies, output, common);
    else if (fatwedge->parsed()) r = cmd_fatwedge(file, *n, output, common);
    else if (secat->parsed()) r = cmd_secat(file, n, max_n, search, common);
    else if (cat_cmd->parsed()) r = cmd_cat(file, max_n_plain, search, common);
    else r = cmd_tc(file, max_n_plain, search, common);
  } catch (const ClosureViolation& e) {
    return fail("closure-violation", e.what(), kInvariantViolation);
  } catch (const InputError& e) {
    return fail("input", e.what(), kInputError);
  } catch (const InvariantViolation& e) {
    return fail("invariant-violation", e.what(), kInvariantViolation);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), kInvariantViolation);
  }

  if (!common.no_timings) {
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    r.report["timings"] = {{"total_ms", ms}};
  }
  if (common.json)
    out << r.report.dump(2) << "\n";
  else
    out << r.text;
  return r.code;
}

}  // namespace quillen::cli
