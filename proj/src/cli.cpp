#include "qhc/cli.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <functional>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "qhc/errors.hpp"
#include "qhc/ifunction.hpp"
#include "qhc/psi.hpp"

namespace qhc {

namespace {

using ojson = nlohmann::ordered_json;

struct RunConfig {
  std::string file;
  int pmax = -1;
  int max_depth = 6;
  int qorder = 3;
  bool equivariant = false;
  std::string order = "grevlex";
  bool json = false;
  std::string report = "text";
  int jobs = 1;
  std::size_t budget_steps = GroebnerBudget{}.max_steps;
  std::string path;
  int index = 0;
  bool type_a = false;
  std::string node;
};

struct Report {
  ojson j;
  std::ostringstream text;
  bool pass = true;
};

GroebnerBudget budget_of(const RunConfig& c) {
  GroebnerBudget b;
  b.max_steps = c.budget_steps;
  return b;
}

MonomialOrder order_of(const RunConfig& c) {
  MonomialOrder o;
  if (c.order == "lex") o.kind = OrderKind::Lex;
  else if (c.order != "grevlex") throw InputError("--order must be grevlex or lex");
  return o;
}

int pmax_of(const RunConfig& c, const Quiver& q) { return c.pmax < 0 ? default_p_max(q) : c.pmax; }

std::string opt_text(const std::optional<MultiPoly>& p) { return p ? format(*p) : ""; }

ojson membership_json(const Membership& m) {
  ojson j{{"pass", m.ok}};
  if (m.used_saturation) j["saturated"] = true;
  if (!m.ok) {
    j["witness"] = opt_text(m.witness);
    j["where"] = m.where;
  }
  return j;
}

std::string verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

// ---------------------------------------------------------------------------

void cmd_validate(const RunConfig& c, Report& r) {
  Quiver q = Quiver::load(c.file);
  ValidationReport v = validate(q);
  r.pass = v.dims_feasible;
  ojson nodes = ojson::array();
  r.text << "nodes: " << q.n_gauge() << " gauge, " << q.n_frozen() << " frozen\n";
  for (const auto& f : v.feasibility) {
    nodes.push_back({{"id", f.id}, {"v", f.v}, {"v_minus", f.v_minus}, {"v_plus", f.v_plus}, {"theta", f.theta},
                     {"feasible", f.ok}});
    r.text << "  node " << f.id << ": v=" << f.v << " v-=" << f.v_minus << " v+=" << f.v_plus << " theta=" << f.theta
           << (f.ok ? " feasible" : " infeasible") << "\n";
  }
  r.j["acyclic"] = v.acyclic;
  r.j["nodes"] = nodes;
  r.j["dims_feasible"] = v.dims_feasible;
  r.j["quiver_flag"] = v.quiver_flag;
  r.j["type_a"] = v.type_a;
  if (v.type_a) r.j["chain"] = v.chain;
  r.j["notes"] = v.notes;
  BMatrices b = b_matrix(q);
  r.j["btilde"] = b.Btilde;
  r.text << "acyclic: " << (v.acyclic ? "yes" : "no") << "\n"
         << "dims feasible: " << (v.dims_feasible ? "yes" : "no") << "\n"
         << "quiver flag: " << (v.quiver_flag ? "yes" : "no") << "\n"
         << "type A: " << (v.type_a ? "yes" : "no") << "\n";
  for (const auto& n : v.notes) r.text << "note: " << n << "\n";
}

void cmd_present(const RunConfig& c, Report& r) {
  Quiver q = Quiver::load(c.file);
  VarTablePtr ctx = make_context(q, {});
  IdealPresentation I = build_ideal(q, ctx, pmax_of(c, q), c.equivariant);
  ojson gens = ojson::array();
  for (const auto& g : I.generators) gens.push_back(format(g));
  r.j["p_max"] = I.p_max;
  r.j["equivariant"] = I.equivariant;
  r.j["generators"] = gens;
  r.text << "p_max " << I.p_max << (I.equivariant ? ", equivariant" : "") << "\n" << format_presentation(I);
}

void cmd_groebner(const RunConfig& c, Report& r) {
  Quiver q = Quiver::load(c.file);
  VarTablePtr ctx = make_context(q, {});
  IdealPresentation I = build_ideal(q, ctx, pmax_of(c, q), c.equivariant);
  GroebnerBasis G = buchberger(I, order_of(c), budget_of(c), c.jobs > 1);
  ojson basis = ojson::array();
  for (const auto& g : G.basis()) basis.push_back(format(g));
  r.j["p_max"] = I.p_max;
  r.j["order"] = c.order;
  r.j["basis"] = basis;
  r.text << "Groebner basis (" << c.order << ", p_max " << I.p_max << "), " << G.basis().size() << " elements\n";
  for (const auto& g : G.basis()) r.text << format(g) << "\n";
}

void cmd_verify_exchange(const RunConfig& c, Report& r) {
  Quiver q = Quiver::load(c.file);
  VarTablePtr ctx = make_context(q, {});
  IdealPresentation I = build_ideal(q, ctx, pmax_of(c, q), c.equivariant);
  GroebnerBasis G = buchberger(I, order_of(c), budget_of(c), c.jobs > 1);
  ojson nodes = ojson::array();
  for (std::size_t l = 0; l < q.n_gauge(); ++l) {
    const std::string& k = q.nodes()[l].id;
    if (!c.node.empty() && c.node != k) continue;
    auto [lhs, rhs] = exchange_lhs_rhs(q, ctx, k);
    MultiPoly d = c.equivariant ? lhs - rhs : drop_equivariant(lhs - rhs);
    ojson coeffs = ojson::array();
    bool ok = true;
    for (const auto& [tp, coeff] : t_coefficients(d)) {
      MultiPoly nf = G.normal_form(coeff);
      ojson e{{"t", tp}, {"pass", nf.is_zero()}};
      if (!nf.is_zero()) e["witness"] = format(nf);
      ok = ok && nf.is_zero();
      coeffs.push_back(e);
    }
    nodes.push_back({{"node", k}, {"pass", ok}, {"coefficients", coeffs}});
    r.text << "node " << k << ": " << verdict(ok) << "\n";
    r.pass = r.pass && ok;
  }
  if (nodes.empty()) throw InputError("no gauge node '" + c.node + "'");
  r.j["p_max"] = pmax_of(c, q);
  r.j["nodes"] = nodes;
}

void cmd_verify_type_a(const RunConfig& c, Report& r) {
  Quiver q = Quiver::load(c.file);
  TypeAOptions o;
  o.p_max = c.pmax;
  o.equivariant = c.equivariant;
  o.parallel = c.jobs > 1;
  o.budget = budget_of(c);
  TypeAReport rep = verify_type_a(q, o);
  r.pass = rep.ok;
  ojson checks = ojson::array();
  for (const auto& ch : rep.checks) {
    ojson j = membership_json(ch.result);
    j["name"] = ch.name;
    if (!ch.path.empty()) j["path"] = ch.path;
    checks.push_back(j);
    r.text << ch.name << (ch.path.empty() ? "" : " (path " + ch.path + ")") << ": " << verdict(ch.result.ok);
    if (!ch.result.ok) r.text << "  " << ch.result.where << " " << opt_text(ch.result.witness);
    r.text << "\n";
  }
  r.j["chain"] = rep.chain;
  r.j["cluster_variables"] = rep.cluster_variables;
  r.j["checks"] = checks;
}

void cmd_verify_vgit(const RunConfig& c, Report& r) {
  Quiver q = Quiver::load(c.file);
  std::map<std::string, int> pos, neg;
  for (std::size_t l = 0; l < q.n_gauge(); ++l) {
    const Node& v = q.nodes()[l];
    pos[v.id] = std::abs(v.theta);
    neg[v.id] = -std::abs(v.theta);
  }
  Quiver qp = q.with_theta(pos), qn = q.with_theta(neg);
  VarTablePtr ctx = make_context(q, {});
  int pm = pmax_of(c, q);
  IdealPresentation Ip = build_ideal(qp, ctx, pm, c.equivariant), In = build_ideal(qn, ctx, pm, c.equivariant);
  bool eq = ideal_equal_laurent(Ip, In, ctx->of_kind(VarKind::Q), budget_of(c));
  r.pass = eq;
  r.j["p_max"] = pm;
  r.j["equal_after_inverting_Q"] = eq;
  r.text << "theta > 0 and theta < 0 presentations agree after inverting Q: " << verdict(eq) << "\n";
}

void cmd_verify_qde(const RunConfig& c, Report& r) {
  Quiver q = Quiver::load(c.file);
  ContextOptions co;
  co.with_h = true;
  VarTablePtr ctx = make_context(q, co);
  WeightData w = weights(q, ctx);
  Cocharacter signs = cone_signs(q, ctx);
  std::vector<std::size_t> xis = ctx->of_kind(VarKind::Xi);
  const int N = c.qorder;
  std::size_t checked = 0, skipped = 0, failed = 0;
  ojson failures = ojson::array();
  std::vector<int> box(xis.size(), 0);
  for (;;) {
    Cocharacter d(ctx->size(), 0);
    for (std::size_t i = 0; i < xis.size(); ++i) d[xis[i]] = box[i] * signs[xis[i]];
    for (std::size_t j = 0; j < xis.size(); ++j) {
      Cocharacter dp(ctx->size(), 0);
      dp[xis[j]] = signs[xis[j]];
      QdeResult res = qde_check(w, signs, d, dp);
      if (res.skipped) {
        ++skipped;
        continue;
      }
      ++checked;
      if (!res.ok) {
        ++failed;
        std::vector<int> dv, dpv;
        for (std::size_t v : xis) dv.push_back(d[v]), dpv.push_back(dp[v]);
        failures.push_back({{"d", dv}, {"d_prime", dpv}, {"witness", opt_text(res.witness)}});
      }
    }
    std::size_t i = 0;
    while (i < box.size() && box[i] == N) box[i++] = 0;
    if (i == box.size()) break;
    ++box[i];
  }
  r.pass = failed == 0;
  r.j["box"] = N;
  r.j["checked"] = checked;
  r.j["skipped"] = skipped;
  r.j["failed"] = failed;
  r.j["failures"] = failures;
  r.text << "QDE recursion on the box |d_i| <= " << N << ": " << checked << " checked, " << skipped << " skipped, "
         << failed << " failed\n";
}

Seed principal_of(const Quiver& q) { return principal_seed(b_matrix(q).B); }

void cmd_verify_separation(const RunConfig& c, Report& r) {
  Quiver q = Quiver::load(c.file);
  Seed s0 = principal_of(q);
  EnumerationOptions eo;
  eo.max_depth = c.max_depth;
  eo.parallel = c.jobs > 1;
  ClusterEnumeration en = cluster_variables(s0, eo);
  ojson vars = ojson::array();
  for (const auto& v : en.variables) {
    FG fg = f_polynomial_and_g_vector(s0, v.path, v.index);
    bool sep = separation_check(s0, v.path, v.index);
    r.pass = r.pass && sep;
    vars.push_back({{"value", format(v.value)},
                    {"path", format_path(v.path)},
                    {"index", v.index},
                    {"F", format(fg.F)},
                    {"g", fg.g},
                    {"separation", sep}});
    r.text << "path [" << format_path(v.path) << "] x" << v.index << ": F = " << format(fg.F) << ", g = (";
    for (std::size_t i = 0; i < fg.g.size(); ++i) r.text << (i ? "," : "") << fg.g[i];
    r.text << "), separation " << verdict(sep) << "\n";
  }
  r.j["variables"] = vars;
}

void print_seed(const Seed& s, Report& r) {
  ojson cl = ojson::array(), ys = ojson::array();
  for (std::size_t i = 0; i < s.n; ++i) {
    cl.push_back(format(s.cluster[i]));
    r.text << "x" << i + 1 << " = " << format(s.cluster[i]) << "\n";
  }
  for (const auto& y : s.coeffs) ys.push_back(y.exps);
  r.j["cluster"] = cl;
  r.j["coefficients"] = ys;
  r.j["btilde"] = s.Btilde;
  r.text << "Btilde:\n";
  for (const auto& row : s.Btilde) {
    for (std::size_t j = 0; j < row.size(); ++j) r.text << (j ? " " : "  ") << row[j];
    r.text << "\n";
  }
}

void cmd_cluster_mutate(const RunConfig& c, Report& r) {
  Quiver q = Quiver::load(c.file);
  MutationPath p = parse_path(c.path);
  Seed s = mutate_path(quiver_seed(q), p);
  r.j["path"] = format_path(p);
  print_seed(s, r);
}

void cmd_cluster_enumerate(const RunConfig& c, Report& r) {
  Quiver q = Quiver::load(c.file);
  EnumerationOptions eo;
  eo.max_depth = c.max_depth;
  eo.check_involution = true;
  eo.parallel = c.jobs > 1;
  ClusterEnumeration en = cluster_variables(quiver_seed(q), eo);
  r.pass = en.laurent_ok && en.involution_ok;
  ojson vars = ojson::array();
  for (const auto& v : en.variables) {
    vars.push_back({{"value", format(v.value)}, {"path", format_path(v.path)}, {"index", v.index}});
    r.text << format(v.value) << "    [" << format_path(v.path) << "] x" << v.index << "\n";
  }
  r.j["max_depth"] = c.max_depth;
  r.j["depth_reached"] = en.depth_reached;
  r.j["seeds"] = en.seeds;
  r.j["laurent"] = en.laurent_ok;
  r.j["involution"] = en.involution_ok;
  r.j["count"] = en.variables.size();
  r.j["variables"] = vars;
  r.text << en.variables.size() << " cluster variables, " << en.seeds << " seeds, depth " << en.depth_reached
         << "; Laurent " << verdict(en.laurent_ok) << ", involution " << verdict(en.involution_ok) << "\n";
}

void cmd_embed(const RunConfig& c, Report& r) {
  if (c.type_a) {
    cmd_verify_type_a(c, r);
    return;
  }
  Quiver q = Quiver::load(c.file);
  VarTablePtr ctx = psi_context(q);
  InjectivityWitness iw = injectivity_witness(q, ctx);
  r.pass = iw.ok;
  ojson lead = ojson::array();
  for (const auto& [id, m] : iw.leading) lead.push_back({{"node", id}, {"leading", m}});
  r.j["injectivity"] = {{"pass", iw.ok}, {"leading", lead}};
  r.text << "injectivity witness: " << verdict(iw.ok) << "\n";

  if (!c.path.empty() || c.index > 0) {
    MutationPath p = parse_path(c.path);
    int k = c.index > 0 ? c.index : 1;
    PsiImage img = psi_of_cluster_variable(q, ctx, p, k);
    r.j["image"] = {{"path", format_path(p)}, {"index", k}, {"psi", format_psi(img)}};
    r.text << "psi(x" << k << " after [" << format_path(p) << "]) = " << format_psi(img) << "\n";
    return;
  }

  IdealPresentation I = build_ideal(q, ctx, pmax_of(c, q), c.equivariant);
  GroebnerBasis G = buchberger(I, {}, budget_of(c), c.jobs > 1);
  ZetaIdeal Z(q, I, G);
  ojson nodes = ojson::array();
  for (std::size_t l = 0; l < q.n_gauge(); ++l) {
    const std::string& k = q.nodes()[l].id;
    PsiImage adj = psi_adjacent(q, ctx, k);
    Membership m = verify_exchange_image(q, k, Z);
    auto [image, transported] = exchange_image_link(q, ctx, k);
    bool linked = image == transported;
    ojson j = membership_json(m);
    j["node"] = k;
    j["psi_initial"] = format_psi(psi_initial(q, ctx, k));
    j["psi_adjacent"] = format_psi(adj);
    j["linked"] = linked;
    nodes.push_back(j);
    r.pass = r.pass && m.ok && linked;
    r.text << "node " << k << ": psi(x') = " << format_psi(adj) << "\n  exchange image " << verdict(m.ok)
           << ", link " << verdict(linked) << "\n";
  }
  r.j["nodes"] = nodes;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Quantum cohomology presentations and cluster embeddings of quiver varieties", "qhc"};
  app.require_subcommand(1);
  app.add_option("--pmax", cfg.pmax, "Largest insertion power in the node relations (default: max dim + 2)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--max-depth", cfg.max_depth, "Mutation depth for cluster enumeration")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  app.add_option("--qorder", cfg.qorder, "Degree box bound for the QDE check")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  app.add_flag("--equivariant", cfg.equivariant, "Keep the frozen Chern roots u");
  app.add_option("--order", cfg.order, "Monomial order: grevlex or lex")->capture_default_str();
  app.add_flag("--json", cfg.json, "JSON report");
  app.add_option("--report", cfg.report, "Report format: text or json")->capture_default_str();
  app.add_option("--jobs", cfg.jobs, "OpenMP threads")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--budget-steps", cfg.budget_steps, "Groebner reduction step budget")->capture_default_str();

  std::function<void(const RunConfig&, Report&)> action;
  std::string command;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help,
                  void (*fn)(const RunConfig&, Report&), const std::string& full) {
    CLI::App* s = parent->add_subcommand(name, help);
    s->fallthrough();
    s->add_option("file", cfg.file, "Quiver JSON file")->required();
    s->callback([&, fn, full] {
      action = fn;
      command = full;
    });
    return s;
  };
  leaf(&app, "validate", "Structural and stability checks", cmd_validate, "validate");
  leaf(&app, "present", "Print the ideal generators", cmd_present, "present");
  leaf(&app, "groebner", "Reduced Groebner basis of the presentation", cmd_groebner, "groebner");

  CLI::App* verify = app.add_subcommand("verify", "Identity checks");
  verify->fallthrough();
  verify->require_subcommand(1);
  leaf(verify, "exchange", "Exchange relations lie in the ideal", cmd_verify_exchange, "verify exchange")
      ->add_option("--node", cfg.node, "Only this gauge node");
  leaf(verify, "type-a", "Type A closed forms of psi and the chain identities", cmd_verify_type_a, "verify type-a");
  leaf(verify, "vgit", "Presentations at theta and -theta agree after inverting Q", cmd_verify_vgit, "verify vgit");
  leaf(verify, "qde", "I-function coefficient recursion", cmd_verify_qde, "verify qde");
  leaf(verify, "separation", "F-polynomials, g-vectors and separation with principal coefficients",
       cmd_verify_separation, "verify separation");

  CLI::App* cluster = app.add_subcommand("cluster", "Seeds and cluster variables");
  cluster->fallthrough();
  cluster->require_subcommand(1);
  leaf(cluster, "mutate", "Mutate the initial seed along a path", cmd_cluster_mutate, "cluster mutate")
      ->add_option("--path", cfg.path, "Comma-separated directions, e.g. 1,2,1");
  leaf(cluster, "enumerate", "All cluster variables up to --max-depth", cmd_cluster_enumerate, "cluster enumerate");

  CLI::App* embed = leaf(&app, "embed", "Images under psi and their verification", cmd_embed, "embed");
  embed->add_option("--path", cfg.path, "Mutation path of the cluster variable to map");
  embed->add_option("--index", cfg.index, "Position of the cluster variable in the mutated seed");
  embed->add_flag("--type-a", cfg.type_a, "Verify the type A closed forms");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  if (cfg.report != "text" && cfg.report != "json") {
    err << "error: --report must be text or json\n";
    return 2;
  }
  if (cfg.jobs < 1) {
    err << "error: --jobs must be positive\n";
    return 2;
  }
  const bool as_json = cfg.json || cfg.report == "json";
  omp_set_num_threads(cfg.jobs);

  Report rep;
  rep.j["schema"] = 1;
  rep.j["command"] = command;
  rep.j["file"] = cfg.file;
  auto fail = [&](int code, const std::string& kind, const std::string& msg) {
    if (as_json) {
      ojson j{{"schema", 1}, {"command", command}, {"file", cfg.file}, {"error", kind}, {"message", msg}};
      out << j.dump(2) << "\n";
    }
    err << "error: " << msg << "\n";
    return code;
  };
  try {
    action(cfg, rep);
  } catch (const BudgetExceeded& e) {
    return fail(3, "budget", e.what());
  } catch (const InputError& e) {
    return fail(2, "input", e.what());
  } catch (const QuiverError& e) {
    return fail(2, "quiver", e.what());
  } catch (const ArgumentError& e) {
    return fail(2, "argument", e.what());
  } catch (const Error& e) {
    return fail(1, "internal", e.what());
  }

  if (as_json) {
    ojson j{{"schema", 1}, {"command", command}, {"file", cfg.file}, {"pass", rep.pass}};
    for (auto it = rep.j.begin(); it != rep.j.end(); ++it)
      if (!j.contains(it.key())) j[it.key()] = it.value();
    out << j.dump(2) << "\n";
  } else {
    out << rep.text.str() << command << ": " << verdict(rep.pass) << "\n";
  }
  return rep.pass ? 0 : 1;
}

}  // namespace qhc
