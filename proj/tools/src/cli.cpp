#include "liesym_cli/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <sstream>

#include "liesym/buckpi.hpp"
#include "liesym/claws.hpp"
#include "liesym/detsys.hpp"
#include "liesym/errors.hpp"
#include "liesym/invariants.hpp"
#include "liesym/parse.hpp"
#include "liesym/varcalc.hpp"

namespace liesym::cli {

namespace {

using json = nlohmann::ordered_json;

/// Raised for bad command-line input that the library cannot detect.
class InputError : public Error {
 public:
  using Error::Error;
};

struct Options {
  std::string file;
  bool plain = false;
  int degree = 3;
  std::optional<int> order_cap;
  std::optional<unsigned> seed;

  std::string system, vf, with, lagrangian, current, matrix, csv, eta, zeta, expr;
  std::vector<std::string> exprs, points, chars;
  std::optional<int> order;
  bool recursive = false;
};

struct Report {
  json result = json::object();
  std::string plain;
  int status = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Session {
 public:
  explicit Session(const Options& o) : opt_(o) {
    if (opt_.file.empty()) throw InputError("--file is required");
    problem_ = parse_problem(read_file(opt_.file));
  }

  const Context& ctx() const { return problem_.context; }
  const Problem& problem() const { return problem_; }
  ReduceOptions reduce() const { return ReduceOptions{opt_.order_cap}; }

  std::string fmt(const Expr& e) const { return format_expr(e, ctx()); }
  Expr expr(const std::string& text) const { return parse_expr(text, ctx()); }

  json exprs(const std::vector<Expr>& es) const {
    json out = json::array();
    for (const Expr& e : es) out.push_back(fmt(e));
    return out;
  }

  json field(const VectorField& v) const {
    json xi = json::object(), phi = json::object();
    for (int i = 0; i < ctx().p(); ++i) xi[ctx().indep_name(i)] = fmt(v.xi[static_cast<std::size_t>(i)]);
    for (int a = 0; a < ctx().q(); ++a) phi[ctx().dep_name(a)] = fmt(v.phi[static_cast<std::size_t>(a)]);
    return json{{"xi", xi}, {"phi", phi}};
  }

  std::string field_text(const VectorField& v) const {
    std::string s;
    for (int i = 0; i < ctx().p(); ++i)
      s += (s.empty() ? "" : "; ") + std::string("xi[") + ctx().indep_name(i) + "] = " +
           fmt(v.xi[static_cast<std::size_t>(i)]);
    for (int a = 0; a < ctx().q(); ++a)
      s += "; phi[" + ctx().dep_name(a) + "] = " + fmt(v.phi[static_cast<std::size_t>(a)]);
    return s;
  }

 private:
  const Options& opt_;
  Problem problem_;
};

std::string yes_no(bool b) { return b ? "true" : "false"; }

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw InputError(std::string(flag) + " is required");
}

Report cmd_prolong(const Options& o) {
  Session s(o);
  require(o.vf, "--vf");
  if (!o.order || *o.order < 0) throw InputError("--order must be a nonnegative integer");
  const VectorField& v = s.problem().vfield(o.vf);
  ProlongedVectorField pv = o.recursive ? prolong_recursive(v, *o.order, s.ctx()) : prolong(v, *o.order, s.ctx());
  Report r;
  json coeffs = json::object();
  for (const auto& [jet, c] : pv.coeffs) {
    coeffs[format_jet(jet, s.ctx())] = s.fmt(c);
    r.plain += format_jet(jet, s.ctx()) + ": " + s.fmt(c) + "\n";
  }
  r.result = json{{"order", pv.order}, {"field", s.field(v)}, {"coefficients", coeffs}};
  return r;
}

Report cmd_determine(const Options& o) {
  Session s(o);
  require(o.system, "--system");
  DeterminingSystem ds = determining_equations(s.problem().system(o.system), s.ctx(), s.reduce());
  Report r;
  json unknowns = json::array();
  for (const auto& n : ds.unknown_names) unknowns.push_back(n);
  r.result = json{{"unknowns", unknowns},
                  {"splitting_variables", s.exprs(ds.splitting_vars)},
                  {"equations", s.exprs(ds.equations)}};
  for (const Expr& e : ds.equations) r.plain += "0 = " + s.fmt(e) + "\n";
  return r;
}

Report cmd_solve(const Options& o) {
  Session s(o);
  require(o.system, "--system");
  if (o.degree < 0) throw InputError("--degree must be nonnegative");
  const DiffSystem& sys = s.problem().system(o.system);
  DeterminingSystem ds = determining_equations(sys, s.ctx(), s.reduce());
  LinearSystemReport rep;
  auto basis = solve_determining(ds, Ansatz{o.degree}, s.ctx(), nullptr, &rep);
  Report r;
  json fields = json::array();
  bool all = true;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    fields.push_back(s.field(basis[k]));
    all = all && check_symmetry(basis[k], sys, s.ctx(), s.reduce());
    r.plain += "v" + std::to_string(k + 1) + ": " + s.field_text(basis[k]) + "\n";
  }
  r.result = json{{"degree", o.degree},
                  {"parameters", rep.params},
                  {"rows", rep.equations},
                  {"kernel_dimension", rep.kernel_dim},
                  {"all_verified", all},
                  {"basis", fields}};
  r.plain = "kernel dimension " + std::to_string(rep.kernel_dim) + "\n" + r.plain;
  r.status = all ? 0 : 1;
  return r;
}

Report cmd_check_symmetry(const Options& o) {
  Session s(o);
  require(o.system, "--system");
  require(o.vf, "--vf");
  auto defects = symmetry_defect(s.problem().vfield(o.vf), s.problem().system(o.system), s.ctx(), s.reduce());
  bool ok = true;
  for (const Expr& d : defects) ok = ok && d.is_zero_const();
  Report r;
  r.result = json{{"symmetric", ok}, {"defects", s.exprs(defects)}};
  r.plain = "symmetric: " + yes_no(ok) + "\n";
  for (const Expr& d : defects) r.plain += "defect: " + s.fmt(d) + "\n";
  r.status = ok ? 0 : 1;
  return r;
}

Report cmd_bracket(const Options& o) {
  Session s(o);
  require(o.vf, "--vf");
  require(o.with, "--with");
  VectorField b = lie_bracket(s.problem().vfield(o.vf), s.problem().vfield(o.with), s.ctx());
  Report r;
  r.result = json{{"field", s.field(b)}};
  r.plain = s.field_text(b) + "\n";
  return r;
}

Report cmd_euler_lagrange(const Options& o) {
  Session s(o);
  require(o.lagrangian, "--lagrangian");
  auto E = euler_lagrange(s.problem().lagrangian(o.lagrangian), s.ctx());
  Report r;
  json eqs = json::object();
  for (int a = 0; a < s.ctx().q(); ++a) {
    eqs[s.ctx().dep_name(a)] = s.fmt(E[static_cast<std::size_t>(a)]);
    r.plain += "E_" + s.ctx().dep_name(a) + " = " + s.fmt(E[static_cast<std::size_t>(a)]) + "\n";
  }
  r.result = json{{"equations", eqs}};
  return r;
}

Report cmd_varsym_defect(const Options& o) {
  Session s(o);
  require(o.vf, "--vf");
  require(o.lagrangian, "--lagrangian");
  const VectorField& v = s.problem().vfield(o.vf);
  const Expr& L = s.problem().lagrangian(o.lagrangian);
  Expr d = variational_symmetry_defect(v, L, s.ctx());
  Report r;
  r.result = json{{"defect", s.fmt(d)}, {"variational_symmetry", d.is_zero_const()}};
  r.plain = "defect: " + s.fmt(d) + "\n";
  if (!o.current.empty()) {
    bool ok = divergence_symmetry_check(v, L, s.problem().current(o.current), s.ctx());
    r.result["divergence_symmetry"] = ok;
    r.plain += "divergence symmetry: " + yes_no(ok) + "\n";
  }
  return r;
}

Report cmd_noether(const Options& o) {
  Session s(o);
  require(o.vf, "--vf");
  require(o.lagrangian, "--lagrangian");
  const VectorField& v = s.problem().vfield(o.vf);
  const Expr& L = s.problem().lagrangian(o.lagrangian);
  std::optional<std::vector<Expr>> B;
  if (!o.current.empty()) B = s.problem().current(o.current);
  ConservedCurrent F = noether_current_first_order(v, L, s.ctx(), B);
  Characteristic Q = characteristic_of(v, s.ctx());
  bool ok = verify_noether_identity(F, Q, L, s.ctx());
  Report r;
  r.result = json{{"current", s.exprs(F)}, {"characteristic", s.exprs(Q)}, {"identity_holds", ok}};
  for (std::size_t i = 0; i < F.size(); ++i)
    r.plain += "F^" + s.ctx().indep_name(static_cast<int>(i)) + " = " + s.fmt(F[i]) + "\n";
  r.plain += "identity holds: " + yes_no(ok) + "\n";
  r.status = ok ? 0 : 1;
  return r;
}

Report cmd_check_claw(const Options& o) {
  Session s(o);
  require(o.system, "--system");
  require(o.current, "--current");
  const auto& F = s.problem().current(o.current);
  Expr div = total_divergence(F, s.ctx());
  Expr red = reduce_mod_system(div, s.problem().system(o.system), s.ctx(), s.reduce());
  bool ok = red.is_zero_const();
  Report r;
  r.result = json{{"conservation_law", ok}, {"divergence", s.fmt(div)}, {"reduced", s.fmt(red)}};
  r.plain = "conservation law: " + yes_no(ok) + "\ndivergence: " + s.fmt(div) + "\nreduced: " + s.fmt(red) + "\n";
  r.status = ok ? 0 : 1;
  return r;
}

Report cmd_check_char_form(const Options& o) {
  Session s(o);
  require(o.system, "--system");
  require(o.current, "--current");
  std::vector<Expr> Q;
  for (const auto& c : o.chars) Q.push_back(s.expr(c));
  bool ok = verify_characteristic_form(s.problem().current(o.current), Q, s.problem().system(o.system), s.ctx());
  Report r;
  r.result = json{{"holds", ok}, {"characteristic", s.exprs(Q)}};
  r.plain = "characteristic form holds: " + yes_no(ok) + "\n";
  r.status = ok ? 0 : 1;
  return r;
}

Report cmd_null_div(const Options& o) {
  Session s(o);
  require(o.current, "--current");
  Expr div = total_divergence(s.problem().current(o.current), s.ctx());
  bool ok = div.is_zero_const();
  Report r;
  r.result = json{{"null_divergence", ok}, {"divergence", s.fmt(div)}};
  r.plain = "null divergence: " + yes_no(ok) + "\ndivergence: " + s.fmt(div) + "\n";
  r.status = ok ? 0 : 1;
  return r;
}

Report cmd_check_invariant(const Options& o) {
  Session s(o);
  require(o.vf, "--vf");
  require(o.expr, "--expr");
  const VectorField& v = s.problem().vfield(o.vf);
  Expr f = s.expr(o.expr);
  int n = o.order ? *o.order : jet_order(f);
  if (n < 0) throw InputError("--order must be nonnegative");
  Expr d = apply_prolonged(prolong(v, n, s.ctx()), f, s.ctx());
  bool ok = d.is_zero_const();
  Report r;
  r.result = json{{"order", n}, {"invariant", ok}, {"defect", s.fmt(d)}};
  r.plain = "invariant: " + yes_no(ok) + "\ndefect: " + s.fmt(d) + "\n";
  r.status = ok ? 0 : 1;
  return r;
}

Report cmd_next_invariant(const Options& o) {
  Session s(o);
  require(o.eta, "--eta");
  require(o.zeta, "--zeta");
  Expr w = next_invariant(s.expr(o.eta), s.expr(o.zeta), s.ctx());
  Report r;
  r.result = json{{"invariant", s.fmt(w)}};
  r.plain = s.fmt(w) + "\n";
  if (!o.vf.empty()) {
    bool ok = differential_invariant_check(s.problem().vfield(o.vf), jet_order(w), w, s.ctx());
    r.result["verified"] = ok;
    r.plain += "verified: " + yes_no(ok) + "\n";
    r.status = ok ? 0 : 1;
  }
  return r;
}

Report cmd_char_system(const Options& o) {
  Session s(o);
  require(o.vf, "--vf");
  std::string text = characteristic_system(s.problem().vfield(o.vf), s.ctx());
  Report r;
  json lines = json::array();
  std::stringstream ss(text);
  for (std::string line; std::getline(ss, line);) lines.push_back(line);
  r.result = json{{"equations", lines}};
  r.plain = text;
  return r;
}

Report cmd_pi(const Options& o) {
  DimensionalModel m;
  if (!o.csv.empty() == !o.matrix.empty()) throw InputError("pi needs exactly one of --matrix or --csv");
  if (!o.csv.empty()) {
    m = read_dimension_csv(read_file(o.csv));
  } else {
    Session s(o);
    m = s.problem().dimension_model(o.matrix);
  }
  PiBasis pb = pi_basis(m);
  auto products = power_products(pb, m.derived_names);
  json basis = json::array();
  for (std::size_t k = 0; k < pb.B.cols(); ++k) {
    json col = json::array();
    for (std::size_t j = 0; j < pb.B.rows(); ++j) col.push_back(to_string(pb.B(j, k)));
    basis.push_back(col);
  }
  json names = json::array();
  for (const auto& n : m.derived_names) names.push_back(n);
  Report r;
  r.result = json{{"rank", pb.s},
                  {"kernel_dimension", pb.B.cols()},
                  {"derived", names},
                  {"basis", basis},
                  {"power_products", products}};
  r.plain = "rank " + std::to_string(pb.s) + "\n";
  for (std::size_t k = 0; k < products.size(); ++k)
    r.plain += "pi" + std::to_string(k + 1) + " = " + products[k] + "\n";
  return r;
}

Assignment parse_point(const std::string& text, const Session& s) {
  Assignment a;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw InputError("point entry '" + item + "' lacks '='");
    Expr var = s.expr(item.substr(0, eq));
    if (var.kind() != Kind::Indep && var.kind() != Kind::Jet && var.kind() != Kind::Param)
      throw InputError("point entry '" + item + "' does not name a coordinate");
    auto value = parse_rational(item.substr(eq + 1));
    if (!value) throw InputError("point entry '" + item + "' has a non-rational value");
    a[var] = *value;
  }
  return a;
}

Report cmd_rank_probe(const Options& o) {
  Session s(o);
  if (o.system.empty() == o.exprs.empty()) throw InputError("rank-probe needs exactly one of --system or --expr");
  if (o.points.empty()) throw InputError("rank-probe needs at least one --point");
  std::vector<Assignment> samples;
  for (const auto& p : o.points) samples.push_back(parse_point(p, s));
  bool ok;
  if (!o.system.empty()) {
    ok = rank_probe(s.problem().system(o.system), samples, s.ctx());
  } else {
    std::vector<Expr> P;
    for (const auto& e : o.exprs) P.push_back(s.expr(e));
    ok = rank_probe(P, samples, s.ctx());
  }
  Report r;
  r.result = json{{"maximal_rank", ok}, {"samples", samples.size()}};
  r.plain = "maximal rank: " + yes_no(ok) + "\n";
  r.status = ok ? 0 : 1;
  return r;
}

json inputs_of(const CLI::App& app, const CLI::App& sub) {
  json in = json::object();
  for (const CLI::App* a : {&app, &sub}) {
    for (const CLI::Option* opt : a->get_options()) {
      if (opt->count() == 0) continue;
      std::string name = opt->get_single_name();
      if (name == "help" || name == "plain") continue;
      const auto& res = opt->results();
      if (opt->get_type_size() == 0)
        in[name] = true;
      else if (opt->get_items_expected_max() > 1)
        in[name] = res;
      else
        in[name] = res.back();
    }
  }
  return in;
}

using Handler = std::function<Report(const Options&)>;

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Symbolic Lie symmetry analysis of differential equations", "liesym"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--file,-f", o.file, "Problem file");
  app.add_flag("--plain", o.plain, "Human-readable text instead of JSON");
  app.add_option("--degree", o.degree, "Polynomial ansatz degree")->capture_default_str();
  app.add_option("--order-cap", o.order_cap, "Highest jet order reachable during reduction");
  app.add_option("--seed", o.seed, "Seed for randomized corpora (recorded only)");

  std::vector<std::pair<CLI::App*, Handler>> commands;
  auto add = [&](const char* name, const char* help, Handler h) {
    CLI::App* sub = app.add_subcommand(name, help);
    commands.emplace_back(sub, std::move(h));
    return sub;
  };

  auto* c = add("prolong", "Prolongation coefficients of a vector field", cmd_prolong);
  c->add_option("--vf", o.vf, "Vector field name");
  c->add_option("--order", o.order, "Prolongation order");
  c->add_flag("--recursive", o.recursive, "Use the recursive construction");

  c = add("determine", "Determining equations of a system", cmd_determine);
  c->add_option("--system", o.system, "System name");

  c = add("solve", "Symmetry algebra from a polynomial ansatz", cmd_solve);
  c->add_option("--system", o.system, "System name");

  c = add("check-symmetry", "Infinitesimal symmetry criterion", cmd_check_symmetry);
  c->add_option("--system", o.system, "System name");
  c->add_option("--vf", o.vf, "Vector field name");

  c = add("bracket", "Lie bracket of two vector fields", cmd_bracket);
  c->add_option("--vf", o.vf, "First vector field");
  c->add_option("--with", o.with, "Second vector field");

  c = add("euler-lagrange", "Euler-Lagrange expressions of a Lagrangian", cmd_euler_lagrange);
  c->add_option("--lagrangian", o.lagrangian, "Lagrangian name");

  c = add("varsym-defect", "Variational symmetry defect", cmd_varsym_defect);
  c->add_option("--vf", o.vf, "Vector field name");
  c->add_option("--lagrangian", o.lagrangian, "Lagrangian name");
  c->add_option("--current", o.current, "Divergence term B");

  c = add("noether", "Conserved current of a variational symmetry", cmd_noether);
  c->add_option("--vf", o.vf, "Vector field name");
  c->add_option("--lagrangian", o.lagrangian, "Lagrangian name");
  c->add_option("--current", o.current, "Divergence term B");

  c = add("check-claw", "Conservation law modulo a system", cmd_check_claw);
  c->add_option("--system", o.system, "System name");
  c->add_option("--current", o.current, "Current name");

  c = add("check-char-form", "Characteristic form of a conservation law", cmd_check_char_form);
  c->add_option("--system", o.system, "System name");
  c->add_option("--current", o.current, "Current name");
  c->add_option("--char", o.chars, "Characteristic entry, one per equation");

  c = add("null-div", "Identically vanishing divergence", cmd_null_div);
  c->add_option("--current", o.current, "Current name");

  c = add("check-invariant", "Differential invariant check", cmd_check_invariant);
  c->add_option("--vf", o.vf, "Vector field name");
  c->add_option("--expr", o.expr, "Candidate invariant");
  c->add_option("--order", o.order, "Prolongation order (default: jet order of the expression)");

  c = add("next-invariant", "Higher invariant by implicit differentiation", cmd_next_invariant);
  c->add_option("--eta", o.eta, "Invariant of order n");
  c->add_option("--zeta", o.zeta, "Invariant of order n+1");
  c->add_option("--vf", o.vf, "Vector field to verify against");

  c = add("char-system", "Characteristic ODE system of a vector field", cmd_char_system);
  c->add_option("--vf", o.vf, "Vector field name");

  c = add("pi", "Dimensionless power products", cmd_pi);
  c->add_option("--matrix", o.matrix, "Dimension matrix name");
  c->add_option("--csv", o.csv, "Dimension matrix CSV file");

  c = add("rank-probe", "Maximal rank at sample points", cmd_rank_probe);
  c->add_option("--system", o.system, "System name");
  c->add_option("--expr", o.exprs, "Defining expression (repeatable)");
  c->add_option("--point", o.points, "Sample such as \"x=0,u_x=1\" (repeatable)");

  std::vector<std::string> argv_store{"liesym"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "liesym: " << e.what() << "\n";
    return 2;
  }

  for (auto& [sub, handler] : commands) {
    if (!sub->parsed()) continue;
    Report r;
    try {
      r = handler(o);
    } catch (const NotASymmetry& e) {
      err << "liesym " << sub->get_name() << ": " << e.what() << "\n";
      return 1;
    } catch (const DegenerateDenominator& e) {
      err << "liesym " << sub->get_name() << ": " << e.what() << "\n";
      return 1;
    } catch (const OrderCapExceeded& e) {
      err << "liesym " << sub->get_name() << ": " << e.what() << "\n";
      return 1;
    } catch (const std::exception& e) {
      err << "liesym " << sub->get_name() << ": " << e.what() << "\n";
      return 2;
    }
    if (o.plain) {
      out << r.plain;
    } else {
      json doc{{"command", sub->get_name()}, {"inputs", inputs_of(app, *sub)}, {"result", r.result}};
      out << doc.dump(2) << "\n";
    }
    return r.status;
  }
  err << "liesym: no subcommand\n";
  return 2;
}

}  // namespace liesym::cli
