// pqbask command-line front end. Links only against the C API.
//
//   pqbask eval      pointwise B or B* evaluation with series diagnostics
//   pqbask moments   series vs closed-form moments on a grid
//   pqbask bounds    audit of the claimed central-moment bounds
//   pqbask converge  weighted-norm convergence table for a (p_n, q_n) schedule
//   pqbask figure    f, B f, B* f and their errors on a grid
//   pqbask theorem2  empirical constant for the omega_2 error bound
//   pqbask theorem3  |B* f - f| against the f*(z) = f(z^2) modulus bound

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pqbask/pqbask.h"

using nlohmann::ordered_json;

namespace {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,
  kNotConverged = 3,
  kEvaluation = 4,
};

/// Carries an exit code out of a subcommand.
struct Failure {
  int code;
  std::string message;
};

[[noreturn]] void usage_error(const std::string& msg) { throw Failure{kUsage, msg}; }

// Library failures during computation are evaluation errors; failures while
// validating user input are usage errors.
void check(pqb_status st, int code = kEvaluation) {
  if (st != PQB_OK) throw Failure{code, pqb_last_error()};
}

std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

struct ExprDeleter {
  void operator()(pqb_expr* e) const { pqb_expr_free(e); }
};
using ExprHandle = std::unique_ptr<pqb_expr, ExprDeleter>;

ExprHandle parse_expr(const std::string& text, const char* var = "x") {
  pqb_expr* e = nullptr;
  const pqb_status st = pqb_expr_parse_var(text.c_str(), var, &e);
  if (st != PQB_OK) usage_error("cannot parse '" + text + "': " + pqb_last_error());
  return ExprHandle(e);
}

double parse_real(const std::string& s, const std::string& what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    usage_error("invalid number '" + s + "' in " + what);
  }
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

pqb_grid_spec parse_range(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) usage_error("range must be start:stop:step, got '" + text + "'");
  pqb_grid_spec g{parse_real(parts[0], "range"), parse_real(parts[1], "range"),
                  parse_real(parts[2], "range")};
  std::size_t count = 0;
  check(pqb_grid_size(g, &count), kUsage);
  return g;
}

std::vector<double> grid_points(const pqb_grid_spec& g) {
  std::size_t count = 0;
  check(pqb_grid_size(g, &count), kUsage);
  std::vector<double> pts(count);
  for (std::size_t i = 0; i < count; ++i) check(pqb_grid_point(g, i, &pts[i]));
  return pts;
}

ordered_json grid_json(const pqb_grid_spec& g) {
  return {{"start", g.start}, {"stop", g.stop}, {"step", g.step}};
}

/// Column-ordered table rendered as CSV or JSON.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<ordered_json>> rows;
  ordered_json meta = ordered_json::object();
  ordered_json summary;  // null when absent
};

std::string render_cell(const ordered_json& v) {
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
  if (v.is_number_float()) return fmt(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return "";
}

ordered_json json_number(double v) {
  // JSON has no infinities; keep them readable instead of null.
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  return v;
}

std::string render(const Table& t, const std::string& format) {
  std::ostringstream os;
  if (format == "json") {
    ordered_json doc;
    doc["meta"] = t.meta;
    ordered_json rows = ordered_json::array();
    for (const auto& r : t.rows) {
      ordered_json obj = ordered_json::object();
      for (std::size_t i = 0; i < t.columns.size(); ++i) {
        obj[t.columns[i]] = r[i].is_number_float() ? json_number(r[i].get<double>()) : r[i];
      }
      rows.push_back(std::move(obj));
    }
    doc["rows"] = std::move(rows);
    if (!t.summary.is_null()) doc["summary"] = t.summary;
    os << doc.dump(2) << '\n';
    return os.str();
  }
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << render_cell(r[i]);
    os << '\n';
  }
  if (!t.summary.is_null()) {
    os << "# summary";
    for (const auto& [key, value] : t.summary.items()) os << ',' << key << '=' << render_cell(value);
    os << '\n';
  }
  return os.str();
}

struct Common {
  double p = 0.0;
  double q = 0.0;
  unsigned n = 0;
  double eps = 1e-12;
  std::size_t kmax = 10000;
  unsigned growth = 2;
  std::string format = "csv";
  std::string out;

  pqb_policy policy() const { return {eps, kmax, growth}; }

  void validate(bool with_pq = true) const {
    if (eps <= 0.0) usage_error("--eps must be > 0");
    if (kmax == 0) usage_error("--kmax must be >= 1");
    if (!with_pq) return;
    if (n < 1) usage_error("--n must be >= 1");
    check(pqb_check_params(p, q), kUsage);
  }

  ordered_json policy_json() const {
    return {{"tail_tolerance", eps}, {"max_terms", kmax}, {"growth_exponent", growth}};
  }
};

void add_policy_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--eps", c.eps, "Series tail tolerance")->capture_default_str();
  cmd->add_option("--kmax", c.kmax, "Maximum number of series terms")->capture_default_str();
  cmd->add_option("--growth", c.growth, "Declared polynomial growth m of f")
      ->capture_default_str();
}

void add_output_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--out", c.out, "Output path (default: standard output)");
}

void add_pq_flags(CLI::App* cmd, Common& c, bool required) {
  auto* p = cmd->add_option("--p", c.p, "Parameter p, 0 < q < p <= 1");
  auto* q = cmd->add_option("--q", c.q, "Parameter q, 0 < q < p <= 1");
  auto* n = cmd->add_option("--n", c.n, "Operator order n >= 1");
  if (required) {
    p->required();
    q->required();
    n->required();
  } else {
    p->capture_default_str();
    q->capture_default_str();
    n->capture_default_str();
  }
}

void emit(const Table& t, const Common& c) {
  const std::string text = render(t, c.format);
  if (c.out.empty()) {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw Failure{kUsage, "cannot open output file '" + c.out + "'"};
  f << text;
}

enum class Operator { Plain, King };

pqb_series_eval apply(Operator op, pqb_function f, unsigned n, double x, const Common& c) {
  const pqb_policy pol = c.policy();
  pqb_series_eval s{};
  check(op == Operator::King ? pqb_eval_king(f, n, x, c.p, c.q, &pol, &s)
                             : pqb_eval_plain(f, n, x, c.p, c.q, &pol, &s));
  return s;
}

// ---- monomials for moment tables ----
double monomial(double t, void* user) {
  const int i = *static_cast<const int*>(user);
  return i == 0 ? 1.0 : (i == 1 ? t : t * t);
}

// ---- subcommands ----

struct EvalArgs {
  Common c;
  std::string f;
  double x = 0.0;
  Operator op = Operator::Plain;
};

int run_eval(const EvalArgs& a) {
  a.c.validate();
  if (!(a.x >= 0.0)) usage_error("--x must be >= 0");
  const ExprHandle f = parse_expr(a.f);
  const pqb_series_eval s = apply(a.op, pqb_function_from_expr(f.get()), a.c.n, a.x, a.c);

  Table t;
  t.columns = {"value", "terms_used", "accumulated_weight", "tail_error_estimate",
               "converged"};
  t.rows.push_back({s.value, static_cast<std::uint64_t>(s.terms_used), s.accumulated_weight,
                    s.tail_error_estimate, s.converged != 0});
  t.meta = {{"command", "eval"},
            {"f", a.f},
            {"operator", a.op == Operator::King ? "king" : "plain"},
            {"n", a.c.n},
            {"p", a.c.p},
            {"q", a.c.q},
            {"x", a.x},
            {"policy", a.c.policy_json()}};
  emit(t, a.c);
  return s.converged ? kOk : kNotConverged;
}

struct MomentsArgs {
  Common c;
  std::string range = "0:5:0.25";
  Operator op = Operator::Plain;
};

int run_moments(const MomentsArgs& a) {
  a.c.validate();
  const pqb_grid_spec g = parse_range(a.range);
  int idx[3] = {0, 1, 2};
  bool all_converged = true;

  Table t;
  t.columns = {"x",         "m0_series", "m1_series", "m2_series",
               "m0_closed", "m1_closed", "m2_closed", "max_abs_gap"};
  for (double x : grid_points(g)) {
    std::vector<ordered_json> row{x};
    double series[3];
    double closed[3];
    for (int i = 0; i < 3; ++i) {
      const pqb_series_eval s = apply(a.op, {nullptr, monomial, &idx[i]}, a.c.n, x, a.c);
      all_converged = all_converged && s.converged;
      series[i] = s.value;
      check(a.op == Operator::King
                ? pqb_king_moment_closed(i, a.c.n, x, a.c.p, a.c.q, &closed[i])
                : pqb_moment_closed(i, a.c.n, x, a.c.p, a.c.q, &closed[i]));
    }
    double gap = 0.0;
    for (int i = 0; i < 3; ++i) {
      row.push_back(series[i]);
      gap = std::max(gap, std::fabs(series[i] - closed[i]));
    }
    for (int i = 0; i < 3; ++i) row.push_back(closed[i]);
    row.push_back(gap);
    t.rows.push_back(std::move(row));
  }
  t.meta = {{"command", "moments"},
            {"operator", a.op == Operator::King ? "king" : "plain"},
            {"n", a.c.n},
            {"p", a.c.p},
            {"q", a.c.q},
            {"grid", grid_json(g)},
            {"policy", a.c.policy_json()}};
  emit(t, a.c);
  return all_converged ? kOk : kNotConverged;
}

struct BoundsArgs {
  Common c;
  std::string n_list = "2,10";
  std::string pq_list = "0.9/0.8,0.99/0.98";
  std::string range = "0:5:0.25";
  std::string x_list;
};

int run_bounds(const BoundsArgs& a) {
  a.c.validate(false);
  std::vector<unsigned> ns;
  for (const auto& s : split(a.n_list, ',')) {
    const double v = parse_real(s, "--n-list");
    if (v < 1 || v != std::floor(v)) usage_error("--n-list entries must be integers >= 1");
    ns.push_back(static_cast<unsigned>(v));
  }
  std::vector<double> ps, qs;
  for (const auto& s : split(a.pq_list, ',')) {
    const auto pair = split(s, '/');
    if (pair.size() != 2) usage_error("--pq-list entries must be p/q, got '" + s + "'");
    ps.push_back(parse_real(pair[0], "--pq-list"));
    qs.push_back(parse_real(pair[1], "--pq-list"));
    check(pqb_check_params(ps.back(), qs.back()), kUsage);
  }
  std::vector<double> xs;
  ordered_json xmeta;
  if (!a.x_list.empty()) {
    for (const auto& s : split(a.x_list, ',')) {
      xs.push_back(parse_real(s, "--x-list"));
      if (!(xs.back() >= 0.0)) usage_error("--x-list entries must be >= 0");
    }
    xmeta = xs;
  } else {
    const pqb_grid_spec g = parse_range(a.range);
    xs = grid_points(g);
    xmeta = grid_json(g);
  }

  pqb_audit* raw = nullptr;
  check(pqb_bound_audit(ns.data(), ns.size(), ps.data(), qs.data(), ps.size(), xs.data(),
                        xs.size(), &raw));
  std::unique_ptr<pqb_audit, decltype(&pqb_audit_free)> audit(raw, pqb_audit_free);

  Table t;
  t.columns = {"n",           "p",          "q",
               "x",           "first_actual_abs", "first_bound_claimed",
               "first_violated", "second_actual",  "second_bound_claimed",
               "second_violated"};
  for (std::size_t i = 0; i < pqb_audit_size(audit.get()); ++i) {
    pqb_audit_row r{};
    check(pqb_audit_row_at(audit.get(), i, &r));
    t.rows.push_back({r.n, r.p, r.q, r.x, r.first_actual_abs, r.first_bound_claimed,
                      r.first_violated != 0, r.second_actual, r.second_bound_claimed,
                      r.second_violated != 0});
  }
  t.meta = {{"command", "bounds"}, {"n_list", ns}, {"p_list", ps}, {"q_list", qs},
            {"x", xmeta}};
  emit(t, a.c);
  return kOk;
}

const std::map<std::string, std::string> kBuiltinSchedules = {
    {"canonical", "p=1-1/(n+1)^2,q=1-1/(n+1)"},
    {"p1", "p=1,q=1-1/(n+1)"},
};

struct ScheduleExprs {
  ExprHandle p;
  ExprHandle q;
  std::string text;
};

ScheduleExprs parse_schedule(const std::string& spec) {
  const auto it = kBuiltinSchedules.find(spec);
  const std::string text = it != kBuiltinSchedules.end() ? it->second : spec;
  ScheduleExprs out;
  out.text = text;
  for (const auto& part : split(text, ',')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) usage_error("schedule parts must be p=<expr> or q=<expr>");
    std::string name = part.substr(0, eq);
    name.erase(0, name.find_first_not_of(" \t"));
    name.erase(name.find_last_not_of(" \t") + 1);
    ExprHandle e = parse_expr(part.substr(eq + 1), "n");
    if (name == "p") {
      out.p = std::move(e);
    } else if (name == "q") {
      out.q = std::move(e);
    } else {
      usage_error("unknown schedule parameter '" + name + "'");
    }
  }
  if (!out.p || !out.q) usage_error("schedule must define both p and q");
  return out;
}

std::vector<unsigned> parse_n_list(const std::string& text) {
  std::vector<unsigned> ns;
  for (const auto& s : split(text, ',')) {
    const double v = parse_real(s, "--n-list");
    if (v < 1 || v != std::floor(v)) usage_error("--n-list entries must be integers >= 1");
    ns.push_back(static_cast<unsigned>(v));
  }
  return ns;
}

struct ConvergeArgs {
  Common c;
  std::string schedule = "canonical";
  std::string n_list = "4,16,64,256";
  std::string range = "0:50:0.01";
};

int run_converge(const ConvergeArgs& a) {
  const ScheduleExprs sched = parse_schedule(a.schedule);
  const auto ns = parse_n_list(a.n_list);
  const pqb_grid_spec g = parse_range(a.range);

  pqb_convergence* raw = nullptr;
  const pqb_status st =
      pqb_convergence_study(pqb_function_from_expr(sched.p.get()),
                            pqb_function_from_expr(sched.q.get()), ns.data(), ns.size(), g, &raw);
  check(st, st == PQB_ERR_CONFIG ? kUsage : kEvaluation);
  std::unique_ptr<pqb_convergence, decltype(&pqb_convergence_free)> study(raw,
                                                                          pqb_convergence_free);
  Table t;
  t.columns = {"n", "p_n", "q_n", "bracket_n", "norm_e0", "norm_e1", "norm_e2"};
  ordered_json tails = ordered_json::array();
  for (std::size_t i = 0; i < pqb_convergence_size(study.get()); ++i) {
    pqb_convergence_row r{};
    check(pqb_convergence_row_at(study.get(), i, &r));
    t.rows.push_back({r.n, r.p_n, r.q_n, r.bracket_n, r.norm_e0, r.norm_e1, r.norm_e2});
    tails.push_back(r.norm_e1_tail_bound);
  }
  t.meta = {{"command", "converge"},
            {"schedule", sched.text},
            {"grid", grid_json(g)},
            {"norm_e1_tail_bounds", tails}};
  emit(t, a.c);
  return kOk;
}

struct FigureArgs {
  Common c;
  std::string f = "sin(x^2)";
  std::string range = "0:2:0.01";
};

int run_figure(const FigureArgs& a) {
  a.c.validate();
  const ExprHandle f = parse_expr(a.f);
  const pqb_function fn = pqb_function_from_expr(f.get());
  const pqb_grid_spec g = parse_range(a.range);

  Table t;
  t.columns = {"x", "f", "B_plain", "B_king", "err_plain", "err_king"};
  double sup_plain = 0.0, sup_king = 0.0, sum_plain = 0.0, sum_king = 0.0;
  bool all_converged = true;
  const auto xs = grid_points(g);
  for (double x : xs) {
    double fx = 0.0;
    check(pqb_expr_eval(f.get(), x, &fx));
    const pqb_series_eval bp = apply(Operator::Plain, fn, a.c.n, x, a.c);
    const pqb_series_eval bk = apply(Operator::King, fn, a.c.n, x, a.c);
    all_converged = all_converged && bp.converged && bk.converged;
    const double ep = bp.value - fx;
    const double ek = bk.value - fx;
    sup_plain = std::max(sup_plain, std::fabs(ep));
    sup_king = std::max(sup_king, std::fabs(ek));
    sum_plain += std::fabs(ep);
    sum_king += std::fabs(ek);
    t.rows.push_back({x, fx, bp.value, bk.value, ep, ek});
  }
  const double count = static_cast<double>(xs.size());
  t.summary = {{"sup_err_plain", sup_plain},
               {"sup_err_king", sup_king},
               {"king_better_sup", sup_king < sup_plain},
               {"mean_err_plain", sum_plain / count},
               {"mean_err_king", sum_king / count}};
  t.meta = {{"command", "figure"},
            {"f", a.f},
            {"n", a.c.n},
            {"p", a.c.p},
            {"q", a.c.q},
            {"grid", grid_json(g)},
            {"policy", a.c.policy_json()}};
  emit(t, a.c);
  return all_converged ? kOk : kNotConverged;
}

struct Theorem2Args {
  Common c;
  std::string f = "sin(x^2)";
  std::string range = "0:2:0.01";
  std::string modulus_range = "0:10:0.01";
  bool as_printed = false;
};

int run_theorem2(const Theorem2Args& a) {
  a.c.validate();
  const ExprHandle f = parse_expr(a.f);
  const pqb_grid_spec eval_grid = parse_range(a.range);
  const pqb_grid_spec mod_grid = parse_range(a.modulus_range);
  const pqb_policy pol = a.c.policy();

  pqb_theorem2* raw = nullptr;
  check(pqb_theorem2_report(pqb_function_from_expr(f.get()), a.c.n, a.c.p, a.c.q, eval_grid,
                            mod_grid, &pol, a.as_printed ? 1 : 0, &raw));
  std::unique_ptr<pqb_theorem2, decltype(&pqb_theorem2_free)> report(raw, pqb_theorem2_free);

  Table t;
  t.columns = {"x", "lhs", "delta_n", "omega2_part", "omega_part", "m_required"};
  for (std::size_t i = 0; i < pqb_theorem2_size(report.get()); ++i) {
    pqb_theorem2_row r{};
    check(pqb_theorem2_row_at(report.get(), i, &r));
    t.rows.push_back({r.x, r.lhs, r.delta_n, r.omega2_part, r.omega_part, r.m_required});
  }
  t.summary = {{"m_required_max", pqb_theorem2_m_required_max(report.get())}};
  t.meta = {{"command", "theorem2"},
            {"f", a.f},
            {"n", a.c.n},
            {"p", a.c.p},
            {"q", a.c.q},
            {"delta_form", a.as_printed ? "as-printed" : "with-x-squared"},
            {"grid", grid_json(eval_grid)},
            {"modulus_grid", grid_json(mod_grid)},
            {"policy", a.c.policy_json()}};
  emit(t, a.c);
  return kOk;
}

struct Theorem3Args {
  Common c;
  std::string f = "sin(x^2)";
  std::string range = "0.25:4:0.25";
  std::string modulus_range = "0:10:0.001";
};

int run_theorem3(const Theorem3Args& a) {
  a.c.validate();
  const ExprHandle f = parse_expr(a.f);
  const pqb_function fn = pqb_function_from_expr(f.get());
  const pqb_grid_spec g = parse_range(a.range);
  const pqb_grid_spec mod_grid = parse_range(a.modulus_range);

  Table t;
  t.columns = {"x", "lhs", "bound", "holds"};
  bool all_converged = true;
  for (double x : grid_points(g)) {
    double fx = 0.0;
    check(pqb_expr_eval(f.get(), x, &fx));
    const pqb_series_eval bk = apply(Operator::King, fn, a.c.n, x, a.c);
    all_converged = all_converged && bk.converged;
    double bound = 0.0;
    check(pqb_theorem3_bound(fn, a.c.n, x, a.c.p, a.c.q, mod_grid, &bound));
    const double lhs = std::fabs(bk.value - fx);
    t.rows.push_back({x, lhs, bound, lhs <= bound});
  }
  t.meta = {{"command", "theorem3"},
            {"f", a.f},
            {"n", a.c.n},
            {"p", a.c.p},
            {"q", a.c.q},
            {"grid", grid_json(g)},
            {"modulus_grid", grid_json(mod_grid)},
            {"policy", a.c.policy_json()}};
  emit(t, a.c);
  return all_converged ? kOk : kNotConverged;
}

const std::map<std::string, Operator> kOperators = {{"plain", Operator::Plain},
                                                    {"king", Operator::King}};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"(p,q)-Baskakov operators and their x^2-preserving King-type modification"};
  app.require_subcommand(1);

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate B or B* at a point");
  eval_cmd->add_option("--f", eval.f, "Function of x")->required();
  eval_cmd->add_option("--x", eval.x, "Evaluation point x >= 0")->required();
  eval_cmd->add_option("--operator", eval.op, "plain or king")
      ->transform(CLI::CheckedTransformer(kOperators, CLI::ignore_case));
  add_pq_flags(eval_cmd, eval.c, true);
  add_policy_flags(eval_cmd, eval.c);
  add_output_flags(eval_cmd, eval.c);

  MomentsArgs moments;
  auto* moments_cmd = app.add_subcommand("moments", "Series vs closed-form moments");
  moments_cmd->add_option("--range", moments.range, "start:stop:step")->capture_default_str();
  moments_cmd->add_option("--operator", moments.op, "plain or king")
      ->transform(CLI::CheckedTransformer(kOperators, CLI::ignore_case));
  add_pq_flags(moments_cmd, moments.c, true);
  add_policy_flags(moments_cmd, moments.c);
  add_output_flags(moments_cmd, moments.c);

  BoundsArgs bounds;
  auto* bounds_cmd = app.add_subcommand("bounds", "Audit the claimed central-moment bounds");
  bounds_cmd->add_option("--n-list", bounds.n_list, "Comma-separated orders")
      ->capture_default_str();
  bounds_cmd->add_option("--pq-list", bounds.pq_list, "Comma-separated p/q pairs")
      ->capture_default_str();
  bounds_cmd->add_option("--range", bounds.range, "x grid start:stop:step")
      ->capture_default_str();
  bounds_cmd->add_option("--x-list", bounds.x_list, "Comma-separated x values (overrides --range)");
  add_output_flags(bounds_cmd, bounds.c);

  ConvergeArgs converge;
  auto* converge_cmd = app.add_subcommand("converge", "Weighted-norm convergence table");
  converge_cmd
      ->add_option("--schedule", converge.schedule,
                   "p=<expr in n>,q=<expr in n>, or a built-in: canonical, p1")
      ->capture_default_str();
  converge_cmd->add_option("--n-list", converge.n_list, "Comma-separated orders")
      ->capture_default_str();
  converge_cmd->add_option("--range", converge.range, "x grid start:stop:step")
      ->capture_default_str();
  add_output_flags(converge_cmd, converge.c);

  FigureArgs figure;
  figure.c.n = 2;
  figure.c.p = 0.9;
  figure.c.q = 0.8;
  auto* figure_cmd = app.add_subcommand("figure", "Curves of f, B f and B* f");
  figure_cmd->add_option("--f", figure.f, "Function of x")->capture_default_str();
  figure_cmd->add_option("--range", figure.range, "start:stop:step")->capture_default_str();
  add_pq_flags(figure_cmd, figure.c, false);
  add_policy_flags(figure_cmd, figure.c);
  add_output_flags(figure_cmd, figure.c);

  Theorem2Args t2;
  auto* t2_cmd = app.add_subcommand("theorem2", "Empirical constant for the omega_2 bound");
  t2_cmd->add_option("--f", t2.f, "Function of x")->capture_default_str();
  t2_cmd->add_option("--range", t2.range, "x grid start:stop:step")->capture_default_str();
  t2_cmd->add_option("--modulus-range", t2.modulus_range, "Grid for the moduli")
      ->capture_default_str();
  t2_cmd->add_flag("--as-printed", t2.as_printed, "Use delta_n without x^2 on its first term");
  add_pq_flags(t2_cmd, t2.c, true);
  add_policy_flags(t2_cmd, t2.c);
  add_output_flags(t2_cmd, t2.c);

  Theorem3Args t3;
  auto* t3_cmd = app.add_subcommand("theorem3", "Compare |B* f - f| with the f* modulus bound");
  t3_cmd->add_option("--f", t3.f, "Function of x")->capture_default_str();
  t3_cmd->add_option("--range", t3.range, "x grid start:stop:step")->capture_default_str();
  t3_cmd->add_option("--modulus-range", t3.modulus_range, "Grid for the modulus of f*")
      ->capture_default_str();
  add_pq_flags(t3_cmd, t3.c, true);
  add_policy_flags(t3_cmd, t3.c);
  add_output_flags(t3_cmd, t3.c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*eval_cmd) return run_eval(eval);
    if (*moments_cmd) return run_moments(moments);
    if (*bounds_cmd) return run_bounds(bounds);
    if (*converge_cmd) return run_converge(converge);
    if (*figure_cmd) return run_figure(figure);
    if (*t2_cmd) return run_theorem2(t2);
    if (*t3_cmd) return run_theorem3(t3);
  } catch (const Failure& f) {
    const char* kind = f.code == kUsage ? "usage error" : "error";
    std::cerr << "pqbask: " << kind << ": " << f.message << '\n';
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "pqbask: internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kInternal;
}
