#pragma once

// Command-line front end.  Exit status: 0 when every requested fact holds,
// 1 when one does not, 2 for unreadable input or bad arguments, 3 for an
// arrow question between virtual objects that has no decision procedure,
// 4 when a universe is too large to enumerate.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qtnc/errors.hpp"
#include "qtnc/harness.hpp"
#include "qtnc/serialize.hpp"
#include "qtnc/univalence.hpp"
#include "qtnc/version.hpp"
#include "qtnc/vobj.hpp"

namespace qtnc::cli {

enum exit_code : int { ok = 0, fact_false = 1, bad_input = 2, undecided = 3, too_large = 4 };

namespace detail {

struct Options {
  std::string format = "human";
  std::string output;

  std::string from, to, label = "arrow";
  std::string x, y;
  std::string a, b, c, z;
  std::string total, base;

  unsigned window = 2;
  bool cofinite = false;
  std::uint64_t samples = 10000;
  unsigned sample_window = 3;
  std::uint64_t seed = 42;
  std::vector<std::string> checks;
  bool literal_star = false;
  unsigned threads = 0;
};

inline void add_format(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "human or machine")
      ->check(CLI::IsMember({"human", "machine"}));
  cmd->add_option("--output", o.output, "write the report to this path instead of stdout");
}

inline void add_universe(CLI::App* cmd, Options& o) {
  cmd->add_option("--window", o.window, "ground elements of the exhaustive universe");
  cmd->add_flag("--cofinite", o.cofinite, "include cofinite members in the exhaustive universe");
  cmd->add_option("--samples", o.samples, "seeded samples (0 disables sampling)");
  cmd->add_option("--sample-window", o.sample_window, "ground elements of sampled objects");
  cmd->add_option("--seed", o.seed, "sampling seed");
  cmd->add_option("--threads", o.threads, "worker threads (0: all hardware threads)");
}

struct Output {
  json machine = json::object();
  std::ostringstream human;
  int status = ok;
};

inline Obj explicit_obj(const std::string& source, const char* what) {
  const Endpoint e = endpoint_from_json(load_document(source));
  if (const auto* o = std::get_if<Obj>(&e)) return *o;
  throw parse_error(std::string(what) + ": an explicit object is required");
}

inline Endpoint endpoint(const std::string& source) {
  return endpoint_from_json(load_document(source));
}

inline const char* yes_no(bool b) { return b ? "true" : "false"; }

inline std::string field(const std::optional<bool>& b) { return b ? yes_no(*b) : "undecided"; }

inline void header(Output& out, const char* verb) {
  out.machine["tool"] = "qtnc";
  out.machine["version"] = version;
  out.machine["verb"] = verb;
}

// ---------------------------------------------------------------------------

inline void run_decide(const Options& o, Output& out) {
  header(out, "decide");
  const Endpoint from = endpoint(o.from);
  const Endpoint to = endpoint(o.to);
  const StarTemplate t = o.literal_star ? StarTemplate::literal : StarTemplate::adopted;
  const PartialVerdict v = decide(from, to, t);

  std::optional<bool> asked;
  if (o.label == "arrow") asked = v.arrow;
  else if (o.label == "star") asked = v.star;
  else if (o.label == "w") asked = v.w;
  else if (o.label == "f") asked = v.f;
  else asked = v.c;

  out.machine["from"] = to_json(from);
  out.machine["to"] = to_json(to);
  out.machine["star_template"] = star_name(t);
  out.machine["verdict"] = to_json(v);
  out.machine["label"] = o.label;
  out.machine["holds"] = asked ? json(*asked) : json(nullptr);

  out.human << describe(from) << " -> " << describe(to) << "\n";
  out.human << "  arrow  " << field(v.arrow) << "\n"
            << "  star   " << field(v.star) << "\n"
            << "  w      " << field(v.w) << "\n"
            << "  f      " << field(v.f) << "\n"
            << "  c      " << field(v.c) << "\n";
  for (const std::string& why : v.undecided) out.human << "  undecided " << why << "\n";
  out.human << "label " << o.label << ": " << field(asked) << "\n";

  if (!asked) {
    std::string reason = "undecided pair " + describe(from) + " -> " + describe(to);
    for (const std::string& why : v.undecided)
      if (why.starts_with(o.label == "c" ? "arrow" : o.label)) reason = why;
    throw undecided_pair(reason);
  }
  out.status = *asked ? ok : fact_false;
}

inline void run_limit(const Options& o, Output& out, bool is_product) {
  const char* verb = is_product ? "product" : "coproduct";
  header(out, verb);
  const Obj x = explicit_obj(o.x, "--x");
  const Obj y = explicit_obj(o.y, "--y");
  const Obj r = is_product ? product(x, y) : coproduct(x, y);
  out.machine["x"] = to_json(x);
  out.machine["y"] = to_json(y);
  out.machine["result"] = to_json(r);
  out.human << to_string(r) << "\n";
}

inline void run_factorize(const Options& o, Output& out) {
  header(out, "factorize");
  const Obj x = explicit_obj(o.from, "--from");
  const Obj y = explicit_obj(o.to, "--to");
  out.machine["from"] = to_json(x);
  out.machine["to"] = to_json(y);
  if (!arrow_exists(x, y)) {
    out.machine["arrow"] = false;
    out.human << "no arrow " << to_string(x) << " -> " << to_string(y) << "; nothing to factor\n";
    out.status = fact_false;
    return;
  }
  const VObj mid = VObj::wc(x, y);
  const PartialVerdict left = decide(Endpoint{x}, Endpoint{mid});
  const PartialVerdict right = decide(Endpoint{mid}, Endpoint{y});
  const bool wc = left.w == true && left.c == true;
  const bool f = right.f == true;
  out.machine["middle"] = to_json(mid);
  out.machine["facts"] = {{"X -(wc)-> WC(X,Y)", wc}, {"WC(X,Y) -(f)-> Y", f}};
  out.human << to_string(x) << " -(wc)-> " << describe(mid) << " -(f)-> " << to_string(y) << "\n"
            << "  X -(wc)-> WC(X,Y)  " << yes_no(wc) << "\n"
            << "  WC(X,Y) -(f)-> Y   " << yes_no(f) << "\n";
  out.status = wc && f ? ok : fact_false;
}

inline void run_exp(const Options& o, Output& out) {
  header(out, "exp");
  const Obj b = explicit_obj(o.b, "--b");
  const Obj c = explicit_obj(o.c, "--c");
  Obj r;
  if (o.a.empty()) {
    r = exp_explicit(b, c);
  } else {
    const Obj a = explicit_obj(o.a, "--a");
    try {
      r = exp_slice(a, b, c);
    } catch (const precondition_error& e) {
      throw parse_error(e.what());
    }
    out.machine["a"] = to_json(a);
  }
  out.machine["b"] = to_json(b);
  out.machine["c"] = to_json(c);
  out.machine["result"] = to_json(r);
  out.machine["isomorphic_to_terminal"] = is_iso(r, terminal());
  out.human << to_string(r) << "\n";
  if (is_iso(r, terminal())) out.human << "  isomorphic to the terminal object\n";
}

inline void run_wexp(const Options& o, Output& out) {
  header(out, "wexp");
  const Obj a = explicit_obj(o.a, "--a");
  const Obj b = explicit_obj(o.b, "--b");
  const Obj c = explicit_obj(o.c, "--c");
  VObj w = VObj::utilde();
  try {
    w = VObj::wexp(a, b, c);
  } catch (const precondition_error& e) {
    throw parse_error(e.what());
  }
  out.machine["wexp"] = to_json(w);
  out.human << describe(w) << "\n";
  if (o.z.empty()) return;
  const Obj z = explicit_obj(o.z, "--z");
  const bool into = arrow_into_vobj(z, w);
  const bool formula = arrow_exists(z, a) && label_w(product(z, b), product(z, c));
  out.machine["z"] = to_json(z);
  out.machine["arrow_into"] = into;
  out.machine["z_x_b_w_z_x_c"] = formula;
  out.human << "  Z -> WEXP          " << yes_no(into) << "\n"
            << "  Z -> A and Z x B -(w)-> Z x C  " << yes_no(formula) << "\n";
  out.status = into ? ok : fact_false;
}

inline Report run_suite(const Options& o, const std::vector<CheckSpec>& specs, const char* verb) {
  RunOptions opt;
  opt.threads = o.threads;
  opt.star = o.literal_star ? StarTemplate::literal : StarTemplate::adopted;
  std::vector<CheckSpec> selected;
  if (o.checks.empty()) {
    selected = specs;
  } else {
    for (const std::string& name : o.checks) {
      auto it = std::ranges::find_if(specs, [&](const CheckSpec& s) { return s.name == name; });
      if (it == specs.end()) throw parse_error("unknown check \"" + name + "\" for " + verb);
      selected.push_back(*it);
    }
  }
  const Universe exhaustive = Universe::exhaustive(o.window, o.cofinite);
  const Universe sampled = Universe::sampled(o.sample_window, true, o.samples, o.seed);
  check_size_guard(exhaustive);
  if (o.samples > 0) check_size_guard(sampled);

  Report report{verb, opt.star, {}};
  for (const CheckSpec& spec : selected) {
    report.checks.push_back(run_check(spec, exhaustive, opt));
    if (o.samples > 0) report.checks.push_back(run_check(spec, sampled, opt));
  }
  return report;
}

inline void emit_report(const Report& r, Output& out) {
  const json doc = to_json(r);
  for (const auto& [key, value] : doc.items()) {
    if (key == "tool") out.machine["version"] = version;
    out.machine[key] = value;
  }
  out.human << summary(r);
  out.status = r.passed() ? ok : fact_false;
}

inline void run_univalence(const Options& o, Output& out) {
  header(out, "univalence");
  if (!o.total.empty() || !o.base.empty()) {
    if (o.total.empty() || o.base.empty()) throw parse_error("--total and --base go together");
    const Obj e = explicit_obj(o.total, "--total");
    const Obj b = explicit_obj(o.base, "--base");
    if (!arrow_exists(e, b) || !label_f(e, b)) {
      out.machine["fibration"] = false;
      out.human << to_string(e) << " -> " << to_string(b) << " is not a fibration\n";
      out.status = fact_false;
      return;
    }
    const UnivalenceCertificate cert = is_univalent(Fibration::verify(e, b));
    out.machine["certificate"] = to_json(cert);
    out.human << "fibration " << to_string(e) << " -> " << to_string(b) << "\n";
    for (std::size_t i = 0; i < cert.steps.size(); ++i)
      out.human << "  (" << i + 1 << ") " << (cert.steps[i].passed ? "ok    " : "FAILED") << " "
                << cert.steps[i].fact << "\n";
    out.human << (cert.valid() ? "univalent\n" : "certificate failed\n");
    out.status = cert.valid() ? ok : fact_false;
    return;
  }
  emit_report(run_suite(o, {univalence_check(), exp_self_terminal()}, "univalence"), out);
}

inline void run_psmall(const Options& o, Output& out) {
  header(out, "psmall");
  if (!o.total.empty() || !o.base.empty()) {
    if (o.total.empty() || o.base.empty()) throw parse_error("--total and --base go together");
    const Obj e = explicit_obj(o.total, "--total");
    const Obj b = explicit_obj(o.base, "--base");
    const bool fib = arrow_exists(e, b) && label_f(e, b);
    const bool small = label_w(initial(), e);
    const bool p_small = is_p_small(e, b);
    out.machine["total"] = to_json(e);
    out.machine["base"] = to_json(b);
    out.machine["fibration"] = fib;
    out.machine["small"] = small;
    out.machine["p_small"] = p_small;
    out.human << to_string(e) << " -> " << to_string(b) << (fib ? "" : " (not a fibration)") << "\n"
              << "  small    " << yes_no(small) << "\n"
              << "  p-small  " << yes_no(p_small) << "\n";
    out.status = p_small ? ok : fact_false;
    return;
  }
  emit_report(run_suite(o, {psmall_universal()}, "psmall"), out);
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  using detail::Options;
  Options o;
  CLI::App app{"qtnc: decide arrows and labels in the posetal model category of finite/cofinite families"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(version));

  auto* decide_cmd = app.add_subcommand("decide", "decide an arrow and its labels");
  decide_cmd->add_option("--from", o.from, "source object or virtual object")->required();
  decide_cmd->add_option("--to", o.to, "target object or virtual object")->required();
  decide_cmd->add_option("--label", o.label, "arrow, star, w, f or c")
      ->check(CLI::IsMember({"arrow", "star", "w", "f", "c"}));
  decide_cmd->add_flag("--diagnostic-literal-star", o.literal_star,
                       "measure star arrows by |y \\ x| instead of |x \\ y|");
  detail::add_format(decide_cmd, o);

  auto* product_cmd = app.add_subcommand("product", "X x Y");
  auto* coproduct_cmd = app.add_subcommand("coproduct", "X + Y");
  for (auto* cmd : {product_cmd, coproduct_cmd}) {
    cmd->add_option("--x", o.x)->required();
    cmd->add_option("--y", o.y)->required();
    detail::add_format(cmd, o);
  }

  auto* factorize_cmd = app.add_subcommand("factorize", "X -(wc)-> WC(X,Y) -(f)-> Y");
  factorize_cmd->add_option("--from", o.from)->required();
  factorize_cmd->add_option("--to", o.to)->required();
  detail::add_format(factorize_cmd, o);

  auto* exp_cmd = app.add_subcommand("exp", "the exponential C^B, or (C^B)/A with --a");
  exp_cmd->add_option("--b", o.b)->required();
  exp_cmd->add_option("--c", o.c)->required();
  exp_cmd->add_option("--a", o.a);
  detail::add_format(exp_cmd, o);

  auto* wexp_cmd = app.add_subcommand("wexp", "the weak exponential over A; with --z, test Z -> it");
  wexp_cmd->add_option("--a", o.a)->required();
  wexp_cmd->add_option("--b", o.b)->required();
  wexp_cmd->add_option("--c", o.c)->required();
  wexp_cmd->add_option("--z", o.z);
  detail::add_format(wexp_cmd, o);

  auto* univalence_cmd = app.add_subcommand("univalence", "certificate for one fibration, or a batch");
  auto* psmall_cmd = app.add_subcommand("psmall", "smallness for one arrow, or the universal check");
  for (auto* cmd : {univalence_cmd, psmall_cmd}) {
    cmd->add_option("--total", o.total);
    cmd->add_option("--base", o.base);
    detail::add_universe(cmd, o);
    detail::add_format(cmd, o);
  }

  auto* axioms_cmd = app.add_subcommand("axioms", "model-category axiom checks");
  auto* claims_cmd = app.add_subcommand("claims", "checks of the structural claims");
  for (auto* cmd : {axioms_cmd, claims_cmd}) {
    detail::add_universe(cmd, o);
    cmd->add_option("--check", o.checks, "run only these checks (repeatable)");
    cmd->add_flag("--diagnostic-literal-star", o.literal_star,
                  "measure star arrows by |y \\ x| instead of |x \\ y|");
    detail::add_format(cmd, o);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : bad_input;
  }

  detail::Output result;
  try {
    if (decide_cmd->parsed()) detail::run_decide(o, result);
    else if (product_cmd->parsed()) detail::run_limit(o, result, true);
    else if (coproduct_cmd->parsed()) detail::run_limit(o, result, false);
    else if (factorize_cmd->parsed()) detail::run_factorize(o, result);
    else if (exp_cmd->parsed()) detail::run_exp(o, result);
    else if (wexp_cmd->parsed()) detail::run_wexp(o, result);
    else if (univalence_cmd->parsed()) detail::run_univalence(o, result);
    else if (psmall_cmd->parsed()) detail::run_psmall(o, result);
    else if (axioms_cmd->parsed())
      detail::emit_report(detail::run_suite(o, axiom_checks(), "axioms"), result);
    else detail::emit_report(detail::run_suite(o, claim_checks(), "claims"), result);
  } catch (const parse_error& e) {
    err << "error: " << e.what() << "\n";
    return bad_input;
  } catch (const precondition_error& e) {
    err << "error: " << e.what() << "\n";
    return bad_input;
  } catch (const undecided_pair& e) {
    err << "undecided: " << e.what() << "\n";
    return undecided;
  } catch (const size_guard_error& e) {
    err << "size guard: " << e.what() << "\n";
    return too_large;
  }

  const std::string text =
      o.format == "machine" ? result.machine.dump(2) + "\n" : result.human.str();
  if (o.output.empty()) {
    out << text;
  } else {
    std::ofstream file(o.output);
    if (!file) {
      err << "error: cannot write \"" << o.output << "\"\n";
      return bad_input;
    }
    file << text;
  }
  return result.status;
}

}  // namespace qtnc::cli
