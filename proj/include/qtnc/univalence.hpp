#pragma once

// Univalent fibrations, smallness, and the universal fibration Ũ -> ⊤.
//
// The category is posetal, so every diagram commutes and the univalence
// argument reduces to a chain of object-level isomorphisms.  A certificate
// records each link with the objects that witness it.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qtnc/errors.hpp"
#include "qtnc/harness.hpp"
#include "qtnc/kernel.hpp"
#include "qtnc/serialize.hpp"
#include "qtnc/vobj.hpp"

namespace qtnc {

/// An explicit arrow total -> base carrying the (f) label.
class Fibration {
 public:
  static Fibration verify(Obj total, Obj base) {
    if (!arrow_exists(total, base)) throw precondition_error("no arrow " + to_string(total) + " -> " + to_string(base));
    if (!label_f(total, base))
      throw precondition_error(to_string(total) + " -> " + to_string(base) + " is not a fibration");
    return Fibration{std::move(total), std::move(base)};
  }

  const Obj& total() const noexcept { return total_; }
  const Obj& base() const noexcept { return base_; }

 private:
  Fibration(Obj total, Obj base) : total_{std::move(total)}, base_{std::move(base)} {}
  Obj total_;
  Obj base_;
};

struct CertificateStep {
  std::string name;
  std::string fact;
  bool passed = false;
  std::vector<std::pair<std::string, Obj>> witnesses;
};

struct UnivalenceCertificate {
  Obj total;
  Obj base;
  std::vector<CertificateStep> steps;

  bool valid() const {
    return !steps.empty() && std::ranges::all_of(steps, [](const CertificateStep& s) { return s.passed; });
  }
  /// 1-based index of the first failing step.
  std::optional<std::size_t> failed_step() const {
    for (std::size_t i = 0; i < steps.size(); ++i)
      if (!steps[i].passed) return i + 1;
    return std::nullopt;
  }
};

/// Runs the univalence argument for q : E -> B.  Every step is recomputed from
/// the objects; none is assumed.
inline UnivalenceCertificate is_univalent(const Fibration& q) {
  const Obj& e = q.total();
  const Obj& b = q.base();
  UnivalenceCertificate cert{e, b, {}};
  auto step = [&cert](std::string name, std::string fact, bool ok,
                      std::vector<std::pair<std::string, Obj>> witnesses) {
    cert.steps.push_back({std::move(name), std::move(fact), ok, std::move(witnesses)});
  };

  const Obj bb = product(b, b);
  step("product_collapse", "B x B is isomorphic to B", is_iso(bb, b), {{"B x B", bb}, {"B", b}});

  // B_δ is B over B x B through the diagonal; with B x B ≅ B it is the
  // terminal object of the slice.
  step("diagonal_identification", "the diagonal B -> B x B is an isomorphism",
       arrow_exists(b, bb) && arrow_exists(bb, b), {{"B_delta", b}, {"B x B", bb}});

  const Obj eb = product(e, b);
  const Obj be = product(b, e);
  step("twisted_products", "E x B and B x E are the same object over B x B",
       eb == be && arrow_exists(eb, bb) && arrow_exists(be, bb), {{"E x B", eb}, {"B x E", be}});

  const Obj self = exp_explicit(eb, eb);
  const Obj slice_exp = exp_slice(bb, eb, be);
  step("exponent_collapse", "(E x B)^(E x B) is terminal, and so is its slice version over B x B",
       is_iso(self, terminal()) && is_iso(slice_exp, bb),
       {{"(E x B)^(E x B)", self}, {"slice exponent", slice_exp}});

  const VObj weq = VObj::wexp(bb, eb, be);
  const bool terminal_in = arrow_into_vobj(bb, weq) &&
                           std::ranges::all_of(bb, [&](const NSet& m) { return covers(weq, m); });
  step("weq_object_terminal",
       "the slice terminal B x B maps into the weak exponential, which lies over B x B",
       terminal_in, {{"slice terminal", bb}});

  // m_q : B_δ -> weq object.  B -> weq -> B x B ≅ B, so both arrows of the
  // interval are isomorphisms and m_q is (w).
  step("m_q_weak_equivalence", "m_q : B_delta -> weq object is an isomorphism, hence (w)",
       arrow_into_vobj(b, weq) && is_iso(b, bb) && label_w(b, bb), {{"B_delta", b}});
  return cert;
}

inline json to_json(const UnivalenceCertificate& c) {
  json steps = json::array();
  for (std::size_t i = 0; i < c.steps.size(); ++i) {
    const CertificateStep& s = c.steps[i];
    json witnesses = json::object();
    for (const auto& [name, obj] : s.witnesses) witnesses[name] = to_json(obj);
    steps.push_back({{"step", i + 1},
                     {"name", s.name},
                     {"fact", s.fact},
                     {"passed", s.passed},
                     {"witnesses", std::move(witnesses)}});
  }
  return {{"fibration", {{"total", to_json(c.total)}, {"base", to_json(c.base)}}},
          {"steps", std::move(steps)},
          {"valid", c.valid()}};
}

// ---------------------------------------------------------------------------
// Smallness

/// ⊥ -(wc)-> total; with ⊥ = {∅} this says every member of total is finite.
inline bool is_small(const Fibration& f) { return label_w(initial(), f.total()); }

/// total ≅ Ũ × base, for any pair of objects.
inline bool is_p_small(const Obj& total, const Obj& base) {
  const VObj pulled = VObj::uprod(base);
  return arrow_into_vobj(total, pulled) && arrow_from_vobj(pulled, total);
}

/// p-smallness relative to the universal fibration Ũ -> ⊤, the only p supported.
inline bool is_p_small(const Fibration& f, const Endpoint& p_total = VObj::utilde(),
                       const Endpoint& p_base = terminal()) {
  const auto* pv = std::get_if<VObj>(&p_total);
  const auto* pb = std::get_if<Obj>(&p_base);
  if (!pv || pv->kind() != VObj::Kind::utilde || !pb || *pb != terminal())
    throw precondition_error("p-smallness is only supported for the universal fibration UTILDE -> terminal");
  return is_p_small(f.total(), f.base());
}

/// The same notions for the fibration WC(X, Y) -> Y.
inline bool is_small(const Wc& total) { return star_from_vobj(VObj::wc(total.source, total.target), initial()); }

inline bool is_p_small(const Wc& total) {
  const Wc pulled{initial(), total.target};
  return arrow_wc_wc(total, pulled) && arrow_wc_wc(pulled, total);
}

// ---------------------------------------------------------------------------
// Batch checks

/// Smallness and p-smallness agree on every fibration: the explicit ones and
/// the factorization fibrations WC(X, Y) -> Y.
inline CheckSpec psmall_universal() {
  CheckSpec spec;
  spec.name = "PSMALL_UNIVERSAL";
  spec.roles = {"X", "Y"};
  spec.evaluate = [](const Instance& o, const RunOptions&) {
    const Obj &x = o[0], &y = o[1];
    detail::Verdict v;
    if (label_f(x, y)) {
      const Fibration f = Fibration::verify(x, y);
      const bool small = is_small(f);
      const bool p_small = is_p_small(f);
      v.require(small == p_small, std::string("fibration X -> Y: small=") + (small ? "true" : "false") +
                                      ", p-small=" + (p_small ? "true" : "false"));
    }
    if (arrow_exists(x, y)) {
      const Wc total{x, y};
      v.require(label_f_from_wc(total, y), "WC(X,Y) -> Y is not a fibration");
      const bool small = is_small(total);
      const bool p_small = is_p_small(total);
      v.require(small == p_small, std::string("fibration WC(X,Y) -> Y: small=") +
                                      (small ? "true" : "false") + ", p-small=" +
                                      (p_small ? "true" : "false"));
    }
    return v.outcome();
  };
  spec.sample = [](Rng& rng, const Universe& u) {
    const Obj x = random_obj(rng, u);
    return Instance{x, rng.below(4) == 0 ? x : random_superobject(rng, u, x)};
  };
  return spec;
}

inline CheckSpec univalence_check() {
  CheckSpec spec;
  spec.name = "UNIVALENCE";
  spec.roles = {"E", "B"};
  spec.evaluate = [](const Instance& o, const RunOptions&) {
    if (!label_f(o[0], o[1])) return detail::skipped();
    const UnivalenceCertificate cert = is_univalent(Fibration::verify(o[0], o[1]));
    if (cert.valid()) return detail::premise_only();
    return detail::fail("certificate step " + std::to_string(*cert.failed_step()) + " (" +
                        cert.steps[*cert.failed_step() - 1].name + ") fails");
  };
  spec.sample = [](Rng& rng, const Universe& u) {
    const Obj b = random_obj(rng, u);
    return Instance{rng.below(8) == 0 ? random_subobject(rng, u, b) : b, b};
  };
  return spec;
}

inline CheckSpec exp_self_terminal() {
  CheckSpec spec;
  spec.name = "EXP_SELF_TERMINAL";
  spec.roles = {"C"};
  spec.evaluate = [](const Instance& o, const RunOptions&) {
    if (!is_iso(exp_explicit(o[0], o[0]), terminal())) return detail::fail("C^C is not terminal");
    return detail::premise_only();
  };
  spec.sample = [](Rng& rng, const Universe& u) { return Instance{random_obj(rng, u)}; };
  return spec;
}

inline CheckResult verify_universal(const Universe& u, const RunOptions& opt = {}) {
  return run_check(psmall_universal(), u, opt);
}

/// A fibration drawn from the universe.  Explicit fibrations are exactly the
/// isomorphisms, so the total is a (possibly non-canonical) presentation of
/// the base.
inline Fibration sample_fibration(Rng& rng, const Universe& u) {
  const Obj b = random_obj(rng, u);
  const auto variants = iso_variants(b);
  return Fibration::verify(normalize(variants[rng.below(variants.size())]), b);
}

}  // namespace qtnc
