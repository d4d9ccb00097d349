#pragma once

// Property checks over universes of explicit objects.
//
// A check names its roles (the objects of one instance), decides whether an
// instance meets the premise, and if so whether the conclusion fails.  The
// runner visits every tuple of an exhaustive universe, or a seeded stream of
// sampled tuples, evaluates them in parallel and merges in instance order.
// Violations are shrunk before they are reported.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qtnc/errors.hpp"
#include "qtnc/kernel.hpp"
#include "qtnc/parallel.hpp"
#include "qtnc/serialize.hpp"
#include "qtnc/universe.hpp"
#include "qtnc/vobj.hpp"

namespace qtnc {

using Instance = std::vector<Obj>;

struct RunOptions {
  StarTemplate star = StarTemplate::adopted;
  unsigned threads = 0;  ///< 0: one per hardware thread
  std::size_t max_reported = 8;
};

struct Outcome {
  bool premise = false;
  std::optional<std::string> violation;  ///< set only when premise holds
};

struct CheckSpec {
  std::string name;
  std::vector<std::string> roles;
  std::function<Outcome(const Instance&, const RunOptions&)> evaluate;
  std::function<Instance(Rng&, const Universe&)> sample;
};

struct Violation {
  Instance objects;
  std::string detail;
};

struct CheckResult {
  std::string check_name;
  std::vector<std::string> roles;
  Universe universe;
  std::uint64_t instances_tested = 0;
  std::uint64_t premises_met = 0;
  std::uint64_t violation_count = 0;
  std::vector<Violation> violations;  ///< the first few, shrunk and deduplicated
  std::chrono::duration<double> elapsed{};

  bool passed() const { return violation_count == 0; }
};

namespace detail {

inline Outcome premise_only() { return {true, std::nullopt}; }
inline Outcome skipped() { return {false, std::nullopt}; }
inline Outcome fail(std::string why) { return {true, std::move(why)}; }

/// Accumulates the first failing sub-check of an instance.
class Verdict {
 public:
  void require(bool ok, const std::string& why) {
    premise_ = true;
    if (!ok && !violation_) violation_ = why;
  }
  Outcome outcome() const { return {premise_, violation_}; }

 private:
  bool premise_ = false;
  std::optional<std::string> violation_;
};

inline bool inside_some(const NSet& s, const Obj& x) {
  return std::ranges::any_of(x, [&](const NSet& m) { return is_subset(s, m); });
}

inline Obj point(const NSet& s) { return normalize({s}); }

/// One past the largest element mentioned by any support.
inline natural support_bound(std::initializer_list<const Obj*> objs) {
  natural bound = 0;
  for (const Obj* x : objs)
    for (const NSet& m : *x)
      if (!m.support().empty()) bound = std::max(bound, m.support().back() + 1);
  return bound;
}

/// Fibration condition by enumerating the finite parts b ⊆ y below `bound`.
/// Complete when bound exceeds every support element by one: each witness the
/// condition can need is a least element of y minus a member of the source.
inline bool fibration_condition_bounded(const Obj& source, const Obj& target, natural bound) {
  for (const NSet& y : target) {
    std::vector<natural> elems;
    for (natural i = 0; i < bound; ++i)
      if (y.contains(i)) elems.push_back(i);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << elems.size()); ++mask) {
      std::vector<natural> pick;
      for (std::size_t i = 0; i < elems.size(); ++i)
        if (mask >> i & 1U) pick.push_back(elems[i]);
      const NSet b = NSet::finite(std::move(pick));
      auto covered = [&](const NSet& x) { return inside_some(unite(intersect(x, y), b), source); };
      if (!covered(NSet::empty())) return false;
      if (!std::ranges::all_of(source, covered)) return false;
    }
  }
  return true;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Model-category axioms

inline CheckSpec m1_lifting() {
  CheckSpec spec;
  spec.name = "M1_LIFTING";
  spec.roles = {"A", "B", "W", "Z"};
  spec.evaluate = [](const Instance& o, const RunOptions& opt) {
    const Obj &a = o[0], &b = o[1], &w = o[2], &z = o[3];
    detail::Verdict v;
    const bool square = arrow_exists(a, w) && arrow_exists(b, z);
    if (!square) return v.outcome();
    const bool lift = arrow_exists(b, w);
    if (label_w(a, b, opt.star) && label_f(w, z))
      v.require(lift, "A -(wc)-> B against W -(f)-> Z has no lift B -> W");
    if (arrow_exists(a, b) && label_w(w, z, opt.star) && label_f(w, z))
      v.require(lift, "A -(c)-> B against W -(wf)-> Z has no lift B -> W");

    // The fibration WC(W, Z) -> Z on the right.
    if (arrow_exists(w, z)) {
      const VObj mid = VObj::wc(w, z);
      const Wc& m = *mid.get_if<Wc>();
      if (arrow_into_vobj(a, mid) && label_f_from_wc(m, z)) {
        const bool vlift = arrow_into_vobj(b, mid);
        if (label_w(a, b, opt.star))
          v.require(vlift, "A -(wc)-> B against WC(W,Z) -(f)-> Z has no lift B -> WC(W,Z)");
        if (arrow_exists(a, b) && star_into_vobj(z, mid))
          v.require(vlift, "A -(c)-> B against WC(W,Z) -(wf)-> Z has no lift B -> WC(W,Z)");
      }
    }
    return v.outcome();
  };
  spec.sample = [](Rng& rng, const Universe& u) {
    const Obj a = random_obj(rng, u);
    const Obj b = rng.coin() ? random_weq_superobject(rng, u, a) : random_superobject(rng, u, a);
    const Obj w = rng.below(4) != 0 ? random_superobject(rng, u, a) : random_obj(rng, u);
    const Obj z = rng.below(4) != 0 ? coproduct(random_superobject(rng, u, w), b)
                                    : random_superobject(rng, u, w);
    return Instance{a, b, w, z};
  };
  return spec;
}

inline CheckSpec m2_factor_wc_f() {
  CheckSpec spec;
  spec.name = "M2_FACTOR_WC_F";
  spec.roles = {"X", "Y"};
  spec.evaluate = [](const Instance& o, const RunOptions&) {
    const Obj &x = o[0], &y = o[1];
    detail::Verdict v;
    if (!arrow_exists(x, y)) return v.outcome();
    const VObj mid = VObj::wc(x, y);
    const Wc& m = *mid.get_if<Wc>();
    const PartialVerdict left = decide(Endpoint{x}, Endpoint{mid});
    const PartialVerdict right = decide(Endpoint{mid}, Endpoint{y});
    v.require(left.arrow == true, "X -> WC(X,Y) fails");
    v.require(left.w == true, "X -> WC(X,Y) is not (w)");
    v.require(right.arrow == true, "WC(X,Y) -> Y fails");
    v.require(right.f == true, "WC(X,Y) -> Y is not (f)");

    // Replay the constructive fibration witness on concrete members: for
    // s = (x ∩ y) ∪ y0, a member y' and finite b ⊆ y', the member
    // s' = (x ∩ y') ∪ ((y0 ∩ y') ∪ b) contains (s ∩ y') ∪ b.
    const natural bound = detail::support_bound({&x, &y}) + 1;
    auto head = [bound](const NSet& s) {
      std::vector<natural> keep;
      for (natural i = 0; i < bound; ++i)
        if (s.contains(i)) keep.push_back(i);
      return NSet::finite(std::move(keep));
    };
    for (const NSet& xm : x) {
      for (const NSet& ym : y) {
        for (const NSet& y0 : {NSet::empty(), head(ym)}) {
          const NSet s = unite(intersect(xm, ym), y0);
          v.require(wc_covers(m, s), "member " + to_string(s) + " of WC(X,Y) is not covered");
          for (const NSet& y2 : y) {
            const NSet top = head(y2);
            std::vector<NSet> parts{NSet::empty(), top};
            for (natural e : top.support()) parts.push_back(NSet::finite({e}));
            for (const NSet& b : parts) {
              const NSet finite_part = unite(intersect(y0, y2), b);
              const NSet s2 = unite(intersect(xm, y2), finite_part);
              const bool ok = finite_part.is_finite() && is_subset(finite_part, y2) &&
                              is_subset(unite(intersect(s, y2), b), s2) && wc_covers(m, s2);
              v.require(ok, "fibration witness fails for s = " + to_string(s) +
                                ", y' = " + to_string(y2) + ", b = " + to_string(b));
            }
          }
        }
      }
    }
    return v.outcome();
  };
  spec.sample = [](Rng& rng, const Universe& u) {
    const Obj x = random_obj(rng, u);
    return Instance{x, random_superobject(rng, u, x)};
  };
  return spec;
}

inline CheckSpec m2_factor_c_wf() {
  CheckSpec spec;
  spec.name = "M2_FACTOR_C_WF";
  spec.roles = {"X", "Y"};
  spec.evaluate = [](const Instance& o, const RunOptions& opt) {
    const Obj &x = o[0], &y = o[1];
    detail::Verdict v;
    if (!arrow_exists(x, y)) return v.outcome();
    // X -(c)-> Y -(wf)-> Y
    v.require(label_c(x, y), "X -> Y is not (c)");
    v.require(label_w(y, y, opt.star) && label_f(y, y), "identity on Y is not (wf)");
    return v.outcome();
  };
  spec.sample = [](Rng& rng, const Universe& u) {
    const Obj x = random_obj(rng, u);
    return Instance{x, random_superobject(rng, u, x)};
  };
  return spec;
}

inline CheckSpec m5_two_of_three() {
  CheckSpec spec;
  spec.name = "M5_TWO_OF_THREE";
  spec.roles = {"X", "Y", "Z"};
  spec.evaluate = [](const Instance& o, const RunOptions& opt) {
    const Obj &x = o[0], &y = o[1], &z = o[2];
    if (!arrow_exists(x, y) || !arrow_exists(y, z)) return detail::skipped();
    const bool xy = label_w(x, y, opt.star);
    const bool yz = label_w(y, z, opt.star);
    const bool xz = label_w(x, z, opt.star);
    if (xy + yz + xz == 2)
      return detail::fail(std::string("weak equivalences: X->Y ") + (xy ? "yes" : "no") +
                          ", Y->Z " + (yz ? "yes" : "no") + ", X->Z " + (xz ? "yes" : "no"));
    return detail::premise_only();
  };
  spec.sample = [](Rng& rng, const Universe& u) {
    const Obj x = random_obj(rng, u);
    const Obj y = rng.coin() ? random_weq_superobject(rng, u, x) : random_superobject(rng, u, x);
    const Obj z = rng.coin() ? random_weq_superobject(rng, u, y) : random_superobject(rng, u, y);
    return Instance{x, y, z};
  };
  return spec;
}

inline CheckSpec base_change_f() {
  CheckSpec spec;
  spec.name = "BASE_CHANGE_F";
  spec.roles = {"E", "B", "P"};
  spec.evaluate = [](const Instance& o, const RunOptions&) {
    const Obj &e = o[0], &b = o[1], &p = o[2];
    detail::Verdict v;
    if (!arrow_exists(p, b)) return v.outcome();
    // The pullback of E -> B along P -> B is E × P -> P.
    if (label_f(e, b))
      v.require(label_f(product(e, p), p), "E x P -> P is not (f)");
    // Pulling WC(E, B) -> B back along P gives WC(P x E, P x B) -> P.
    if (arrow_exists(e, b)) {
      const Wc pulled{product(p, e), product(p, b)};
      v.require(is_iso(pulled.target, p), "P x B is not P");
      v.require(label_f_from_wc(pulled, p), "WC(P x E, P x B) -> P is not (f)");
    }
    return v.outcome();
  };
  spec.sample = [](Rng& rng, const Universe& u) {
    const Obj e = random_obj(rng, u);
    const Obj b = rng.below(4) == 0 ? e : random_superobject(rng, u, e);
    const Obj p = rng.below(4) != 0 ? random_subobject(rng, u, b) : random_obj(rng, u);
    return Instance{e, b, p};
  };
  return spec;
}

inline CheckSpec cobase_change_wc() {
  CheckSpec spec;
  spec.name = "COBASE_CHANGE_WC";
  spec.roles = {"A", "B", "C"};
  spec.evaluate = [](const Instance& o, const RunOptions& opt) {
    const Obj &a = o[0], &b = o[1], &c = o[2];
    if (!label_w(a, b, opt.star) || !arrow_exists(a, c)) return detail::skipped();
    // The pushout of B <- A -> C is B ⊔ C.
    const Obj pushout = coproduct(b, c);
    if (!label_w(c, pushout, opt.star)) return detail::fail("C -> B + C is not (wc)");
    if (!arrow_exists(b, pushout)) return detail::fail("B -> B + C fails");
    return detail::premise_only();
  };
  spec.sample = [](Rng& rng, const Universe& u) {
    const Obj a = random_obj(rng, u);
    const Obj b = random_weq_superobject(rng, u, a);
    const Obj c = rng.below(4) != 0 ? random_superobject(rng, u, a) : random_obj(rng, u);
    return Instance{a, b, c};
  };
  return spec;
}

namespace detail {

inline std::string labels(const LabelVerdict& v) {
  std::string out;
  out += v.arrow ? "->" : "-/->";
  out += std::string(" star=") + (v.star ? "1" : "0");
  out += std::string(" w=") + (v.w ? "1" : "0");
  out += std::string(" f=") + (v.f ? "1" : "0");
  out += std::string(" c=") + (v.c ? "1" : "0");
  return out;
}

}  // namespace detail

/// In a posetal category a retract of X -> Y is an arrow between objects
/// isomorphic to X and Y, so closure under retracts is closure of each label
/// under isomorphic endpoints.
inline CheckSpec retract_closure() {
  CheckSpec spec;
  spec.name = "RETRACT_CLOSURE";
  spec.roles = {"X", "Y"};
  spec.evaluate = [](const Instance& o, const RunOptions& opt) {
    const Obj &x = o[0], &y = o[1];
    if (!arrow_exists(x, y)) return detail::skipped();
    const LabelVerdict base = decide(x, y, opt.star);
    auto xs = iso_variants(x);
    xs.push_back(x.members());
    auto ys = iso_variants(y);
    ys.push_back(y.members());
    for (const Family& rx : xs) {
      for (const Family& ry : ys) {
        // The retract X' -> Y' with X -> X' -> X and Y -> Y' -> Y.
        if (!is_iso(rx, x) || !is_iso(ry, y)) return detail::fail("variant is not a retract");
        const LabelVerdict r = decide(rx, ry, opt.star);
        if ((base.w && !r.w) || (base.f && !r.f) || (base.c && !r.c))
          return detail::fail("retract " + to_string(rx) + " -> " + to_string(ry) + " has " +
                              detail::labels(r) + " but the arrow has " + detail::labels(base));
      }
    }
    return detail::premise_only();
  };
  spec.sample = [](Rng& rng, const Universe& u) {
    const Obj x = random_obj(rng, u);
    return Instance{x, rng.coin() ? random_weq_superobject(rng, u, x) : random_superobject(rng, u, x)};
  };
  return spec;
}

inline CheckSpec iso_invariance() {
  CheckSpec spec;
  spec.name = "ISO_INVARIANCE";
  spec.roles = {"X", "Y"};
  spec.evaluate = [](const Instance& o, const RunOptions& opt) {
    const Obj &x = o[0], &y = o[1];
    const LabelVerdict base = decide(x, y, opt.star);
    auto xs = iso_variants(x);
    xs.push_back(x.members());
    auto ys = iso_variants(y);
    ys.push_back(y.members());
    for (const Family& rx : xs) {
      for (const Family& ry : ys) {
        const LabelVerdict r = decide(rx, ry, opt.star);
        if (r != base)
          return detail::fail("variant " + to_string(rx) + " -> " + to_string(ry) + " has " +
                              detail::labels(r) + " but the canonical pair has " +
                              detail::labels(base));
      }
    }
    return detail::premise_only();
  };
  spec.sample = [](Rng& rng, const Universe& u) {
    const Obj x = random_obj(rng, u);
    return Instance{x, rng.coin() ? random_weq_superobject(rng, u, x) : random_obj(rng, u)};
  };
  return spec;
}

// ---------------------------------------------------------------------------
// Claims about the category

inline CheckSpec wcf_reverse() {
  CheckSpec spec;
  spec.name = "WCF_REVERSE";
  spec.roles = {"X", "Y"};
  spec.evaluate = [](const Instance& o, const RunOptions& opt) {
    const Obj &x = o[0], &y = o[1];
    detail::Verdict v;
    if (label_w(x, y, opt.star) && label_c(x, y) && label_f(x, y))
      v.require(arrow_exists(y, x), "X -(wcf)-> Y but no Y -> X");
    // The fibration WC(X, Y) -> Y, whenever it is also (w).
    if (arrow_exists(x, y)) {
      const VObj mid = VObj::wc(x, y);
      const Wc& m = *mid.get_if<Wc>();
      if (label_f_from_wc(m, y) && star_into_vobj(y, mid))
        v.require(arrow_into_vobj(y, mid), "WC(X,Y) -(wcf)-> Y but no Y -> WC(X,Y)");
    }
    return v.outcome();
  };
  spec.sample = [](Rng& rng, const Universe& u) {
    const Obj x = random_obj(rng, u);
    return Instance{x, rng.coin() ? random_weq_superobject(rng, u, x) : random_superobject(rng, u, x)};
  };
  return spec;
}

inline CheckSpec f_reduction() {
  CheckSpec spec;
  spec.name = "F_REDUCTION";
  spec.roles = {"X", "Y"};
  spec.evaluate = [](const Instance& o, const RunOptions&) {
    const Obj &x = o[0], &y = o[1];
    detail::Verdict v;
    const auto gap = fibration_gap(x, y);
    const bool searched = !gap.has_value();
    v.require(searched == fibration_condition_reduced(x, y),
              "gap search and Y -> X disagree on the fibration condition");
    const natural bound = detail::support_bound({&x, &y}) + 1;
    if (bound <= 16)
      v.require(searched == detail::fibration_condition_bounded(x, y, bound),
                "gap search and finite-part enumeration disagree");
    if (gap) {
      const NSet need = unite(intersect(gap->source_member, gap->target_member), gap->finite_part);
      const bool genuine = gap->finite_part.is_finite() &&
                           is_subset(gap->finite_part, gap->target_member) &&
                           !detail::inside_some(need, x);
      v.require(genuine, "gap witness does not replay");
    }
    v.require(label_f(x, y) == (arrow_exists(x, y) && arrow_exists(y, x)),
              "(f) is not the same as an isomorphism");
    return v.outcome();
  };
  spec.sample = [](Rng& rng, const Universe& u) {
    const Obj x = random_obj(rng, u);
    return Instance{x, rng.below(4) == 0 ? x : random_superobject(rng, u, x)};
  };
  return spec;
}

/// Z × B -(wc)-> Z × C iff {z} × B -(wc)-> {z} × C for every z in Z.
inline CheckSpec claim5() {
  CheckSpec spec;
  spec.name = "CLAIM5";
  spec.roles = {"Z", "B", "C"};
  spec.evaluate = [](const Instance& o, const RunOptions& opt) {
    const Obj &z = o[0], &b = o[1], &c = o[2];
    const bool whole = label_w(product(z, b), product(z, c), opt.star);
    const bool pointwise = std::ranges::all_of(z, [&](const NSet& m) {
      const Obj p = detail::point(m);
      return label_w(product(p, b), product(p, c), opt.star);
    });
    if (whole != pointwise)
      return detail::fail(std::string("Z x B -(wc)-> Z x C is ") + (whole ? "true" : "false") +
                          " but the pointwise criterion is " + (pointwise ? "true" : "false"));
    return detail::premise_only();
  };
  spec.sample = [](Rng& rng, const Universe& u) {
    const Obj z = random_obj(rng, u);
    const Obj b = random_obj(rng, u);
    const Obj c = rng.coin() ? random_weq_superobject(rng, u, b) : random_obj(rng, u);
    return Instance{z, b, c};
  };
  return spec;
}

inline CheckSpec exp_representability() {
  CheckSpec spec;
  spec.name = "EXP_REPRESENTABILITY";
  spec.roles = {"D", "B", "C"};
  spec.evaluate = [](const Instance& o, const RunOptions&) {
    const Obj &d = o[0], &b = o[1], &c = o[2];
    detail::Verdict v;
    const Obj e = exp_explicit(b, c);
    const VObj ev = VObj::exp(b, c);
    const bool expected = arrow_exists(product(d, b), c);
    v.require(arrow_exists(d, e) == expected, "D -> C^B disagrees with D x B -> C");
    v.require(arrow_into_vobj(d, ev) == expected, "arrow into EXP(B,C) disagrees with D x B -> C");
    v.require(std::ranges::all_of(d, [&](const NSet& m) { return covers(ev, m); }) == expected,
              "member-wise cover of EXP(B,C) disagrees with D x B -> C");
    v.require(arrow_exists(product(e, b), c), "evaluation C^B x B -> C fails");
    // The same in the slice over A = B + C + D.
    const Obj a = coproduct(coproduct(b, c), d);
    v.require(arrow_exists(d, exp_slice(a, b, c)) == expected,
              "D -> (C^B)/A disagrees with D x B -> C");
    return v.outcome();
  };
  spec.sample = [](Rng& rng, const Universe& u) {
    const Obj d = random_obj(rng, u);
    const Obj b = random_obj(rng, u);
    const Obj c = rng.coin() ? random_superobject(rng, u, product(d, b)) : random_obj(rng, u);
    return Instance{d, b, c};
  };
  return spec;
}

inline CheckSpec wexp_representability() {
  CheckSpec spec;
  spec.name = "WEXP_REPRESENTABILITY";
  spec.roles = {"Z", "A", "B", "C"};
  spec.evaluate = [](const Instance& o, const RunOptions&) {
    const Obj &z = o[0], &a = o[1], &b = o[2], &c = o[3];
    detail::Verdict v;
    if (!arrow_exists(b, a) || !arrow_exists(c, a)) return v.outcome();
    const VObj w = VObj::wexp(a, b, c);
    const bool expected = arrow_exists(z, a) && label_w(product(z, b), product(z, c));
    const bool pointwise = arrow_exists(z, a) && std::ranges::all_of(z, [&](const NSet& m) {
      const Obj p = detail::point(m);
      return label_w(product(p, b), product(p, c));
    });
    v.require(arrow_into_vobj(z, w) == expected,
              "Z -> WEXP(A,B,C) disagrees with Z x B -(w)-> Z x C");
    v.require(pointwise == expected, "pointwise criterion disagrees with Z x B -(w)-> Z x C");
    v.require(std::ranges::all_of(z, [&](const NSet& m) { return covers(w, m); }) == expected,
              "member-wise cover of WEXP(A,B,C) disagrees with Z x B -(w)-> Z x C");
    return v.outcome();
  };
  spec.sample = [](Rng& rng, const Universe& u) {
    const Obj a = random_obj(rng, u);
    const Obj b = random_subobject(rng, u, a);
    const Obj c = rng.coin() ? product(random_weq_superobject(rng, u, b), a)
                             : random_subobject(rng, u, a);
    const Obj z = rng.below(4) != 0 ? random_subobject(rng, u, a) : random_obj(rng, u);
    return Instance{z, a, b, c};
  };
  return spec;
}

inline CheckSpec limits_universal() {
  CheckSpec spec;
  spec.name = "LIMITS_UNIVERSAL";
  spec.roles = {"X", "Y", "Z"};
  spec.evaluate = [](const Instance& o, const RunOptions&) {
    const Obj &x = o[0], &y = o[1], &z = o[2];
    detail::Verdict v;
    const Obj p = product(x, y);
    const Obj s = coproduct(x, y);
    v.require(arrow_exists(p, x) && arrow_exists(p, y), "product projections fail");
    v.require(arrow_exists(x, s) && arrow_exists(y, s), "coproduct injections fail");
    v.require((arrow_exists(z, x) && arrow_exists(z, y)) == arrow_exists(z, p),
              "Z -> X x Y is not the same as a cone over X, Y");
    v.require((arrow_exists(x, z) && arrow_exists(y, z)) == arrow_exists(s, z),
              "X + Y -> Z is not the same as a cocone under X, Y");
    v.require(arrow_exists(initial(), z) && arrow_exists(z, terminal()),
              "initial or terminal object fails");
    return v.outcome();
  };
  spec.sample = [](Rng& rng, const Universe& u) {
    const Obj x = random_obj(rng, u);
    const Obj y = random_obj(rng, u);
    const Obj z = rng.coin() ? random_subobject(rng, u, product(x, y))
                             : random_superobject(rng, u, coproduct(x, y));
    return Instance{x, y, rng.below(4) == 0 ? random_obj(rng, u) : z};
  };
  return spec;
}

inline std::vector<CheckSpec> axiom_checks() {
  return {m1_lifting(),    m2_factor_wc_f(),   m2_factor_c_wf(),  m5_two_of_three(),
          base_change_f(), cobase_change_wc(), retract_closure(), iso_invariance()};
}

inline std::vector<CheckSpec> claim_checks() {
  return {wcf_reverse(),           f_reduction(),           claim5(),
          exp_representability(), wexp_representability(), limits_universal()};
}

inline std::optional<CheckSpec> find_check(const std::string& name) {
  for (auto group : {axiom_checks(), claim_checks()})
    for (CheckSpec& c : group)
      if (c.name == name) return c;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Running

/// True when the instance still violates the check.
inline bool replay(const CheckSpec& spec, const Instance& objects, const RunOptions& opt = {}) {
  return spec.evaluate(objects, opt).violation.has_value();
}

namespace detail {

/// Smaller versions of x: one member removed, or one element dropped from a
/// member's support.
inline std::vector<Obj> shrink_candidates(const Obj& x) {
  std::vector<Obj> out;
  const Family& members = x.members();
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i].is_empty()) continue;
    Family fewer = members;
    fewer.erase(fewer.begin() + static_cast<std::ptrdiff_t>(i));
    out.push_back(normalize(fewer));
  }
  for (std::size_t i = 0; i < members.size(); ++i) {
    const auto support = members[i].support();
    for (std::size_t k = 0; k < support.size(); ++k) {
      std::vector<natural> rest(support.begin(), support.end());
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
      Family changed = members;
      changed[i] = members[i].is_finite() ? NSet::finite(rest) : NSet::cofinite(rest);
      out.push_back(normalize(changed));
    }
  }
  return out;
}

inline std::size_t weight(const Instance& objects) {
  std::size_t w = 0;
  for (const Obj& x : objects)
    for (const NSet& m : x) w += 1 + m.support().size();
  return w;
}

}  // namespace detail

/// Greedy shrinking: accept any smaller instance that still violates.
inline Violation shrink(const CheckSpec& spec, Violation v, const RunOptions& opt) {
  for (int round = 0; round < 256; ++round) {
    bool improved = false;
    for (std::size_t role = 0; role < v.objects.size() && !improved; ++role) {
      for (const Obj& candidate : detail::shrink_candidates(v.objects[role])) {
        Instance next = v.objects;
        next[role] = candidate;
        if (detail::weight(next) >= detail::weight(v.objects)) continue;
        const Outcome out = spec.evaluate(next, opt);
        if (out.violation) {
          v = Violation{std::move(next), *out.violation};
          improved = true;
          break;
        }
      }
    }
    if (!improved) break;
  }
  return v;
}

namespace detail {

struct Chunk {
  std::uint64_t tested = 0;
  std::uint64_t premises = 0;
  std::uint64_t violations = 0;
  std::vector<Violation> first;
};

inline Instance tuple_at(const std::vector<Obj>& objs, std::size_t roles, std::uint64_t index) {
  Instance out(roles);
  for (std::size_t r = roles; r-- > 0;) {
    out[r] = objs[index % objs.size()];
    index /= objs.size();
  }
  return out;
}

constexpr std::uint64_t max_exhaustive_instances = 20'000'000;

}  // namespace detail

inline CheckResult run_check(const CheckSpec& spec, const Universe& u, const RunOptions& opt = {}) {
  const auto start = std::chrono::steady_clock::now();
  check_size_guard(u);
  CheckResult result;
  result.check_name = spec.name;
  result.roles = spec.roles;
  result.universe = u;

  const std::size_t k = spec.roles.size();
  std::vector<Obj> objs;
  std::vector<Instance> samples;
  std::uint64_t total = 0;
  if (u.mode == Universe::Mode::exhaustive) {
    objs = enumerate_objects(u);
    total = 1;
    for (std::size_t r = 0; r < k; ++r) {
      total *= objs.size();
      if (total > detail::max_exhaustive_instances)
        throw size_guard_error(spec.name + ": too many exhaustive instances for " + to_string(u));
    }
  } else {
    Rng rng(u.seed);
    samples.reserve(u.count);
    for (std::uint64_t i = 0; i < u.count; ++i) samples.push_back(spec.sample(rng, u));
    total = u.count;
  }

  constexpr std::uint64_t chunk_size = 512;
  const std::size_t chunks = static_cast<std::size_t>((total + chunk_size - 1) / chunk_size);
  auto partial = parallel_map(chunks, opt.threads, [&](std::size_t c) {
    detail::Chunk out;
    const std::uint64_t lo = c * chunk_size;
    const std::uint64_t hi = std::min(total, lo + chunk_size);
    for (std::uint64_t i = lo; i < hi; ++i) {
      Instance inst = u.mode == Universe::Mode::exhaustive ? detail::tuple_at(objs, k, i)
                                                           : samples[i];
      const Outcome o = spec.evaluate(inst, opt);
      ++out.tested;
      if (!o.premise) continue;
      ++out.premises;
      if (!o.violation) continue;
      ++out.violations;
      if (out.first.size() < opt.max_reported)
        out.first.push_back(Violation{std::move(inst), *o.violation});
    }
    return out;
  });

  for (detail::Chunk& c : partial) {
    result.instances_tested += c.tested;
    result.premises_met += c.premises;
    result.violation_count += c.violations;
    for (Violation& v : c.first)
      if (result.violations.size() < opt.max_reported) result.violations.push_back(std::move(v));
  }
  std::vector<Violation> shrunk;
  for (Violation& v : result.violations) {
    Violation small = shrink(spec, std::move(v), opt);
    const bool seen = std::ranges::any_of(
        shrunk, [&](const Violation& other) { return other.objects == small.objects; });
    if (!seen) shrunk.push_back(std::move(small));
  }
  result.violations = std::move(shrunk);
  result.elapsed = std::chrono::steady_clock::now() - start;
  return result;
}

// ---------------------------------------------------------------------------
// Reports

struct Report {
  std::string verb;
  StarTemplate star = StarTemplate::adopted;
  std::vector<CheckResult> checks;

  bool passed() const {
    return std::ranges::all_of(checks, [](const CheckResult& c) { return c.passed(); });
  }
};

inline json to_json(const Universe& u) {
  json out = {{"mode", u.mode == Universe::Mode::exhaustive ? "exhaustive" : "sampled"},
              {"window", u.window},
              {"include_cofinite", u.include_cofinite}};
  if (u.mode == Universe::Mode::sampled) {
    out["count"] = u.count;
    out["seed"] = u.seed;
  }
  return out;
}

/// Elapsed time is left out so that equal runs give byte-identical documents.
inline json to_json(const CheckResult& r) {
  json violations = json::array();
  for (const Violation& v : r.violations) {
    json objects = json::object();
    for (std::size_t i = 0; i < v.objects.size(); ++i) objects[r.roles[i]] = to_json(v.objects[i]);
    violations.push_back({{"objects", std::move(objects)}, {"detail", v.detail}});
  }
  return {{"name", r.check_name},
          {"universe", to_json(r.universe)},
          {"instances_tested", r.instances_tested},
          {"premises_met", r.premises_met},
          {"violation_count", r.violation_count},
          {"violations", std::move(violations)},
          {"passed", r.passed()}};
}

inline const char* star_name(StarTemplate t) {
  return t == StarTemplate::adopted ? "adopted" : "literal";
}

inline json to_json(const Report& r) {
  json checks = json::array();
  for (const CheckResult& c : r.checks) checks.push_back(to_json(c));
  return {{"tool", "qtnc"},
          {"verb", r.verb},
          {"star_template", star_name(r.star)},
          {"checks", std::move(checks)},
          {"passed", r.passed()}};
}

inline std::string summary(const CheckResult& r) {
  std::ostringstream os;
  os << (r.passed() ? "PASS " : "FAIL ") << r.check_name << "  [" << to_string(r.universe) << "]  "
     << r.instances_tested << " instances, " << r.premises_met << " met the premise, "
     << r.violation_count << " violations  (" << std::fixed;
  os.precision(2);
  os << r.elapsed.count() << "s)\n";
  for (const Violation& v : r.violations) {
    os << "    counterexample: " << v.detail << "\n";
    for (std::size_t i = 0; i < v.objects.size(); ++i)
      os << "      " << r.roles[i] << " = " << to_string(v.objects[i]) << "\n";
  }
  return os.str();
}

inline std::string summary(const Report& r) {
  std::string out;
  for (const CheckResult& c : r.checks) out += summary(c);
  const auto failed = std::ranges::count_if(r.checks, [](const CheckResult& c) { return !c.passed(); });
  out += r.passed() ? "all " + std::to_string(r.checks.size()) + " checks passed\n"
                    : std::to_string(failed) + " of " + std::to_string(r.checks.size()) +
                          " checks failed\n";
  return out;
}

}  // namespace qtnc
