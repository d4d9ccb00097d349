#pragma once

// Virtual objects: infinite families described by closed-form oracles.
//
//   WC(X, Y)       the middle of the (wc)-(f) factorization of X -> Y,
//                  {(x ∩ y) ∪ y0 : x in X, y in Y, y0 ⊆ y finite}
//   UTILDE         the family of all finite sets (= WC(⊥, ⊤))
//   UPROD(X)       Ũ × X, the finite subsets of members of X (= WC(⊥, X))
//   EXP(B, C)      the exponential C^B
//   EXP_SLICE(A..) C^B × A, the exponential in the slice over A
//   WEXP(A, B, C)  the weak exponential (C^B_w)/A
//
// Nothing here enumerates an infinite family.  Each kind answers "is s covered
// by a member", "does an explicit object map in", and, where a closed form is
// known, "does it map out / star out".  Unsupported directions raise
// undecided_pair.

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "qtnc/errors.hpp"
#include "qtnc/kernel.hpp"

namespace qtnc {

/// The factorization middle WC(source, target); requires source -> target.
struct Wc {
  Obj source;
  Obj target;
};

struct UTilde {};

struct UProd {
  Obj base;
};

struct Exp {
  Obj b;
  Obj c;
};

struct ExpSlice {
  Obj a;
  Obj b;
  Obj c;
};

struct Wexp {
  Obj a;
  Obj b;
  Obj c;
};

class VObj {
 public:
  enum class Kind { wc, utilde, uprod, exp, exp_slice, wexp };
  using Repr = std::variant<Wc, UTilde, UProd, Exp, ExpSlice, Wexp>;

  static VObj wc(Obj source, Obj target) {
    if (!arrow_exists(source, target))
      throw precondition_error("WC(X, Y) needs an arrow X -> Y to factor");
    return VObj{Wc{std::move(source), std::move(target)}};
  }
  static VObj utilde() { return VObj{UTilde{}}; }
  static VObj uprod(Obj base) { return VObj{UProd{std::move(base)}}; }
  static VObj exp(Obj b, Obj c) { return VObj{Exp{std::move(b), std::move(c)}}; }
  static VObj exp_slice(Obj a, Obj b, Obj c) {
    require_slice(a, b, c, "EXP_SLICE");
    return VObj{ExpSlice{std::move(a), std::move(b), std::move(c)}};
  }
  static VObj wexp(Obj a, Obj b, Obj c) {
    require_slice(a, b, c, "WEXP");
    return VObj{Wexp{std::move(a), std::move(b), std::move(c)}};
  }

  Kind kind() const noexcept { return static_cast<Kind>(repr_.index()); }
  const Repr& repr() const noexcept { return repr_; }

  template <class T>
  const T* get_if() const noexcept {
    return std::get_if<T>(&repr_);
  }

  friend bool operator==(const VObj& a, const VObj& b) {
    return a.repr_.index() == b.repr_.index() && describe_key(a) == describe_key(b);
  }

 private:
  explicit VObj(Repr r) : repr_{std::move(r)} {}

  static void require_slice(const Obj& a, const Obj& b, const Obj& c, const char* what) {
    if (!arrow_exists(b, a) || !arrow_exists(c, a))
      throw precondition_error(std::string(what) + " needs B -> A and C -> A");
  }

  static std::vector<Obj> describe_key(const VObj& v) {
    return std::visit(
        [](const auto& r) -> std::vector<Obj> {
          using T = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<T, Wc>) return {r.source, r.target};
          else if constexpr (std::is_same_v<T, UTilde>) return {};
          else if constexpr (std::is_same_v<T, UProd>) return {r.base};
          else if constexpr (std::is_same_v<T, Exp>) return {r.b, r.c};
          else return {r.a, r.b, r.c};
        },
        v.repr_);
  }

  Repr repr_;
};

inline const char* kind_name(VObj::Kind k) {
  switch (k) {
    case VObj::Kind::wc: return "wc";
    case VObj::Kind::utilde: return "utilde";
    case VObj::Kind::uprod: return "uprod";
    case VObj::Kind::exp: return "exp";
    case VObj::Kind::exp_slice: return "exp_slice";
    case VObj::Kind::wexp: return "wexp";
  }
  return "?";
}

/// UTILDE and UPROD are factorization middles in disguise.
inline std::optional<Wc> as_wc(const VObj& v) {
  if (const auto* w = v.get_if<Wc>()) return *w;
  if (v.get_if<UTilde>()) return Wc{initial(), terminal()};
  if (const auto* u = v.get_if<UProd>()) return Wc{initial(), u->base};
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Exponentials

/// C^B as an explicit object: the maximal sets ⋂_{b in B} (c_f(b) ∪ ¬b) over
/// choice functions f : B -> C.  The choice is folded one b at a time,
/// keeping only maximal partial intersections.
inline Obj exp_explicit(const Obj& b, const Obj& c) {
  std::vector<NSet> acc{NSet::all()};
  for (const NSet& bm : b) {
    if (bm.is_empty()) continue;
    const NSet outside = bm.complement();
    std::vector<NSet> next;
    for (const NSet& s : acc)
      for (const NSet& cm : c) next.push_back(intersect(s, unite(cm, outside)));
    acc = normalize(next).members();
  }
  return normalize(acc);
}

inline Obj exp_slice(const Obj& a, const Obj& b, const Obj& c) {
  if (!arrow_exists(b, a) || !arrow_exists(c, a))
    throw precondition_error("slice exponential needs B -> A and C -> A");
  return product(exp_explicit(b, c), a);
}

/// Singleton criterion for the weak exponential: {∅, s} × B -(w)-> {∅, s} × C.
inline bool wexp_member(const Obj& b, const Obj& c, const NSet& s) {
  const Obj point = normalize({s});
  return label_w(product(point, b), product(point, c));
}

inline std::optional<Obj> materialize(const VObj& v) {
  if (const auto* e = v.get_if<Exp>()) return exp_explicit(e->b, e->c);
  if (const auto* e = v.get_if<ExpSlice>()) return exp_slice(e->a, e->b, e->c);
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Membership oracles

/// Some member of WC(X, Y) contains s: s ⊆ y and s \ x finite for some x, y.
inline bool wc_covers(const Wc& v, const NSet& s) {
  for (const NSet& y : v.target) {
    if (!is_subset(s, y)) continue;
    for (const NSet& x : v.source)
      if (almost_subset(s, x)) return true;
  }
  return false;
}

inline bool covers(const VObj& v, const NSet& s) {
  struct visitor {
    const NSet& s;
    bool operator()(const Wc& w) const { return wc_covers(w, s); }
    bool operator()(const UTilde&) const { return s.is_finite(); }
    bool operator()(const UProd& u) const {
      return s.is_finite() &&
             std::ranges::any_of(u.base, [&](const NSet& m) { return is_subset(s, m); });
    }
    bool operator()(const Exp& e) const { return exp_covers(e.b, e.c); }
    bool operator()(const ExpSlice& e) const { return inside(e.a) && exp_covers(e.b, e.c); }
    bool operator()(const Wexp& e) const { return inside(e.a) && wexp_member(e.b, e.c, s); }

    bool inside(const Obj& a) const {
      return std::ranges::any_of(a, [&](const NSet& m) { return is_subset(s, m); });
    }
    bool exp_covers(const Obj& b, const Obj& c) const {
      return std::ranges::all_of(b, [&](const NSet& bm) {
        const NSet piece = intersect(s, bm);
        return std::ranges::any_of(c, [&](const NSet& cm) { return is_subset(piece, cm); });
      });
    }
  };
  return std::visit(visitor{s}, v.repr());
}

// ---------------------------------------------------------------------------
// Arrows into and out of virtual objects

template <nset_family Z>
bool arrow_into_vobj(const Z& z, const VObj& v) {
  if (const auto* e = v.get_if<Exp>()) return arrow_exists(product(z, e->b), e->c);
  if (const auto* e = v.get_if<ExpSlice>())
    return arrow_exists(z, e->a) && arrow_exists(product(z, e->b), e->c);
  if (const auto* e = v.get_if<Wexp>())
    return arrow_exists(z, e->a) && label_w(product(z, e->b), product(z, e->c));
  return std::ranges::all_of(z, [&](const NSet& m) { return covers(v, m); });
}

/// Ũ -> Y holds iff N is a member of Y: a finite set built from one missing
/// element per member escapes every proper member.
template <nset_family Y>
bool arrow_from_utilde(const Y& y) {
  return std::ranges::any_of(y, [](const NSet& m) { return m.is_all(); });
}

template <nset_family T>
bool arrow_from_vobj(const VObj& v, const T& t) {
  if (v.get_if<UTilde>()) return arrow_from_utilde(t);
  if (const auto* u = v.get_if<UProd>()) return arrow_exists(u->base, t);
  // Every member of WC(X, Y) sits inside a member of Y, and for x = ∅ all finite
  // subsets of each y occur; with T finite that forces a member of T above y.
  if (const auto* w = v.get_if<Wc>()) return arrow_exists(w->target, t);
  if (auto m = materialize(v)) return arrow_exists(*m, t);
  const auto& e = *v.get_if<Wexp>();
  if (arrow_exists(e.a, t)) return true;
  throw undecided_pair("arrow out of WEXP into an object not above its slice base");
}

/// V ->* T.
template <nset_family T>
bool star_from_vobj(const VObj& v, const T& t) {
  if (auto w = as_wc(v)) return star_arrow(product(w->source, w->target), t);
  if (auto m = materialize(v)) return star_arrow(*m, t);
  throw undecided_pair("star arrow out of WEXP");
}

/// T ->* V.
template <nset_family T>
bool star_into_vobj(const T& t, const VObj& v) {
  if (auto w = as_wc(v)) return star_arrow(t, product(w->source, w->target));
  if (auto m = materialize(v)) return star_arrow(t, *m);
  throw undecided_pair("star arrow into WEXP");
}

/// Fibration label of WC(X, Y) -> T.  Membership in WC reduces to
/// "⊆ some y, almost ⊆ some x", so the finite part of (s ∩ t) ∪ b ranges over
/// all finite subsets of t; the gap argument over the finitely many (x', y')
/// pairs then asks for y' ⊇ t.
template <nset_family T>
bool label_f_from_wc(const Wc& v, const T& t) {
  if (!arrow_exists(v.target, t)) return false;
  for (const NSet& tm : t) {
    const bool reachable =
        std::ranges::any_of(v.target, [&](const NSet& y2) { return is_subset(tm, y2); });
    if (!reachable) return false;
    for (const NSet& x : v.source) {
      for (const NSet& y : v.target) {
        const NSet core = intersect(intersect(x, y), tm);
        bool found = false;
        for (const NSet& y2 : v.target) {
          if (!is_subset(tm, y2)) continue;
          found = std::ranges::any_of(v.source,
                                      [&](const NSet& x2) { return almost_subset(core, x2); });
          if (found) break;
        }
        if (!found) return false;
      }
    }
  }
  return true;
}

/// WC(X1, Y1) -> WC(X2, Y2): every (x, y) needs (x', y') with y ⊆ y' and
/// x ∩ y almost inside x'.
inline bool arrow_wc_wc(const Wc& from, const Wc& to) {
  for (const NSet& x : from.source) {
    for (const NSet& y : from.target) {
      const NSet core = intersect(x, y);
      bool found = false;
      for (const NSet& y2 : to.target) {
        if (!is_subset(y, y2)) continue;
        found = std::ranges::any_of(to.source,
                                    [&](const NSet& x2) { return almost_subset(core, x2); });
        if (found) break;
      }
      if (!found) return false;
    }
  }
  return true;
}

inline bool star_wc_wc(const Wc& from, const Wc& to) {
  return star_arrow(product(from.source, from.target), product(to.source, to.target));
}

// ---------------------------------------------------------------------------
// Mixed explicit/virtual queries

using Endpoint = std::variant<Obj, VObj>;

/// A verdict whose fields may be undecided (nullopt) for virtual endpoints.
struct PartialVerdict {
  std::optional<bool> arrow;
  std::optional<bool> star;
  std::optional<bool> w;
  std::optional<bool> f;
  std::optional<bool> c;
  std::vector<std::string> undecided;  ///< one reason per undecided field
};

inline std::string describe(const VObj& v) {
  struct visitor {
    std::string operator()(const Wc& w) const {
      return "WC(" + to_string(w.source) + ", " + to_string(w.target) + ")";
    }
    std::string operator()(const UTilde&) const { return "UTILDE"; }
    std::string operator()(const UProd& u) const { return "UPROD(" + to_string(u.base) + ")"; }
    std::string operator()(const Exp& e) const {
      return "EXP(" + to_string(e.b) + ", " + to_string(e.c) + ")";
    }
    std::string operator()(const ExpSlice& e) const {
      return "EXP_SLICE(" + to_string(e.a) + ", " + to_string(e.b) + ", " + to_string(e.c) + ")";
    }
    std::string operator()(const Wexp& e) const {
      return "WEXP(" + to_string(e.a) + ", " + to_string(e.b) + ", " + to_string(e.c) + ")";
    }
  };
  return std::visit(visitor{}, v.repr());
}

inline std::string describe(const Endpoint& e) {
  if (const auto* o = std::get_if<Obj>(&e)) return to_string(*o);
  return describe(std::get<VObj>(e));
}

namespace detail {

inline Endpoint reduce(const Endpoint& e) {
  if (const auto* v = std::get_if<VObj>(&e))
    if (auto m = materialize(*v)) return *m;
  return e;
}

template <class F>
std::optional<bool> attempt(F&& f, const char* field, std::vector<std::string>& reasons) {
  try {
    return f();
  } catch (const undecided_pair& ex) {
    reasons.push_back(std::string(field) + ": " + ex.what());
    return std::nullopt;
  }
}

}  // namespace detail

inline PartialVerdict decide(const Endpoint& from_in, const Endpoint& to_in,
                             StarTemplate t = StarTemplate::adopted) {
  const Endpoint from = detail::reduce(from_in);
  const Endpoint to = detail::reduce(to_in);
  const auto* fo = std::get_if<Obj>(&from);
  const auto* tobj = std::get_if<Obj>(&to);
  const auto* fv = std::get_if<VObj>(&from);
  const auto* tv = std::get_if<VObj>(&to);

  PartialVerdict out;
  if (fo && tobj) {
    const LabelVerdict v = decide(*fo, *tobj, t);
    out.arrow = v.arrow;
    out.star = v.star;
    out.w = v.w;
    out.f = v.f;
    out.c = v.c;
    return out;
  }

  const std::string pair = describe(from_in) + " -> " + describe(to_in);
  auto undecided = [&pair](const char* what) -> bool {
    throw undecided_pair(std::string(what) + " for " + pair);
  };
  auto star_guard = [&] {
    if (t != StarTemplate::adopted) undecided("literal star template with a virtual endpoint");
  };

  std::function<bool()> arrow, star, back_star, fib;
  if (fo && tv) {
    arrow = [&] { return arrow_into_vobj(*fo, *tv); };
    star = [&] { star_guard(); return star_into_vobj(*fo, *tv); };
    back_star = [&] { star_guard(); return star_from_vobj(*tv, *fo); };
    // Finite source: the fibration condition is "V maps back into the source".
    fib = [&] { return arrow_from_vobj(*tv, *fo); };
  } else if (fv && tobj) {
    arrow = [&] { return arrow_from_vobj(*fv, *tobj); };
    star = [&] { star_guard(); return star_from_vobj(*fv, *tobj); };
    back_star = [&] { star_guard(); return star_into_vobj(*tobj, *fv); };
    fib = [&]() -> bool {
      if (auto w = as_wc(*fv)) return label_f_from_wc(*w, *tobj);
      return undecided("fibration label out of WEXP");
    };
  } else {
    auto wf = as_wc(*fv);
    auto wt = as_wc(*tv);
    arrow = [&]() -> bool {
      if (wf && wt) return arrow_wc_wc(*wf, *wt);
      return undecided("arrow between these virtual kinds");
    };
    star = [&]() -> bool {
      star_guard();
      if (wf && wt) return star_wc_wc(*wf, *wt);
      return undecided("star arrow between these virtual kinds");
    };
    back_star = [&]() -> bool {
      star_guard();
      if (wf && wt) return star_wc_wc(*wt, *wf);
      return undecided("star arrow between these virtual kinds");
    };
    fib = [&]() -> bool { return undecided("fibration label between two virtual objects"); };
  }

  auto& why = out.undecided;
  out.arrow = detail::attempt(arrow, "arrow", why);
  out.c = out.arrow;
  out.star = detail::attempt(star, "star", why);
  if (out.arrow == false) {
    out.w = false;
    out.f = false;
    return out;
  }
  const auto back = detail::attempt(back_star, "w", why);
  const auto gap = detail::attempt(fib, "f", why);
  if (out.arrow && back) out.w = *out.arrow && *back;
  if (out.arrow && gap) out.f = *out.arrow && *gap;
  return out;
}

}  // namespace qtnc
