#pragma once

// The posetal category of families of finite/cofinite sets.
//
// An object is a family X of NSets; there is an arrow X -> Y exactly when every
// member of X is contained in some member of Y.  Deciders accept any forward
// range of NSets so that raw, non-canonical families (used when probing
// isomorphism invariance) and canonical Objs go through the same code.

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <optional>
#include <ranges>
#include <string>
#include <type_traits>
#include <vector>

#include "qtnc/nset.hpp"

namespace qtnc {

template <class R>
concept nset_family =
    std::ranges::forward_range<R> &&
    std::same_as<std::remove_cvref_t<std::ranges::range_reference_t<R>>, NSet>;

/// A raw family of NSets, not necessarily canonical.
using Family = std::vector<NSet>;

/// Canonical object: contains the empty set, and its other members form an
/// antichain under inclusion.  Equal canonical forms <=> isomorphic objects.
class Obj {
 public:
  using value_type = NSet;
  using const_iterator = std::vector<NSet>::const_iterator;
  using iterator = const_iterator;

  /// The initial object {∅}.
  Obj() : members_{NSet::empty()} {}

  const std::vector<NSet>& members() const noexcept { return members_; }
  const_iterator begin() const noexcept { return members_.begin(); }
  const_iterator end() const noexcept { return members_.end(); }
  std::size_t size() const noexcept { return members_.size(); }

  /// Every member is a finite set.
  bool all_finite() const {
    return std::ranges::all_of(members_, [](const NSet& m) { return m.is_finite(); });
  }

  friend bool operator==(const Obj&, const Obj&) = default;
  friend auto operator<=>(const Obj&, const Obj&) = default;

  template <nset_family R>
  friend Obj normalize(const R& members);

 private:
  explicit Obj(std::vector<NSet> canonical) : members_{std::move(canonical)} {}
  std::vector<NSet> members_;
};

/// Adds ∅, drops duplicates and members strictly contained in another member.
/// The empty family normalizes to {∅}.
template <nset_family R>
Obj normalize(const R& members) {
  std::vector<NSet> all{NSet::empty()};
  for (const NSet& m : members) all.push_back(m);
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());

  std::vector<NSet> kept;
  kept.reserve(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (all[i].is_empty()) {
      kept.push_back(all[i]);
      continue;
    }
    bool dominated = false;
    for (std::size_t j = 0; j < all.size() && !dominated; ++j)
      dominated = j != i && is_subset(all[i], all[j]);
    if (!dominated) kept.push_back(all[i]);
  }
  return Obj{std::move(kept)};
}

inline Obj normalize(std::initializer_list<NSet> members) {
  return normalize(std::vector<NSet>(members));
}

inline Family to_family(const Obj& x) { return x.members(); }

template <nset_family R>
std::string to_string(const R& family) {
  std::string out = "{";
  bool first = true;
  for (const NSet& m : family) {
    out += (first ? "" : ", ") + to_string(m);
    first = false;
  }
  return out + "}";
}

inline Obj initial() { return Obj{}; }
inline Obj terminal() { return normalize({NSet::all()}); }

template <nset_family X, nset_family Y>
bool arrow_exists(const X& from, const Y& to) {
  return std::ranges::all_of(from, [&](const NSet& x) {
    return std::ranges::any_of(to, [&](const NSet& y) { return is_subset(x, y); });
  });
}

template <nset_family X, nset_family Y>
bool is_iso(const X& a, const Y& b) {
  return arrow_exists(a, b) && arrow_exists(b, a);
}

/// How X ->* Y measures the difference between paired members.
enum class StarTemplate {
  adopted,  ///< for all x exists y with |x \ y| finite
  literal,  ///< for all x exists y with |y \ x| finite
};

template <nset_family X, nset_family Y>
bool star_arrow(const X& from, const Y& to, StarTemplate t = StarTemplate::adopted) {
  return std::ranges::all_of(from, [&](const NSet& x) {
    return std::ranges::any_of(to, [&](const NSet& y) {
      return t == StarTemplate::adopted ? almost_subset(x, y) : almost_subset(y, x);
    });
  });
}

template <nset_family X, nset_family Y>
bool label_w(const X& from, const Y& to, StarTemplate t = StarTemplate::adopted) {
  return arrow_exists(from, to) && star_arrow(to, from, t);
}

template <nset_family X, nset_family Y>
bool label_c(const X& from, const Y& to) {
  return arrow_exists(from, to);
}

/// A failure of the fibration condition: no member of the source contains
/// (source_member ∩ target_member) ∪ finite_part, although finite_part is a
/// finite subset of target_member.
struct GapWitness {
  NSet source_member;
  NSet target_member;
  NSet finite_part;
};

namespace detail {

template <nset_family X>
std::optional<GapWitness> gap_at(const X& source, const NSet& x, const NSet& y) {
  const NSet core = intersect(x, y);
  std::vector<natural> picks;
  for (const NSet& candidate : source) {
    if (!is_subset(core, candidate)) continue;
    if (is_subset(y, candidate)) return std::nullopt;
    // y ⊄ candidate, so y \ candidate has a least element.
    picks.push_back(*difference(y, candidate).min_element());
  }
  return GapWitness{x, y, NSet::finite(std::move(picks))};
}

}  // namespace detail

/// Definitional search for the fibration condition: for x in source ∪ {∅},
/// y in target, and finite b ⊆ y, some x' in source contains (x ∩ y) ∪ b.
/// The unbounded quantifier over b is eliminated by collecting, for each
/// member that could still work, one element of y it misses.  Returns the
/// first failing (x, y, b), or nullopt when the condition holds.
template <nset_family X, nset_family Y>
std::optional<GapWitness> fibration_gap(const X& source, const Y& target) {
  for (const NSet& y : target) {
    if (auto w = detail::gap_at(source, NSet::empty(), y)) return w;
    for (const NSet& x : source)
      if (auto w = detail::gap_at(source, x, y)) return w;
  }
  return std::nullopt;
}

/// Closed form of the fibration condition for a finite source: every member
/// of the target lies inside some member of the source.
template <nset_family X, nset_family Y>
bool fibration_condition_reduced(const X& source, const Y& target) {
  return arrow_exists(target, source);
}

template <nset_family X, nset_family Y>
bool label_f(const X& from, const Y& to) {
  return arrow_exists(from, to) && !fibration_gap(from, to).has_value();
}

struct LabelVerdict {
  bool arrow = false;
  bool star = false;  ///< from ->* to
  bool w = false;
  bool f = false;
  bool c = false;

  friend bool operator==(const LabelVerdict&, const LabelVerdict&) = default;
};

template <nset_family X, nset_family Y>
LabelVerdict decide(const X& from, const Y& to, StarTemplate t = StarTemplate::adopted) {
  LabelVerdict v;
  v.arrow = arrow_exists(from, to);
  v.star = star_arrow(from, to, t);
  v.w = v.arrow && star_arrow(to, from, t);
  v.f = v.arrow && !fibration_gap(from, to).has_value();
  v.c = v.arrow;
  return v;
}

/// Pointwise intersection.
template <nset_family X, nset_family Y>
Obj product(const X& a, const Y& b) {
  std::vector<NSet> out;
  for (const NSet& x : a)
    for (const NSet& y : b) out.push_back(intersect(x, y));
  return normalize(out);
}

/// Union of families.
template <nset_family X, nset_family Y>
Obj coproduct(const X& a, const Y& b) {
  std::vector<NSet> out(std::ranges::begin(a), std::ranges::end(a));
  out.insert(out.end(), std::ranges::begin(b), std::ranges::end(b));
  return normalize(out);
}

}  // namespace qtnc
