#pragma once

// Finite and cofinite subsets of the natural numbers.
//
// An NSet is either FIN S (the finite set S) or COFIN S (the complement of the
// finite set S).  This class is closed under intersection, union, difference
// and complement, which is all the set algebra the category needs.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

namespace qtnc {

using natural = std::uint64_t;

/// Size of a subset of N: a finite count or aleph_0.
class Cardinality {
 public:
  static constexpr Cardinality finite(std::size_t n) noexcept { return Cardinality{n}; }
  static constexpr Cardinality infinite() noexcept { return Cardinality{}; }

  constexpr bool is_finite() const noexcept { return count_.has_value(); }
  /// Only meaningful when is_finite().
  constexpr std::size_t count() const noexcept { return count_.value_or(0); }

  friend constexpr bool operator==(const Cardinality&, const Cardinality&) = default;

 private:
  constexpr Cardinality() = default;
  constexpr explicit Cardinality(std::size_t n) : count_{n} {}
  std::optional<std::size_t> count_;
};

inline std::ostream& operator<<(std::ostream& os, const Cardinality& c) {
  if (c.is_finite()) return os << c.count();
  return os << "aleph_0";
}

class NSet {
 public:
  enum class Kind : std::uint8_t { fin, cofin };

  /// The empty set.
  NSet() = default;

  static NSet finite(std::vector<natural> members) { return NSet{Kind::fin, std::move(members)}; }
  static NSet finite(std::initializer_list<natural> members) {
    return finite(std::vector<natural>(members));
  }
  static NSet cofinite(std::vector<natural> excluded) {
    return NSet{Kind::cofin, std::move(excluded)};
  }
  static NSet cofinite(std::initializer_list<natural> excluded) {
    return cofinite(std::vector<natural>(excluded));
  }
  static NSet empty() { return NSet{}; }
  static NSet all() { return NSet{Kind::cofin, {}}; }

  Kind kind() const noexcept { return kind_; }
  bool is_finite() const noexcept { return kind_ == Kind::fin; }
  bool is_cofinite() const noexcept { return kind_ == Kind::cofin; }
  bool is_empty() const noexcept { return is_finite() && support_.empty(); }
  bool is_all() const noexcept { return is_cofinite() && support_.empty(); }

  /// Members for FIN, excluded elements for COFIN; sorted, no duplicates.
  std::span<const natural> support() const noexcept { return support_; }

  bool contains(natural n) const {
    const bool listed = std::binary_search(support_.begin(), support_.end(), n);
    return is_finite() ? listed : !listed;
  }

  Cardinality cardinality() const noexcept {
    return is_finite() ? Cardinality::finite(support_.size()) : Cardinality::infinite();
  }

  /// Least member, or nullopt for the empty set.
  std::optional<natural> min_element() const {
    if (is_finite()) {
      if (support_.empty()) return std::nullopt;
      return support_.front();
    }
    natural candidate = 0;
    for (natural excluded : support_) {
      if (excluded != candidate) break;
      ++candidate;
    }
    return candidate;
  }

  NSet complement() const {
    return NSet{is_finite() ? Kind::cofin : Kind::fin, support_, canonical_tag{}};
  }

  friend bool operator==(const NSet&, const NSet&) = default;
  friend std::strong_ordering operator<=>(const NSet&, const NSet&) = default;

 private:
  struct canonical_tag {};

  NSet(Kind kind, std::vector<natural> support) : kind_{kind}, support_{std::move(support)} {
    std::sort(support_.begin(), support_.end());
    support_.erase(std::unique(support_.begin(), support_.end()), support_.end());
  }
  NSet(Kind kind, std::vector<natural> support, canonical_tag)
      : kind_{kind}, support_{std::move(support)} {}

  // Declaration order matters for the defaulted ordering: FIN sorts before COFIN.
  Kind kind_ = Kind::fin;
  std::vector<natural> support_;
};

namespace detail {

enum class merge_op { intersection, union_, difference };

inline std::vector<natural> merge(std::span<const natural> a, std::span<const natural> b,
                                  merge_op op) {
  std::vector<natural> out;
  out.reserve(a.size() + b.size());
  switch (op) {
    case merge_op::intersection:
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
      break;
    case merge_op::union_:
      std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
      break;
    case merge_op::difference:
      std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
      break;
  }
  return out;
}

}  // namespace detail

inline NSet intersect(const NSet& a, const NSet& b) {
  using detail::merge;
  using detail::merge_op;
  if (a.is_finite() && b.is_finite())
    return NSet::finite(merge(a.support(), b.support(), merge_op::intersection));
  if (a.is_finite())
    return NSet::finite(merge(a.support(), b.support(), merge_op::difference));
  if (b.is_finite())
    return NSet::finite(merge(b.support(), a.support(), merge_op::difference));
  return NSet::cofinite(merge(a.support(), b.support(), merge_op::union_));
}

inline NSet unite(const NSet& a, const NSet& b) {
  using detail::merge;
  using detail::merge_op;
  if (a.is_finite() && b.is_finite())
    return NSet::finite(merge(a.support(), b.support(), merge_op::union_));
  if (a.is_finite())
    return NSet::cofinite(merge(b.support(), a.support(), merge_op::difference));
  if (b.is_finite())
    return NSet::cofinite(merge(a.support(), b.support(), merge_op::difference));
  return NSet::cofinite(merge(a.support(), b.support(), merge_op::intersection));
}

inline NSet difference(const NSet& a, const NSet& b) { return intersect(a, b.complement()); }

inline NSet operator&(const NSet& a, const NSet& b) { return intersect(a, b); }
inline NSet operator|(const NSet& a, const NSet& b) { return unite(a, b); }
inline NSet operator-(const NSet& a, const NSet& b) { return difference(a, b); }
inline NSet operator~(const NSet& a) { return a.complement(); }

/// |a \ b|; infinite exactly when a is cofinite and b is finite.
inline Cardinality diff_card(const NSet& a, const NSet& b) { return difference(a, b).cardinality(); }

/// a \ b is finite, i.e. a is almost contained in b.
inline bool almost_subset(const NSet& a, const NSet& b) { return !(a.is_cofinite() && b.is_finite()); }

inline bool is_subset(const NSet& a, const NSet& b) {
  using detail::merge;
  using detail::merge_op;
  if (a.is_finite() && b.is_finite())
    return std::includes(b.support().begin(), b.support().end(), a.support().begin(),
                         a.support().end());
  if (a.is_finite()) return merge(a.support(), b.support(), merge_op::intersection).empty();
  if (b.is_finite()) return false;
  return std::includes(a.support().begin(), a.support().end(), b.support().begin(),
                       b.support().end());
}

inline std::string to_string(const NSet& s) {
  std::ostringstream os;
  auto list = [&os](std::span<const natural> xs) {
    os << '{';
    for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i];
    os << '}';
  };
  if (s.is_finite()) {
    list(s.support());
  } else if (s.is_all()) {
    os << 'N';
  } else {
    os << "N\\";
    list(s.support());
  }
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const NSet& s) { return os << to_string(s); }

}  // namespace qtnc
