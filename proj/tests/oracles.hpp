#pragma once

// Brute-force oracles used only by the tests.  None of these call the
// closed-form deciders they are compared against.

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "qtnc/kernel.hpp"

namespace oracle {

using qtnc::Family;
using qtnc::natural;
using qtnc::NSet;
using qtnc::Obj;

/// A subset of N seen through the window {0..n-1} plus one "tail" bit that
/// stands for every element >= n.  Exact for NSets whose support lies in the
/// window.
struct Windowed {
  std::uint64_t bits = 0;
  bool tail = false;

  friend bool operator==(const Windowed&, const Windowed&) = default;
};

inline Windowed view(const NSet& s, unsigned window) {
  Windowed w;
  for (unsigned i = 0; i < window; ++i)
    if (s.contains(i)) w.bits |= std::uint64_t{1} << i;
  w.tail = s.is_cofinite();
  return w;
}

inline Windowed meet(Windowed a, Windowed b) { return {a.bits & b.bits, a.tail && b.tail}; }
inline Windowed join(Windowed a, Windowed b) { return {a.bits | b.bits, a.tail || b.tail}; }
inline Windowed minus(Windowed a, Windowed b, unsigned window) {
  const std::uint64_t mask = (std::uint64_t{1} << window) - 1;
  return {a.bits & ~b.bits & mask, a.tail && !b.tail};
}
inline bool subset(Windowed a, Windowed b, unsigned window) {
  const Windowed d = minus(a, b, window);
  return d.bits == 0 && !d.tail;
}

/// Every NSet (both kinds) whose support lies in {0..window-1}.
inline std::vector<NSet> all_nsets(unsigned window, bool cofinite = true) {
  std::vector<NSet> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << window); ++mask) {
    std::vector<natural> support;
    for (unsigned i = 0; i < window; ++i)
      if (mask & (std::uint64_t{1} << i)) support.push_back(i);
    out.push_back(NSet::finite(support));
    if (cofinite) out.push_back(NSet::cofinite(support));
  }
  return out;
}

/// Every canonical object over the window, by normalizing every subfamily of
/// all_nsets and deduplicating.
inline std::vector<Obj> all_objects(unsigned window, bool cofinite) {
  const auto pool = all_nsets(window, cofinite);
  std::set<Obj> seen;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pool.size()); ++mask) {
    Family f;
    for (std::size_t i = 0; i < pool.size(); ++i)
      if (mask & (std::uint64_t{1} << i)) f.push_back(pool[i]);
    seen.insert(qtnc::normalize(f));
  }
  return {seen.begin(), seen.end()};
}

/// Finite subsets of s restricted to {0..bound-1}.
inline std::vector<NSet> finite_subsets(const NSet& s, unsigned bound) {
  std::vector<natural> elems;
  for (unsigned i = 0; i < bound; ++i)
    if (s.contains(i)) elems.push_back(i);
  std::vector<NSet> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << elems.size()); ++mask) {
    std::vector<natural> pick;
    for (std::size_t i = 0; i < elems.size(); ++i)
      if (mask & (std::uint64_t{1} << i)) pick.push_back(elems[i]);
    out.push_back(NSet::finite(pick));
  }
  return out;
}

/// Fibration condition by enumerating every finite b ⊆ y; targets must be
/// finite-membered so the enumeration is complete.
template <class X, class Y>
bool fibration_condition_enumerated(const X& source, const Y& target) {
  Family xs{NSet::empty()};
  for (const NSet& x : source) xs.push_back(x);
  for (const NSet& y : target) {
    if (!y.is_finite()) throw std::logic_error("enumeration oracle needs finite targets");
    natural top = y.support().empty() ? 0 : y.support().back() + 1;
    for (const NSet& x : xs) {
      for (const NSet& b : finite_subsets(y, static_cast<unsigned>(top))) {
        const NSet need = (x & y) | b;
        bool ok = false;
        for (const NSet& x2 : source) ok = ok || qtnc::is_subset(need, x2);
        if (!ok) return false;
      }
    }
  }
  return true;
}

/// C^B by enumerating every choice function B -> C.
inline Obj exp_by_choice_functions(const Obj& b, const Obj& c) {
  const auto& bs = b.members();
  const auto& cs = c.members();
  std::vector<std::size_t> choice(bs.size(), 0);
  Family out;
  while (true) {
    NSet acc = NSet::all();
    for (std::size_t i = 0; i < bs.size(); ++i) acc = acc & (cs[choice[i]] | ~bs[i]);
    out.push_back(acc);
    std::size_t k = 0;
    while (k < choice.size() && ++choice[k] == cs.size()) choice[k++] = 0;
    if (k == choice.size()) break;
  }
  return qtnc::normalize(out);
}

/// Members of WC(X, Y) whose finite part y0 lies below `bound`.
inline Family wc_members(const Obj& x, const Obj& y, unsigned bound) {
  Family out;
  for (const NSet& xm : x)
    for (const NSet& ym : y)
      for (const NSet& y0 : finite_subsets(ym, bound)) out.push_back((xm & ym) | y0);
  return out;
}

/// s is contained in a member of WC(X, Y), found by searching members of the
/// shape (x ∩ y) ∪ y0 with y0 = (s \ x) when that is finite.
inline bool wc_member_search(const Obj& x, const Obj& y, const NSet& s) {
  for (const NSet& xm : x)
    for (const NSet& ym : y) {
      const NSet y0 = s - xm;
      if (!y0.is_finite() || !qtnc::is_subset(y0, ym)) continue;
      if (qtnc::is_subset(s, (xm & ym) | y0)) return true;
    }
  return false;
}

// ---------------------------------------------------------------------------
// Test-local random generation.

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_{seed} {}

  NSet nset(unsigned window, bool cofinite) {
    std::vector<natural> support;
    for (unsigned i = 0; i < window; ++i)
      if (coin()) support.push_back(i);
    if (cofinite && below(4) == 0) return NSet::cofinite(support);
    return NSet::finite(support);
  }

  Family family(unsigned window, bool cofinite, unsigned max_members = 4) {
    Family f;
    const auto n = below(max_members + 1);
    for (std::uint64_t i = 0; i < n; ++i) f.push_back(nset(window, cofinite));
    return f;
  }

  Obj obj(unsigned window, bool cofinite) { return qtnc::normalize(family(window, cofinite)); }

  /// Y with X -> Y.
  Obj above(const Obj& x, unsigned window, bool cofinite) {
    Family f;
    for (const NSet& m : x) f.push_back(coin() ? m : (m | nset(window, cofinite)));
    if (coin()) f.push_back(nset(window, cofinite));
    return qtnc::normalize(f);
  }

  /// Y with X -(w)-> Y.
  Obj weq_above(const Obj& x, unsigned window) {
    Family f;
    for (const NSet& m : x) f.push_back(coin() ? m : (m | nset(window, false)));
    return qtnc::normalize(f);
  }

  bool coin() { return (rng_() & 1U) != 0; }
  std::uint64_t below(std::uint64_t n) { return rng_() % n; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace oracle
