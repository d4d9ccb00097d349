#pragma once

// Universes of explicit objects: exhaustive enumeration over a small window of
// ground elements, or seeded sampling.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qtnc/errors.hpp"
#include "qtnc/kernel.hpp"

namespace qtnc {

struct Universe {
  enum class Mode { exhaustive, sampled };

  unsigned window = 2;  ///< ground elements {0..window-1}
  bool include_cofinite = false;
  Mode mode = Mode::exhaustive;
  std::uint64_t count = 10000;  ///< sampled mode only
  std::uint64_t seed = 42;      ///< sampled mode only

  static Universe exhaustive(unsigned window, bool cofinite = false) {
    return {window, cofinite, Mode::exhaustive, 0, 0};
  }
  static Universe sampled(unsigned window, bool cofinite, std::uint64_t count,
                          std::uint64_t seed = 42) {
    return {window, cofinite, Mode::sampled, count, seed};
  }
};

inline std::string to_string(const Universe& u) {
  std::string out = u.mode == Universe::Mode::exhaustive ? "exhaustive" : "sampled";
  out += " window=" + std::to_string(u.window);
  out += u.include_cofinite ? " with cofinite" : " fin-only";
  if (u.mode == Universe::Mode::sampled)
    out += " count=" + std::to_string(u.count) + " seed=" + std::to_string(u.seed);
  return out;
}

/// Largest exhaustive windows: 19 objects either way.
inline void check_size_guard(const Universe& u) {
  if (u.mode == Universe::Mode::exhaustive) {
    const unsigned limit = u.include_cofinite ? 2 : 3;
    if (u.window > limit)
      throw size_guard_error("exhaustive enumeration is limited to window " +
                             std::to_string(limit) +
                             (u.include_cofinite ? " with cofinite members" : " (fin-only)") +
                             "; use sampling for window " + std::to_string(u.window));
  } else if (u.window > 63) {
    throw size_guard_error("sampling window must be at most 63");
  }
}

/// Every NSet whose support lies in the window, FIN before COFIN, each in
/// binary order of the support.
inline std::vector<NSet> window_nsets(unsigned window, bool cofinite) {
  std::vector<NSet> out;
  for (int kind = 0; kind < (cofinite ? 2 : 1); ++kind) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << window); ++mask) {
      std::vector<natural> support;
      for (unsigned i = 0; i < window; ++i)
        if (mask >> i & 1U) support.push_back(i);
      out.push_back(kind == 0 ? NSet::finite(std::move(support))
                              : NSet::cofinite(std::move(support)));
    }
  }
  return out;
}

/// Canonical objects of an exhaustive universe, each exactly once.  Antichains
/// of nonempty window sets are visited in binary order of their index set.
inline std::vector<Obj> enumerate_objects(const Universe& u) {
  check_size_guard(u);
  if (u.mode != Universe::Mode::exhaustive)
    throw std::logic_error("enumerate_objects needs an exhaustive universe");
  std::vector<NSet> pool;
  for (NSet& s : window_nsets(u.window, u.include_cofinite))
    if (!s.is_empty()) pool.push_back(std::move(s));

  std::vector<Obj> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pool.size()); ++mask) {
    Family chosen;
    bool antichain = true;
    for (std::size_t i = 0; i < pool.size() && antichain; ++i) {
      if (!(mask >> i & 1U)) continue;
      for (const NSet& other : chosen)
        antichain = antichain && !is_subset(other, pool[i]) && !is_subset(pool[i], other);
      chosen.push_back(pool[i]);
    }
    if (antichain) out.push_back(normalize(chosen));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sampling

/// Seeded generator.  Uses raw engine output only, so sequences are identical
/// across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_{seed} {}

  std::uint64_t next() { return engine_(); }
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }
  bool coin() { return (next() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

/// Support uniform over subsets of the window; COFIN with probability 1/4.
inline NSet random_nset(Rng& rng, unsigned window, bool cofinite) {
  std::vector<natural> support;
  for (unsigned i = 0; i < window; ++i)
    if (rng.coin()) support.push_back(i);
  if (cofinite && rng.below(4) == 0) return NSet::cofinite(std::move(support));
  return NSet::finite(std::move(support));
}

inline NSet random_finite(Rng& rng, unsigned window) { return random_nset(rng, window, false); }

/// Geometric member count with mean 2.
inline Family random_family(Rng& rng, unsigned window, bool cofinite) {
  Family out;
  while (rng.below(3) != 0) out.push_back(random_nset(rng, window, cofinite));
  return out;
}

inline Obj random_obj(Rng& rng, const Universe& u) {
  return normalize(random_family(rng, u.window, u.include_cofinite));
}

/// Some Y with X -> Y.
inline Obj random_superobject(Rng& rng, const Universe& u, const Obj& x) {
  Family out;
  for (const NSet& m : x)
    out.push_back(rng.coin() ? m : unite(m, random_nset(rng, u.window, u.include_cofinite)));
  for (const NSet& extra : random_family(rng, u.window, u.include_cofinite)) out.push_back(extra);
  return normalize(out);
}

/// Some Y with X -(w)-> Y: members of X enlarged by finite sets.
inline Obj random_weq_superobject(Rng& rng, const Universe& u, const Obj& x) {
  Family out;
  for (const NSet& m : x) {
    out.push_back(rng.coin() ? m : unite(m, random_finite(rng, u.window)));
    if (rng.below(4) == 0) out.push_back(unite(m, random_finite(rng, u.window)));
  }
  return normalize(out);
}

/// Some Z with Z -> X.
inline Obj random_subobject(Rng& rng, const Universe& u, const Obj& x) {
  Family out;
  for (const NSet& m : x) {
    if (rng.below(4) == 0) continue;
    out.push_back(rng.coin() ? m : intersect(m, random_nset(rng, u.window, u.include_cofinite)));
  }
  return normalize(out);
}

/// Raw families isomorphic to x but differing from its canonical form: ∅
/// toggled, a dominated member added, a member duplicated, order reversed.
inline std::vector<Family> iso_variants(const Obj& x) {
  const Family& base = x.members();
  std::vector<Family> out;

  Family toggled;
  for (const NSet& m : base)
    if (!m.is_empty()) toggled.push_back(m);
  if (!toggled.empty()) out.push_back(toggled);

  for (const NSet& m : base) {
    if (m.is_empty()) continue;
    const NSet smaller = difference(m, NSet::finite({*m.min_element()}));
    if (smaller.is_empty()) continue;
    Family dominated = base;
    dominated.push_back(smaller);
    out.push_back(std::move(dominated));
    break;
  }

  Family duplicated = base;
  duplicated.push_back(base.back());
  out.push_back(std::move(duplicated));

  out.emplace_back(base.rbegin(), base.rend());
  return out;
}

}  // namespace qtnc
