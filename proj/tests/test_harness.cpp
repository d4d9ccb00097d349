#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "qtnc/harness.hpp"

using namespace qtnc;

namespace {

NSet fin(std::initializer_list<natural> xs) { return NSet::finite(xs); }

}  // namespace

TEST_CASE("enumerate_objects counts canonical objects", "[universe]") {
  CHECK(enumerate_objects(Universe::exhaustive(1)).size() == 2);
  CHECK(enumerate_objects(Universe::exhaustive(2)).size() == 5);
  CHECK(enumerate_objects(Universe::exhaustive(3)).size() == 19);
  CHECK(enumerate_objects(Universe::exhaustive(1, true)).size() == 5);
  CHECK(enumerate_objects(Universe::exhaustive(2, true)).size() == 19);

  // Against the independent enumeration, up to order.
  for (bool cof : {false, true}) {
    auto ours = enumerate_objects(Universe::exhaustive(2, cof));
    auto theirs = oracle::all_objects(2, cof);
    CHECK(ours.size() == theirs.size());
    for (const Obj& x : theirs) CHECK(std::ranges::count(ours, x) == 1);
  }
}

TEST_CASE("window 2 enumeration order", "[universe]") {
  const auto objs = enumerate_objects(Universe::exhaustive(2));
  const std::vector<Obj> expected{initial(), normalize({fin({0})}), normalize({fin({1})}),
                                  normalize({fin({0}), fin({1})}), normalize({fin({0, 1})})};
  CHECK(objs == expected);
}

TEST_CASE("size guard", "[universe]") {
  CHECK_THROWS_AS(enumerate_objects(Universe::exhaustive(4)), size_guard_error);
  CHECK_THROWS_AS(enumerate_objects(Universe::exhaustive(3, true)), size_guard_error);
  CHECK_NOTHROW(check_size_guard(Universe::sampled(40, true, 10)));
  CHECK_THROWS_AS(check_size_guard(Universe::sampled(64, true, 10)), size_guard_error);
}

TEST_CASE("sampling is deterministic in the seed", "[universe]") {
  const Universe u = Universe::sampled(3, true, 50, 7);
  auto draw = [&](std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Obj> out;
    for (int i = 0; i < 50; ++i) out.push_back(random_obj(rng, u));
    return out;
  };
  CHECK(draw(7) == draw(7));
  CHECK(draw(7) != draw(8));
}

TEST_CASE("sampler helpers respect their relation", "[universe][property]") {
  const Universe u = Universe::sampled(3, true, 0);
  Rng rng(5);
  for (int i = 0; i < 500; ++i) {
    const Obj x = random_obj(rng, u);
    CHECK(arrow_exists(x, random_superobject(rng, u, x)));
    CHECK(label_w(x, random_weq_superobject(rng, u, x)));
    CHECK(arrow_exists(random_subobject(rng, u, x), x));
    for (const Family& v : iso_variants(x)) CHECK(is_iso(normalize(v), x));
  }
}

TEST_CASE("every check passes on the window 2 exhaustive universe", "[harness]") {
  for (const auto& group : {axiom_checks(), claim_checks()}) {
    for (const CheckSpec& spec : group) {
      INFO(spec.name);
      const CheckResult r = run_check(spec, Universe::exhaustive(2));
      CHECK(r.passed());
      CHECK(r.premises_met > 0);
      std::uint64_t expected = 1;
      for (std::size_t i = 0; i < spec.roles.size(); ++i) expected *= 5;
      CHECK(r.instances_tested == expected);
    }
  }
}

TEST_CASE("every check passes on samples with cofinite members", "[harness]") {
  for (const auto& group : {axiom_checks(), claim_checks()}) {
    for (const CheckSpec& spec : group) {
      INFO(spec.name);
      const CheckResult r = run_check(spec, Universe::sampled(3, true, 500, 3));
      CHECK(r.passed());
      CHECK(r.premises_met > 0);
    }
  }
}

TEST_CASE("literal star breaks iso-invariance", "[harness]") {
  const CheckSpec spec = iso_invariance();
  RunOptions literal;
  literal.star = StarTemplate::literal;
  const CheckResult r = run_check(spec, Universe::sampled(3, true, 2000), literal);
  REQUIRE_FALSE(r.passed());
  REQUIRE_FALSE(r.violations.empty());
  for (const Violation& v : r.violations) {
    CHECK(replay(spec, v.objects, literal));
    CHECK_FALSE(replay(spec, v.objects));
  }
  // The adopted template has no such counterexample.
  CHECK(run_check(spec, Universe::sampled(3, true, 2000)).passed());
}

TEST_CASE("shrinking keeps the violation and never grows it", "[harness]") {
  const CheckSpec spec = iso_invariance();
  RunOptions literal;
  literal.star = StarTemplate::literal;
  // The heaviest violating pair of the window 2 universe.
  const auto objs = enumerate_objects(Universe::exhaustive(2, true));
  Violation big;
  for (const Obj& x : objs)
    for (const Obj& y : objs) {
      const Instance inst{x, y};
      const Outcome out = spec.evaluate(inst, literal);
      if (out.violation && (big.objects.empty() || detail::weight(inst) > detail::weight(big.objects)))
        big = Violation{inst, *out.violation};
    }
  REQUIRE(replay(spec, big.objects, literal));
  const Violation small = shrink(spec, big, literal);
  CHECK(replay(spec, small.objects, literal));
  CHECK(detail::weight(small.objects) <= detail::weight(big.objects));
  CHECK_FALSE(small.detail.empty());
}

TEST_CASE("reported violations are distinct", "[harness]") {
  RunOptions literal;
  literal.star = StarTemplate::literal;
  const CheckResult r = run_check(iso_invariance(), Universe::sampled(3, true, 2000), literal);
  for (std::size_t i = 0; i < r.violations.size(); ++i)
    for (std::size_t j = i + 1; j < r.violations.size(); ++j)
      CHECK(r.violations[i].objects != r.violations[j].objects);
}

TEST_CASE("thread count does not change the report", "[harness]") {
  RunOptions one, four;
  one.threads = 1;
  four.threads = 4;
  one.star = four.star = StarTemplate::literal;
  for (const Universe& u : {Universe::exhaustive(2, true), Universe::sampled(3, true, 3000, 9)}) {
    const json a = to_json(run_check(iso_invariance(), u, one));
    const json b = to_json(run_check(iso_invariance(), u, four));
    CHECK(a.dump() == b.dump());
  }
}

TEST_CASE("find_check", "[harness]") {
  CHECK(find_check("M1_LIFTING").has_value());
  CHECK(find_check("WEXP_REPRESENTABILITY").has_value());
  CHECK_FALSE(find_check("M3").has_value());
}
