#include <doctest.h>

#include <algorithm>

#include "pamalg/partial_auto.hpp"
#include "pamalg/rng.hpp"
#include "pamalg/witness.hpp"
#include "test_support.hpp"

using namespace pamalg;
using test::make_antichain;
using test::make_chain;

TEST_CASE("validate_pa accepts the canonical maps") {
  Poset chain = make_chain(3);
  CHECK_NOTHROW(validate_pa(chain, {{0, 1}, {2, 2}}));
  CHECK_NOTHROW(validate_pa(chain, {{0, 2}}));
  CHECK_NOTHROW(validate_pa(chain, {}));
}

TEST_CASE("validate_pa rejects order violations and non-injective maps") {
  Poset chain = make_chain(2);
  try {
    validate_pa(chain, {{0, 1}, {1, 0}});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OrderViolation);
  }
  try {
    validate_pa(chain, {{0, 1}, {1, 1}});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotInjective);
  }
  CHECK_THROWS_AS(validate_pa(chain, {{0, 9}}), Error);
}

TEST_CASE("extend_by_pair examples") {
  Poset chain = make_chain(3);
  PartialAutomorphism h = validate_pa(chain, {{0, 1}});
  PartialAutomorphism extended = extend_by_pair(h, 1, 2);
  CHECK(extended.graph() == std::vector<IdPair>{{0, 1}, {1, 2}});

  PartialAutomorphism fa = validate_pa(chain, {{0, 1}, {2, 2}});
  CHECK_THROWS_AS(extend_by_pair(fa, 1, 0), TypeMismatchError);
  try {
    extend_by_pair(fa, 1, 0);
  } catch (const TypeMismatchError& e) {
    CHECK(e.pushed_type != e.target_type);
  }

  PartialAutomorphism empty = validate_pa(chain, {});
  CHECK(extend_by_pair(empty, 1, 1).graph() == std::vector<IdPair>{{1, 1}});

  CHECK_THROWS_AS(extend_by_pair(fa, 0, 0), Error);  // 0 already in the domain
}

TEST_CASE("Fact-1 equivalence, exhaustive on 3 elements") {
  for (const Poset& p : test::posets_up_to_iso(3)) {
    for (const auto& graph : test::all_partial_automorphisms(p)) {
      PartialAutomorphism h = validate_pa(p, graph);
      for (ElementId c : p.elements()) {
        if (h.defined_on(c)) continue;
        for (ElementId d : p.elements()) {
          if (h.preimage(d)) continue;
          std::vector<IdPair> enlarged = graph;
          enlarged.emplace_back(c, d);
          bool direct = !check_pa(p, enlarged).has_value();
          bool via_types = true;
          try {
            extend_by_pair(h, c, d);
          } catch (const TypeMismatchError&) {
            via_types = false;
          }
          CHECK(direct == via_types);
        }
      }
    }
  }
}

TEST_CASE("orbit") {
  Poset chain = make_chain(3);
  PartialAutomorphism h = validate_pa(chain, {{0, 1}, {1, 2}});
  Orbit o = orbit(h, 0);
  CHECK(o.points == std::vector<ElementId>{0, 1, 2});
  CHECK_FALSE(o.cycle);

  PartialAutomorphism fixed = validate_pa(chain, {{2, 2}});
  Orbit fp = orbit(fixed, 2);
  CHECK(fp.points == std::vector<ElementId>{2});
  CHECK(fp.cycle);

  PartialAutomorphism none = validate_pa(chain, {});
  CHECK(orbit(none, 0).points == std::vector<ElementId>{0});
  CHECK_FALSE(orbit(none, 0).cycle);
}

TEST_CASE("orbits under extensions of the canonical f are increasing") {
  PaPair base = base_pair();
  Rng rng(31337);
  for (int round = 0; round < 30; ++round) {
    std::vector<IdPair> graph = base.f.graph();
    Poset p = base.poset;
    // grow the poset a little and extend f through legal moves
    for (int step = 0; step < 4; ++step) {
      auto placements = enumerate_placements(p, {});
      const Placement& pl = placements[rng.below(placements.size())];
      p = p.with_element(p.fresh_id(), pl.under, pl.over);
    }
    PartialAutomorphism f = validate_pa(p, graph);
    for (int step = 0; step < 4; ++step) {
      std::vector<IdPair> candidates;
      for (ElementId c : p.elements()) {
        if (f.defined_on(c)) continue;
        for (ElementId d : p.elements()) {
          if (f.preimage(d)) continue;
          candidates.emplace_back(c, d);
        }
      }
      rng.shuffle(candidates);
      for (auto [c, d] : candidates) {
        try {
          f = extend_by_pair(f, c, d);
          break;
        } catch (const Error&) {
        }
      }
    }
    Orbit o = orbit(f, 0);
    for (std::size_t i = 0; i + 1 < o.points.size(); ++i) {
      CHECK(p.less(o.points[i], o.points[i + 1]));
    }
  }
}

TEST_CASE("is_pa_extension") {
  PaPair base = base_pair();
  CHECK(is_pa_extension(base, base));

  // enlarge g by a legal orbit pair: y -> (fresh above z)
  Poset bigger = base.poset.with_element(3, {0, 1, 2}, {});
  PartialAutomorphism g = validate_pa(bigger, {{0, 2}, {1, 3}});
  PaPair enlarged{bigger, base.f.on_extended_poset(bigger), g};
  CHECK(is_pa_extension(base, enlarged));
  CHECK_FALSE(is_pa_extension(enlarged, base));

  PaPair other = make_pa_pair(make_antichain(3), {}, {});
  CHECK_FALSE(is_pa_extension(base, other));
}

TEST_CASE("pa embeddings compose") {
  PaPair base = base_pair();
  Poset bigger = base.poset.with_element(3, {0, 1, 2}, {});
  PaPair mid = make_pa_pair(bigger, base.f.graph(), base.g.graph());
  Poset biggest = bigger.with_element(4, {0, 1, 2, 3}, {});
  PaPair top = make_pa_pair(biggest, base.f.graph(), base.g.graph());

  PaEmbedding first = inclusion_pa_embedding(base, mid);
  PaEmbedding second = inclusion_pa_embedding(mid, top);
  PaEmbedding both = compose(first, second);
  CHECK(is_pa_embedding(base, top, both.map.map));
}

TEST_CASE("free_check_instance") {
  PaPair base = base_pair();
  // empty chain: nothing added
  CHECK(free_check_instance(base.f, 0, 1, base.poset, {}));

  // corrupted map: u < a but f(u) unrelated to the interval
  Poset p = Poset::make({0, 1, 2, 3}, {{2, 0}, {0, 1}});  // 2 < 0 < 1, 3 isolated
  PartialAutomorphism h = validate_pa(p, {{2, 3}});
  Poset c = p.with_point_between(0, 1, 4);
  CHECK_FALSE(free_check_instance(h, 0, 1, c, {4}));

  CHECK_THROWS_AS(free_check_instance(h, 0, 1, c, {3}), Error);  // 0 < 3 fails
}

TEST_CASE("free_verify_bounded finds the counterexample for a non-free interval") {
  // u < a < b with w isolated and f mapping u to w: a midpoint incomparable
  // to w breaks the extension
  Poset p = Poset::make({0, 1, 2, 3}, {{2, 0}, {0, 1}});
  PartialAutomorphism h = validate_pa(p, {{2, 3}});
  FreeVerdict verdict = free_verify_bounded(h, 0, 1, FreeBounds{2, 2});
  CHECK_FALSE(verdict.pass);
  REQUIRE(verdict.counterexample.has_value());
  CHECK_FALSE(free_check_instance(h, 0, 1, verdict.counterexample->extension,
                                  verdict.counterexample->chain));
}

TEST_CASE("free_verify_bounded vacuous at zero points") {
  Poset p = make_chain(2);  // empty open interval, no insertions allowed
  PartialAutomorphism h = validate_pa(p, {});
  FreeVerdict verdict = free_verify_bounded(h, 0, 1, FreeBounds{0, 1});
  CHECK(verdict.pass);
}

TEST_CASE("pair dot export shows both maps") {
  std::string dot = to_dot(base_pair());
  CHECK(dot.find("label=\"f\"") != std::string::npos);
  CHECK(dot.find("label=\"g\"") != std::string::npos);
}
