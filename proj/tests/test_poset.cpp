#include <doctest.h>

#include <algorithm>

#include "pamalg/poset.hpp"
#include "pamalg/rng.hpp"
#include "test_support.hpp"

using namespace pamalg;
using test::make_antichain;
using test::make_chain;

TEST_CASE("make_poset closes a chain transitively") {
  Poset p = Poset::make({0, 1, 2}, {{0, 1}, {1, 2}});
  CHECK(p.less(0, 1));
  CHECK(p.less(1, 2));
  CHECK(p.less(0, 2));
  CHECK(p.lt_pairs().size() == 3);
  CHECK(p.cover_pairs().size() == 2);
}

TEST_CASE("make_poset singleton and cycle") {
  Poset single = Poset::make({7}, {});
  CHECK(single.size() == 1);
  CHECK(single.lt_pairs().empty());

  CHECK_THROWS_AS(Poset::make({0, 1}, {{0, 1}, {1, 0}}), Error);
  try {
    Poset::make({0, 1}, {{0, 1}, {1, 0}});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CycleDetected);
  }
  CHECK_THROWS_AS(Poset::make({0}, {{0, 5}}), Error);
}

TEST_CASE("transitive closure is idempotent") {
  Rng rng(2024);
  for (int round = 0; round < 50; ++round) {
    Poset p = test::random_poset(1 + static_cast<int>(rng.below(6)), rng);
    Poset again = Poset::make(p.elements(), p.lt_pairs());
    CHECK(p.same_order_as(again));
    // rebuilding from the reduction also recovers the order
    Poset from_covers = Poset::make(p.elements(), p.cover_pairs());
    CHECK(p.same_order_as(from_covers));
  }
}

TEST_CASE("qf_type on chains and antichains") {
  Poset chain = make_chain(3);
  QfType t = qf_type(1, {0, 2}, chain);
  CHECK(t.gt == std::vector<ElementId>{0});
  CHECK(t.lt == std::vector<ElementId>{2});
  CHECK(t.eq.empty());

  QfType self = qf_type(0, {0}, chain);
  CHECK(self.eq == std::vector<ElementId>{0});
  CHECK(self.gt.empty());
  CHECK(self.lt.empty());

  Poset anti = make_antichain(2);
  QfType incomp = qf_type(0, {1}, anti);
  CHECK(incomp.gt.empty());
  CHECK(incomp.lt.empty());
  CHECK(incomp.eq.empty());
}

TEST_CASE("qf_type partitions the base for an outside point") {
  Rng rng(77);
  for (int round = 0; round < 40; ++round) {
    Poset p = test::random_poset(2 + static_cast<int>(rng.below(5)), rng);
    ElementId c = p.elements()[rng.below(p.elements().size())];
    std::vector<ElementId> base;
    for (ElementId w : p.elements()) {
      if (w != c) base.push_back(w);
    }
    QfType t = qf_type(c, base, p);
    CHECK(t.eq.empty());
    for (ElementId w : base) {
      int memberships = 0;
      if (std::binary_search(t.gt.begin(), t.gt.end(), w)) ++memberships;
      if (std::binary_search(t.lt.begin(), t.lt.end(), w)) ++memberships;
      CHECK(memberships == (p.incomparable(c, w) ? 0 : 1));
    }
  }
}

TEST_CASE("push_forward along an embedding") {
  Poset single = Poset::make({0}, {});
  Poset pair = Poset::make({0, 1}, {{0, 1}});
  Embedding alpha = make_embedding(single, pair, {{0, 1}});

  QfType p;
  p.base = {0};
  p.gt = {0};
  QfType q = push_forward(p, alpha);
  CHECK(q.base == std::vector<ElementId>{1});
  CHECK(q.gt == std::vector<ElementId>{1});

  QfType eq_type;
  eq_type.base = {0};
  eq_type.eq = {0};
  CHECK(push_forward(eq_type, alpha).eq == std::vector<ElementId>{1});
}

TEST_CASE("push_forward inverse recovers the type") {
  Rng rng(91);
  for (int round = 0; round < 30; ++round) {
    Poset p = test::random_poset(4, rng);
    Embedding identity = identity_embedding(p);
    ElementId c = p.elements()[rng.below(4)];
    QfType t = qf_type(c, {p.elements()[0], p.elements()[1]}, p);
    CHECK(push_forward(push_forward(t, identity), identity) == t);
  }
}

TEST_CASE("push_forward needs the base covered") {
  Poset p = make_chain(2);
  Poset q = make_chain(1);
  Embedding alpha = make_embedding(q, p, {{0, 0}});
  QfType t;
  t.base = {0, 1};
  CHECK_THROWS_AS(push_forward(t, alpha), Error);
}

TEST_CASE("find_embeddings examples") {
  CHECK(find_embeddings(make_chain(2), make_chain(3)).size() == 3);
  CHECK(find_embeddings(make_antichain(2), make_chain(3)).empty());
  CHECK(find_embeddings(make_chain(1), make_chain(1)).size() == 1);
  CHECK(find_embeddings(make_chain(2), make_chain(3), 2).size() == 2);
}

TEST_CASE("find_embeddings agrees with the all-injections filter") {
  Rng rng(5150);
  for (int round = 0; round < 25; ++round) {
    Poset a = test::random_poset(1 + static_cast<int>(rng.below(4)), rng);
    Poset b = test::random_poset(1 + static_cast<int>(rng.below(6)), rng);
    auto found = find_embeddings(a, b);
    for (const Embedding& e : found) {
      CHECK(is_embedding_map(a, b, e.map));
    }
    CHECK(static_cast<int>(found.size()) == test::naive_count_embeddings(a, b));
  }
}

TEST_CASE("is_extension") {
  Poset small = Poset::make({0, 1}, {{0, 1}});
  Poset big = Poset::make({0, 1, 2}, {{0, 1}, {1, 2}});
  CHECK(is_extension(small, big));

  Poset anti = make_antichain(2);
  CHECK_FALSE(is_extension(anti, small));

  Poset empty;
  CHECK(is_extension(empty, big));
}

TEST_CASE("interval and twin insertion") {
  Poset chain = make_chain(3);
  Poset with_twin = chain.with_twin_above(1, 5);
  CHECK(with_twin.less(1, 5));
  CHECK(with_twin.less(0, 5));
  CHECK(with_twin.less(5, 2));
  CHECK(with_twin.open_interval(1, 2) == std::vector<ElementId>{5});

  Poset between = chain.with_point_between(0, 2, 9);
  CHECK(between.less(0, 9));
  CHECK(between.less(9, 2));
  CHECK(between.incomparable(9, 1));
}

TEST_CASE("enumerate_placements respects constraints") {
  Poset chain = make_chain(2);
  // all placements over a 2-chain: the 6 realizable one-point extensions
  CHECK(enumerate_placements(chain, {}).size() == 6);
  // forcing strictly-between leaves exactly one
  auto between = enumerate_placements(chain, {{0, PointRel::Above}, {1, PointRel::Below}});
  REQUIRE(between.size() == 1);
  CHECK(between[0].under == std::vector<ElementId>{0});
  CHECK(between[0].over == std::vector<ElementId>{1});
}

TEST_CASE("dot export mentions every cover edge") {
  Poset p = Poset::make({0, 1, 2}, {{0, 1}, {1, 2}}, {{0, "x"}, {1, "y"}, {2, "z"}});
  std::string dot = p.to_dot();
  CHECK(dot.find("n0 -> n1") != std::string::npos);
  CHECK(dot.find("n1 -> n2") != std::string::npos);
  CHECK(dot.find("n0 -> n2") == std::string::npos);
  CHECK(dot.find("\"x\"") != std::string::npos);
}

TEST_CASE("carrier cap") {
  std::vector<ElementId> els;
  for (int i = 0; i < Poset::kMaxElements + 1; ++i) els.push_back(i);
  CHECK_THROWS_AS(Poset::make(els, {}), Error);
}
