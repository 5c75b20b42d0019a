#include <doctest.h>

#include "pamalg/amalgam.hpp"
#include "pamalg/generators.hpp"
#include "pamalg/witness.hpp"
#include "test_support.hpp"

using namespace pamalg;

TEST_CASE("base_pair is the labeled 3-chain with the canonical maps") {
  PaPair base = base_pair();
  CHECK(base.poset.size() == 3);
  CHECK(base.poset.less(0, 1));
  CHECK(base.poset.less(1, 2));
  CHECK(base.poset.find_label("x") == 0);
  CHECK(base.f.graph() == std::vector<IdPair>{{0, 1}, {2, 2}});
  CHECK(base.g.graph() == std::vector<IdPair>{{0, 2}});
  CHECK(orbit(base.f, 0).points == std::vector<ElementId>{0, 1});
  CHECK(orbit(base.g, 0).points == std::vector<ElementId>{0, 2});
}

TEST_CASE("build_A0 postconditions on the canonical input") {
  A0Result a0 = build_A0(base_pair());
  const Poset& p = a0.a0.poset;

  CHECK(p.less(a0.meta.a_f, a0.meta.c));
  CHECK(p.less(a0.meta.c, a0.meta.b_f));
  CHECK(p.less(a0.meta.b_f, 2));  // b_f below z

  Orbit x_orbit = orbit(a0.a0.f, 0);
  CHECK(static_cast<int>(x_orbit.points.size()) == a0.meta.n + 3);  // through a_f, c, d_0
  CHECK(x_orbit.points[static_cast<std::size_t>(a0.meta.n)] == a0.meta.a_f);
  CHECK(x_orbit.points[static_cast<std::size_t>(a0.meta.n) + 1] == a0.meta.c);
  CHECK(x_orbit.points[static_cast<std::size_t>(a0.meta.n) + 2] == a0.meta.d[0]);
  for (ElementId w : x_orbit.points) CHECK(p.less(w, 2));

  Orbit c_orbit = orbit(a0.a0.g, a0.meta.c);
  // g_0 continues from a_g along nothing; the c-orbit inside g_C has m steps
  CHECK(c_orbit.points[static_cast<std::size_t>(a0.meta.m)] == a0.meta.a_g);

  // d-chain typing: each twin matches its anchor over everything else
  REQUIRE(static_cast<int>(a0.meta.d.size()) == a0.meta.m + 1);
  for (int i = 0; i <= a0.meta.m; ++i) {
    ElementId ci = c_orbit.points[static_cast<std::size_t>(i)];
    ElementId di = a0.meta.d[static_cast<std::size_t>(i)];
    CHECK(p.less(ci, di));
    CHECK_FALSE(a0.g_trace.result.defined_on(di));
    std::vector<ElementId> rest;
    for (ElementId w : p.elements()) {
      if (w != ci && w != di) rest.push_back(w);
    }
    CHECK(qf_type(di, rest, p) == qf_type(ci, rest, p));
  }

  CHECK(is_pa_extension(base_pair(), a0.a0));
}

TEST_CASE("build_A0 accepts a padded input and rejects a non-extension") {
  PaPair padded = base_pair();
  Poset grown = padded.poset.with_element(3, {}, {}, "w");
  padded.poset = grown;
  padded.f = validate_pa(grown, {{0, 1}, {2, 2}, {3, 3}});
  padded.g = padded.g.on_extended_poset(grown);
  A0Result a0 = build_A0(padded);
  CHECK(is_pa_extension(padded, a0.a0));
  CHECK(a0.a0.poset.less(a0.meta.b_f, 2));

  PaPair stranger = make_pa_pair(test::make_chain(3), {}, {});
  CHECK_THROWS_AS(build_A0(stranger), Error);
}

TEST_CASE("build_A1 and build_A2 extend A0 and define f at a_g") {
  A0Result a0 = build_A0(base_pair());
  PaPair a1 = build_A1(a0);
  PaPair a2 = build_A2(a0);

  CHECK(is_pa_extension(a0.a0, a1));
  CHECK(is_pa_extension(a0.a0, a2));
  CHECK(is_pa_extension(base_pair(), a1));
  CHECK(is_pa_extension(base_pair(), a2));

  REQUIRE(a1.f.defined_on(a0.meta.a_g));
  REQUIRE(a2.f.defined_on(a0.meta.a_g));
  ElementId d_top = a0.meta.d.back();
  CHECK(a1.poset.relation(*a1.f.apply(a0.meta.a_g), d_top) !=
        a2.poset.relation(*a2.f.apply(a0.meta.a_g), d_top));

  // the first extension reuses the free partner, the second adds e
  CHECK(a1.poset.size() == a0.a0.poset.size());
  CHECK(a2.poset.size() == a0.a0.poset.size() + 1);
  REQUIRE(a0.meta.e.has_value());
  CHECK_FALSE(a0.a0.poset.contains(*a0.meta.e));
}

TEST_CASE("eval_word") {
  PaPair base = base_pair();
  Word f1{{{Generator::F, 1}}};
  CHECK(eval_word(base, f1, 0) == 1);

  Word gf{{{Generator::G, 1}, {Generator::F, 1}}};
  CHECK_FALSE(eval_word(base, gf, 0).has_value());  // g(y) undefined

  Word empty;
  CHECK(eval_word(base, empty, 2) == 2);
  CHECK_THROWS_AS(eval_word(base, f1, 99), Error);
}

TEST_CASE("certificate for the canonical witness") {
  A0Result a0 = build_A0(base_pair());
  PaPair a1 = build_A1(a0);
  PaPair a2 = build_A2(a0);
  ObstructionCertificate cert = make_certificate(a0, a1, a2);

  CHECK(cert.w2 == Word{{{Generator::G, a0.meta.m}, {Generator::F, a0.meta.n + 2}}});
  CHECK(cert.relation_in_1 != cert.relation_in_2);

  // both words are defined in both extensions
  CHECK(eval_word(a1, cert.w1, 0).has_value());
  CHECK(eval_word(a1, cert.w2, 0).has_value());
  CHECK(eval_word(a2, cert.w1, 0).has_value());
  CHECK(eval_word(a2, cert.w2, 0).has_value());

  // w2 reaches the top twin through the d-chain on both sides
  CHECK(eval_word(a1, cert.w2, 0) == a0.meta.d.back());
  CHECK(eval_word(a2, cert.w2, 0) == a0.meta.d.back());

  CHECK(check_certificate(cert).valid);
  CHECK_FALSE(describe_certificate(cert).empty());
}

TEST_CASE("tampered certificates are rejected") {
  A0Result a0 = build_A0(base_pair());
  PaPair a1 = build_A1(a0);
  PaPair a2 = build_A2(a0);
  ObstructionCertificate cert = make_certificate(a0, a1, a2);

  SUBCASE("stored relation corrupted") {
    ObstructionCertificate bad = cert;
    bad.relation_in_1 = Rel::Equal;
    CHECK_FALSE(check_certificate(bad).valid);
  }

  SUBCASE("agreeing relations carry no obstruction") {
    ObstructionCertificate bad = cert;
    bad.pair2 = bad.pair1;
    bad.embedding2 = bad.embedding1;
    bad.relation_in_2 = bad.relation_in_1;
    CHECK_FALSE(check_certificate(bad).valid);
  }

  SUBCASE("second extension replaced by the common structure") {
    ObstructionCertificate bad = cert;
    bad.pair2 = a0.a0;  // f undefined at a_g: w1 evaluation dies
    CHECK_FALSE(check_certificate(bad).valid);
  }
}

TEST_CASE("witness pipeline over random extensions of the base") {
  Rng corpus_seed(20250810);
  int successes = 0;
  for (int round = 0; round < 6; ++round) {
    std::uint64_t seed = corpus_seed.split(static_cast<std::uint64_t>(round)).next();
    RandomExtensionOptions options;
    options.max_new_points = 3;
    PaPair atilde = random_pa_extension(base_pair(), 5, seed, options);
    REQUIRE(atilde.poset.size() <= 6);
    A0Result a0 = build_A0(atilde);
    PaPair a1 = build_A1(a0);
    PaPair a2 = build_A2(a0);
    ObstructionCertificate cert = make_certificate(a0, a1, a2);
    CHECK(check_certificate(cert).valid);
    ++successes;
  }
  CHECK(successes == 6);
}
