#include <doctest.h>

#include <algorithm>
#include <set>

#include "pamalg/generators.hpp"
#include "pamalg/witness.hpp"
#include "test_support.hpp"

using namespace pamalg;
using test::make_chain;

namespace {

// Brute-force reference: project every full one-point placement to S.
std::set<std::pair<std::vector<ElementId>, std::vector<ElementId>>> brute_types(
    const Poset& a, const std::vector<ElementId>& s) {
  std::set<std::pair<std::vector<ElementId>, std::vector<ElementId>>> out;
  for (const Placement& pl : enumerate_placements(a, {})) {
    std::vector<ElementId> gt, lt;
    for (ElementId w : s) {
      if (std::find(pl.under.begin(), pl.under.end(), w) != pl.under.end()) gt.push_back(w);
      if (std::find(pl.over.begin(), pl.over.end(), w) != pl.over.end()) lt.push_back(w);
    }
    std::sort(gt.begin(), gt.end());
    std::sort(lt.begin(), lt.end());
    out.insert({gt, lt});
  }
  return out;
}

}  // namespace

TEST_CASE("one_point_types counts") {
  Poset single = Poset::make({0}, {});
  CHECK(one_point_types(single, {0}).size() == 3);

  Poset chain = make_chain(2);
  CHECK(one_point_types(chain, {0, 1}).size() == 6);

  CHECK(one_point_types(chain, {}).size() == 1);
}

TEST_CASE("one_point_types matches brute-force enumeration up to 4 elements") {
  for (int n = 1; n <= 4; ++n) {
    for (const Poset& p : test::posets_up_to_iso(n)) {
      // every subset of the carrier
      const auto& els = p.elements();
      for (std::size_t mask = 0; mask < (static_cast<std::size_t>(1) << els.size()); ++mask) {
        std::vector<ElementId> subset;
        for (std::size_t i = 0; i < els.size(); ++i) {
          if (mask & (static_cast<std::size_t>(1) << i)) subset.push_back(els[i]);
        }
        auto reference = brute_types(p, subset);
        auto types = one_point_types(p, subset);
        CHECK(types.size() == reference.size());
        for (const QfType& t : types) {
          CHECK(reference.count({t.gt, t.lt}) == 1);
          CHECK(t.eq.empty());
        }
      }
    }
  }
}

TEST_CASE("saturate realizes every small type") {
  Poset single = Poset::make({0}, {});
  Poset saturated = saturate(single, 1);
  CHECK(saturated.size() == 4);  // the point plus witnesses above, below, beside

  for (int n = 1; n <= 3; ++n) {
    for (const Poset& p : test::posets_up_to_iso(n)) {
      for (int k = 1; k <= 2; ++k) {
        Poset grown = saturate(p, k);
        CHECK(is_extension(p, grown));
        const auto& els = p.elements();
        for (std::size_t mask = 0; mask < (static_cast<std::size_t>(1) << els.size()); ++mask) {
          std::vector<ElementId> subset;
          for (std::size_t i = 0; i < els.size(); ++i) {
            if (mask & (static_cast<std::size_t>(1) << i)) subset.push_back(els[i]);
          }
          if (static_cast<int>(subset.size()) > k) continue;
          for (const QfType& t : one_point_types(p, subset)) {
            bool realized = false;
            for (ElementId w : grown.elements()) {
              QfType have = qf_type(w, subset, grown);
              if (have.eq.empty() && have.gt == t.gt && have.lt == t.lt) {
                realized = true;
                break;
              }
            }
            CHECK(realized);
          }
        }
      }
    }
  }
}

TEST_CASE("saturate level is clamped to the carrier") {
  Poset chain = make_chain(2);
  Poset a = saturate(chain, 2);
  Poset b = saturate(chain, 10);
  CHECK(a.size() == b.size());
}

TEST_CASE("saturate respects the size cap") {
  SaturateOptions options;
  options.max_elements = 3;
  Poset single = Poset::make({0}, {});
  CHECK_THROWS_AS(saturate(single, 1, options), Error);
}

TEST_CASE("random_pa_extension basics") {
  PaPair base = base_pair();
  PaPair unchanged = random_pa_extension(base, 0, 42);
  CHECK(unchanged.poset.same_order_as(base.poset));
  CHECK(unchanged.f.graph() == base.f.graph());

  for (std::uint64_t seed : {1ull, 7ull, 99ull}) {
    PaPair grown = random_pa_extension(base, 8, seed);
    CHECK(is_pa_extension(base, grown));
    PaPair replay = random_pa_extension(base, 8, seed);
    CHECK(grown.poset.same_order_as(replay.poset));
    CHECK(grown.f.graph() == replay.f.graph());
    CHECK(grown.g.graph() == replay.g.graph());
  }
}

TEST_CASE("random_pa_extension honors the point budget") {
  RandomExtensionOptions options;
  options.max_new_points = 1;
  PaPair grown = random_pa_extension(base_pair(), 20, 5, options);
  CHECK(grown.poset.size() <= 4);
}
