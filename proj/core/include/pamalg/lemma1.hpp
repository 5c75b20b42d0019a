#pragma once

#include <optional>
#include <vector>

#include "pamalg/partial_auto.hpp"

namespace pamalg {

enum class OrbitTarget : std::uint8_t { Above, Incomparable };

struct OrbitSearchResult {
  PartialAutomorphism extension;  // adds only fresh orbit points
  int m = 0;                      // orbit length reached; relation holds between a_i and f^m(s)
  std::vector<ElementId> added_points;
};

struct OrbitSearchBounds {
  int m_max = 0;
  int new_points_max = 0;
};

// Searches for an extension D of `current` whose s-orbit reaches length m
// (n_current <= m <= m_max) with target relation between `element` and
// f_D^m(s). Exhaustive over extensions adding at most new_points_max fresh
// orbit points, each carrying any consistent one-point type compatible with
// order preservation. Minimal m, canonically least placement sequence.
// nullopt is a bounded refutation only.
std::optional<OrbitSearchResult> orbit_relation_search(const PartialAutomorphism& current,
                                                       ElementId s, ElementId element,
                                                       OrbitTarget target,
                                                       const OrbitSearchBounds& bounds);

struct StageRecord {
  ElementId element = -1;
  int case_used = 3;  // 1, 2 or 3
  int m = 0;          // orbit length after the stage
  std::vector<ElementId> added_points;
};

struct Lemma1Trace {
  PartialAutomorphism input;
  ElementId s = -1;
  std::vector<StageRecord> stages;
  int n = 0;        // final orbit length, f_B^n(s) = a
  ElementId a = -1;
  ElementId b = -1;
  PartialAutomorphism result;
};

struct Lemma1Options {
  // Per stage: m_max = n_i + input carrier size + m_slack.
  int m_slack = 2;
};

// The staged free-interval construction: extends (A, f) with s < f(s) to
// (B, f_B) with fresh points a, b such that f_B^n(s) = a < b and f_B is
// free in (a, b) (verified at bounded depth by tests). Stages process the
// carrier of A in ascending id order, Case 1 attempted before Case 2.
// Throws HypothesisViolation when s is not strictly below f(s);
// BoundExhausted when the bounded stage searches left the output failing
// its own midpoint checks.
Lemma1Trace lemma1_extend(const PartialAutomorphism& a, ElementId s,
                          const Lemma1Options& options = {});

struct ClaimReport {
  bool type_matches_a = false;       // qft(c, B\{a}, C) == qft(a, B\{a}, C)
  bool pushforward_matches = false;  // qft(c, rng f_B, C) == push of qft(c, dom f_B, C)
  QfType c_over_base;
  QfType a_over_base;
  QfType pushed;
  QfType c_over_range;
  bool ok() const { return type_matches_a && pushforward_matches; }
};

// Checks the two structural facts behind freeness for a point a < c < b in
// an extension C of B.poset. Throws PreconditionViolation.
ClaimReport claim_check(const PartialAutomorphism& b, ElementId a, ElementId bb,
                        const Poset& c_poset, ElementId c);

}  // namespace pamalg
