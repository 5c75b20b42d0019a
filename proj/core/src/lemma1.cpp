#include "pamalg/lemma1.hpp"

#include <algorithm>
#include <functional>

namespace pamalg {

namespace {

bool relation_holds(const Poset& p, ElementId element, ElementId orbit_point, OrbitTarget target) {
  if (target == OrbitTarget::Above) return p.less(element, orbit_point);
  return p.incomparable(element, orbit_point);
}

}  // namespace

namespace {

// f-pullback chain of an element: r_0 = e, r_{t+1} = f^{-1}(r_t). Eventually
// periodic chains index through the cycle.
struct PullbackChain {
  std::vector<ElementId> points;
  int cycle_start = -1;  // -1 when the chain terminates outside rng(f)

  bool terminates() const { return cycle_start < 0; }
  int exit_depth() const { return static_cast<int>(points.size()) - 1; }
  ElementId at(int t) const {
    int size = static_cast<int>(points.size());
    if (t < size) return points[static_cast<std::size_t>(t)];
    int period = size - cycle_start;
    return points[static_cast<std::size_t>(cycle_start + (t - cycle_start) % period)];
  }
};

PullbackChain pullback_chain(const PartialAutomorphism& h, ElementId e) {
  PullbackChain chain;
  chain.points.push_back(e);
  while (true) {
    auto prev = h.preimage(chain.points.back());
    if (!prev) return chain;
    auto seen = std::find(chain.points.begin(), chain.points.end(), *prev);
    if (seen != chain.points.end()) {
      chain.cycle_start = static_cast<int>(seen - chain.points.begin());
      return chain;
    }
    chain.points.push_back(*prev);
  }
}

PointRel target_constraint(OrbitTarget target) {
  return target == OrbitTarget::Above ? PointRel::Above : PointRel::Incomp;
}

PartialAutomorphism grow_minimal(const PartialAutomorphism& h, ElementId endpoint,
                                 ElementId* new_point) {
  auto placement = minimal_placement(h.poset(), pushforward_constraints(h, endpoint));
  if (!placement) {
    throw Error(ErrorKind::InternalInvariantBroken, "pushforward type not realizable");
  }
  ElementId id = h.poset().fresh_id();
  Poset grown = h.poset().with_element(id, placement->under, placement->over);
  *new_point = id;
  return h.on_extended_poset(grown).with_pair_unchecked(endpoint, id);
}

}  // namespace

// In any extension, rel(f^m(s), a) peels along the pullback chain of a:
// rel(f^m(s), r_0) = rel(f^{m-t}(s), r_t). Peeling stops at an existing
// orbit point (relation forced, evaluate it) or at the chain's exit from
// rng(f) against a fresh orbit point (one free relation, realizable iff it
// is consistent with the pushforward placement). Fresh points beyond that
// take least placements, which never constrain later steps more than any
// alternative.
std::optional<OrbitSearchResult> orbit_relation_search(const PartialAutomorphism& current,
                                                       ElementId s, ElementId element,
                                                       OrbitTarget target,
                                                       const OrbitSearchBounds& bounds) {
  Orbit base_orbit = orbit(current, s);
  if (base_orbit.cycle) return std::nullopt;  // increasing orbits never cycle
  const int n_current = static_cast<int>(base_orbit.points.size()) - 1;

  if (relation_holds(current.poset(), element, base_orbit.points.back(), target)) {
    return OrbitSearchResult{current, n_current, {}};
  }

  PullbackChain chain = pullback_chain(current, element);
  const int exit_depth = chain.terminates() ? chain.exit_depth() : -1;

  for (int m = n_current + 1; m <= bounds.m_max; ++m) {
    if (m - n_current > bounds.new_points_max) break;
    int peel = chain.terminates() ? std::min(exit_depth, m) : m;
    int j = m - peel;

    if (j <= n_current) {
      // forced: the relation already lives between existing points
      Rel forced = current.poset().relation(base_orbit.points[static_cast<std::size_t>(j)],
                                            chain.at(peel));
      bool matches = target == OrbitTarget::Above ? forced == Rel::Greater
                                                  : forced == Rel::Incomparable;
      if (!matches) continue;
      OrbitSearchResult result{current, m, {}};
      ElementId endpoint = base_orbit.points.back();
      for (int step = n_current; step < m; ++step) {
        ElementId fresh = -1;
        result.extension = grow_minimal(result.extension, endpoint, &fresh);
        result.added_points.push_back(fresh);
        endpoint = fresh;
      }
      if (!relation_holds(result.extension.poset(), element, endpoint, target)) {
        throw Error(ErrorKind::InternalInvariantBroken, "forced orbit relation did not hold");
      }
      return result;
    }

    // free: the relation is decided at the fresh point p_j against the
    // chain's exit element
    ElementId exit_element = chain.at(exit_depth);
    OrbitSearchResult result{current, m, {}};
    ElementId endpoint = base_orbit.points.back();
    bool feasible = true;
    for (int step = n_current; step < m && feasible; ++step) {
      ElementId fresh = -1;
      if (step + 1 == j) {
        auto forced = pushforward_constraints(result.extension, endpoint);
        forced.emplace_back(exit_element, target_constraint(target));
        auto placement = minimal_placement(result.extension.poset(), forced);
        if (!placement) {
          feasible = false;
          break;
        }
        fresh = result.extension.poset().fresh_id();
        Poset grown =
            result.extension.poset().with_element(fresh, placement->under, placement->over);
        result.extension =
            result.extension.on_extended_poset(grown).with_pair_unchecked(endpoint, fresh);
      } else {
        result.extension = grow_minimal(result.extension, endpoint, &fresh);
      }
      result.added_points.push_back(fresh);
      endpoint = fresh;
    }
    if (!feasible) continue;
    if (check_pa(result.extension.poset(), result.extension.graph())) {
      throw Error(ErrorKind::InternalInvariantBroken, "orbit chain placement rejected");
    }
    if (!relation_holds(result.extension.poset(), element, endpoint, target)) {
      throw Error(ErrorKind::InternalInvariantBroken, "chosen orbit relation did not hold");
    }
    return result;
  }
  return std::nullopt;
}

Lemma1Trace lemma1_extend(const PartialAutomorphism& a, ElementId s, const Lemma1Options& options) {
  const Poset& base = a.poset();
  if (!base.contains(s)) {
    throw Error(ErrorKind::UnknownElement, "start point " + std::to_string(s));
  }
  auto fs = a.apply(s);
  if (!fs || !base.less(s, *fs)) {
    throw Error(ErrorKind::HypothesisViolation,
                base.label(s) + " is not strictly below its image");
  }

  Lemma1Trace trace;
  trace.input = a;
  trace.s = s;

  PartialAutomorphism current = a;
  int n_current = static_cast<int>(orbit(current, s).points.size()) - 1;
  const int carrier_size = base.size();

  for (ElementId stage_element : base.elements()) {
    OrbitSearchBounds bounds;
    bounds.m_max = n_current + carrier_size + options.m_slack;
    bounds.new_points_max = bounds.m_max - n_current;

    StageRecord record;
    record.element = stage_element;
    auto hit = orbit_relation_search(current, s, stage_element, OrbitTarget::Above, bounds);
    if (hit) {
      record.case_used = 1;
    } else {
      hit = orbit_relation_search(current, s, stage_element, OrbitTarget::Incomparable, bounds);
      if (hit) record.case_used = 2;
    }
    if (hit) {
      current = hit->extension;
      n_current = hit->m;
      record.m = hit->m;
      record.added_points = hit->added_points;
    } else {
      record.case_used = 3;
      record.m = n_current;
    }
    trace.stages.push_back(std::move(record));
  }

  // Minimal extension putting the last orbit point into the domain: one new
  // point a with f_E = f_k ∪ {(f_k^{n_k}(s), a)}.
  Orbit final_orbit = orbit(current, s);
  ElementId last = final_orbit.points.back();
  ElementId point_a = -1;
  PartialAutomorphism extended = extend_by_fresh_target(current, last, &point_a);
  trace.n = n_current + 1;
  trace.a = point_a;

  // b: above a, type over everything else copied from a.
  ElementId point_b = extended.poset().fresh_id();
  Poset with_b = extended.poset().with_twin_above(point_a, point_b);
  trace.b = point_b;
  trace.result = validate_pa(with_b, extended.graph());

  // Sanity gate on the bounded case resolutions: a twin midpoint inserted in
  // (a,b) must satisfy both Claim checks; a failure means some stage's
  // search bound was too small to classify its element. The twin copies a's
  // relations, so it lands strictly inside (a,b).
  ElementId probe = with_b.fresh_id();
  Poset probed = with_b.with_twin_above(point_a, probe);
  ClaimReport report = claim_check(trace.result, point_a, point_b, probed, probe);
  if (!report.ok()) {
    throw Error(ErrorKind::BoundExhausted,
                "stage search bounds insufficient: midpoint checks fail (" +
                    std::string(report.type_matches_a ? "pushforward" : "base type") + ")");
  }

  Orbit result_orbit = orbit(trace.result, s);
  if (static_cast<int>(result_orbit.points.size()) - 1 != trace.n ||
      result_orbit.points.back() != point_a || !with_b.less(point_a, point_b)) {
    throw Error(ErrorKind::InternalInvariantBroken, "orbit postcondition failed");
  }
  return trace;
}

ClaimReport claim_check(const PartialAutomorphism& b, ElementId a, ElementId bb,
                        const Poset& c_poset, ElementId c) {
  if (!c_poset.contains(c)) {
    throw Error(ErrorKind::PreconditionViolation, "probe point is absent");
  }
  if (!is_extension(b.poset(), c_poset)) {
    throw Error(ErrorKind::PreconditionViolation, "not an extension of the base carrier");
  }
  if (!c_poset.less(a, c) || !c_poset.less(c, bb)) {
    throw Error(ErrorKind::PreconditionViolation,
                c_poset.label(c) + " is not strictly between " + c_poset.label(a) + " and " +
                    c_poset.label(bb));
  }

  ClaimReport report;
  std::vector<ElementId> base_minus_a;
  for (ElementId w : b.poset().elements()) {
    if (w != a) base_minus_a.push_back(w);
  }
  report.c_over_base = qf_type(c, base_minus_a, c_poset);
  report.a_over_base = qf_type(a, base_minus_a, c_poset);
  report.type_matches_a = report.c_over_base == report.a_over_base;

  QfType p = qf_type(c, b.domain(), c_poset);
  // push along b viewed inside the bigger carrier
  report.pushed = push_forward(p, b.on_extended_poset(c_poset));
  report.c_over_range = qf_type(c, b.range(), c_poset);
  report.pushforward_matches = report.pushed == report.c_over_range;
  return report;
}

}  // namespace pamalg
