#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pamalg/poset.hpp"

namespace pamalg {

// A partial injective map on a poset inducing an order-isomorphism between
// its domain and its range. Identified with its graph; fixed points (c,c)
// are allowed and dom/rng may overlap.
class PartialAutomorphism {
 public:
  PartialAutomorphism() = default;

  const Poset& poset() const { return poset_; }
  const std::vector<IdPair>& graph() const { return pairs_; }
  bool defined_on(ElementId a) const { return apply(a).has_value(); }
  std::optional<ElementId> apply(ElementId a) const;
  std::optional<ElementId> preimage(ElementId b) const;
  std::vector<ElementId> domain() const;
  std::vector<ElementId> range() const;
  bool empty() const { return pairs_.empty(); }
  std::size_t size() const { return pairs_.size(); }

  // Same poset carrier and order, larger graph. Validity of the result is
  // the caller's concern (used by the type-based extension route).
  PartialAutomorphism with_pair_unchecked(ElementId a, ElementId b) const;
  // Carry the map onto an extension of the carrier poset.
  PartialAutomorphism on_extended_poset(const Poset& bigger) const;

  bool operator==(const PartialAutomorphism&) const = default;

  friend PartialAutomorphism validate_pa(const Poset&, std::vector<IdPair>);

 private:
  Poset poset_;
  std::vector<IdPair> pairs_;  // sorted by first coordinate
};

// Why a candidate map fails to be a partial automorphism.
struct PaViolation {
  ErrorKind kind = ErrorKind::OrderViolation;  // UnknownElement | NotInjective | OrderViolation
  ElementId a = -1;  // offending pair (a, b): for OrderViolation the domain pair
  ElementId b = -1;
  std::string describe(const Poset& p) const;
};

// nullopt when the map is a valid partial automorphism over p.
std::optional<PaViolation> check_pa(const Poset& p, const std::vector<IdPair>& pairs);
// Throws Error(UnknownElement | NotInjective | OrderViolation) on failure.
PartialAutomorphism validate_pa(const Poset& p, std::vector<IdPair> pairs);

// Fact-1 style extension: succeeds iff the qf-type of c over dom(h) pushed
// forward along h equals the qf-type of d over rng(h). Throws DomainConflict
// when c ∈ dom(h) or d ∈ rng(h), TypeMismatch (carrying both rendered
// types) when the types disagree.
PartialAutomorphism extend_by_pair(const PartialAutomorphism& h, ElementId c, ElementId d);

class TypeMismatchError : public Error {
 public:
  TypeMismatchError(QfType pushed, QfType target, const std::string& message)
      : Error(ErrorKind::TypeMismatch, message), pushed_type(std::move(pushed)),
        target_type(std::move(target)) {}
  QfType pushed_type;
  QfType target_type;
};

QfType push_forward(const QfType& p, const PartialAutomorphism& h);

// Relation constraints forced on a prospective image of `endpoint` under h:
// the relation to every range element is the pushforward of endpoint's type
// over the domain.
std::vector<std::pair<ElementId, PointRel>> pushforward_constraints(const PartialAutomorphism& h,
                                                                    ElementId endpoint);

// Defines h at c by a fresh point carrying the pushforward type, canonical
// placement elsewhere. The fresh id is reported through new_id.
PartialAutomorphism extend_by_fresh_target(const PartialAutomorphism& h, ElementId c,
                                           ElementId* new_id = nullptr,
                                           const std::string& label = {});

struct Orbit {
  std::vector<ElementId> points;  // [s, h(s), h^2(s), ...]
  bool cycle = false;             // the next image would revisit a point
};
Orbit orbit(const PartialAutomorphism& h, ElementId s);

// One poset carrying two partial automorphisms.
struct PaPair {
  Poset poset;
  PartialAutomorphism f;
  PartialAutomorphism g;
};
// Throws when f/g are not valid over the given poset.
PaPair make_pa_pair(const Poset& p, std::vector<IdPair> f_pairs, std::vector<IdPair> g_pairs);

// Poset embedding commuting with one or two partial maps.
struct PaEmbedding {
  Embedding map;
  bool f_checked = false;
  bool g_checked = false;
};

bool commutes(const Embedding& alpha, const PartialAutomorphism& small,
              const PartialAutomorphism& big);
// Throws NotIsomorphism when some commutation square fails.
PaEmbedding make_pa_embedding(const PaPair& from, const PaPair& to, std::vector<IdPair> map);
bool is_pa_embedding(const PaPair& from, const PaPair& to, const std::vector<IdPair>& map);
PaEmbedding compose(const PaEmbedding& first, const PaEmbedding& then);
PaEmbedding inclusion_pa_embedding(const PaPair& small, const PaPair& big);

// small ⪯ big: poset extension with graph inclusions on both components.
bool is_pa_extension(const PaPair& small, const PaPair& big);
bool is_pa_extension(const PartialAutomorphism& small, const PartialAutomorphism& big);

// Instance-level freeness check: is f_B ∪ {(a,c1),(c1,c2),...} a partial
// automorphism of C? Preconditions (C extends B.poset, a < c1 < ... < b in C)
// are enforced with PreconditionViolation naming the failing inequality.
bool free_check_instance(const PartialAutomorphism& b, ElementId a, ElementId bb,
                         const Poset& c, const std::vector<ElementId>& chain);

struct FreeCounterexample {
  Poset extension;
  std::vector<ElementId> chain;
};

struct FreeVerdict {
  bool pass = false;
  std::optional<FreeCounterexample> counterexample;
};

struct FreeBounds {
  int k_points = 2;
  int l_chain = 2;
};

// Bounded exhaustive freeness verification: all extensions of B.poset by at
// most k_points new elements placed in the open interval (a,b) (any
// counterexample restricts to one of this shape), all chains of length 1..l
// inside (a,b) drawn from old and new points. Deterministic; the returned
// counterexample is the first in canonical enumeration order.
FreeVerdict free_verify_bounded(const PartialAutomorphism& b, ElementId a, ElementId bb,
                                const FreeBounds& bounds = {});

// DOT rendering of a pair: Hasse edges plus f (solid) and g (dashed) arcs.
std::string to_dot(const PaPair& pair, const std::string& graph_name = "pair");

}  // namespace pamalg
