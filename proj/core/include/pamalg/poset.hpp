#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pamalg/errors.hpp"

namespace pamalg {

using ElementId = std::int32_t;
using IdPair = std::pair<ElementId, ElementId>;

// How two distinct-or-equal elements of a poset relate.
enum class Rel : std::uint8_t { Less, Greater, Incomparable, Equal };

Rel inverse(Rel r);
const char* to_string(Rel r);

class Poset;
std::string label_pair(const Poset& p, ElementId a, ElementId b);

// Finite strict partial order over integer element ids. Immutable after
// construction; the relation is stored transitively closed as a dense
// boolean matrix over element indices. All iteration is in ascending id
// order so computations on posets are reproducible.
class Poset {
 public:
  static constexpr int kMaxElements = 128;

  Poset() = default;

  // `lt` may be any generating relation; it is closed transitively.
  // Throws CycleDetected if the closure meets the diagonal, UnknownElement
  // if a pair or label mentions an id not in `elements`, SizeCap beyond
  // `max_elements`.
  static Poset make(std::vector<ElementId> elements, const std::vector<IdPair>& lt,
                    std::map<ElementId, std::string> labels = {},
                    int max_elements = kMaxElements);

  int size() const { return static_cast<int>(els_.size()); }
  bool empty() const { return els_.empty(); }
  const std::vector<ElementId>& elements() const { return els_; }
  bool contains(ElementId a) const;

  bool less(ElementId a, ElementId b) const;
  bool leq(ElementId a, ElementId b) const { return a == b || less(a, b); }
  bool incomparable(ElementId a, ElementId b) const;
  Rel relation(ElementId a, ElementId b) const;

  // All pairs (a,b) with a < b, ascending lexicographically.
  std::vector<IdPair> lt_pairs() const;
  // Transitive reduction (Hasse diagram edges).
  std::vector<IdPair> cover_pairs() const;

  std::vector<ElementId> down_set(ElementId a) const;  // {w : w < a}
  std::vector<ElementId> up_set(ElementId a) const;    // {w : a < w}
  std::vector<ElementId> open_interval(ElementId a, ElementId b) const;

  const std::map<ElementId, std::string>& labels() const { return labels_; }
  std::string label(ElementId a) const;
  std::optional<ElementId> find_label(const std::string& name) const;

  ElementId fresh_id() const;

  // New poset with one extra point: every w in `under` satisfies w < id,
  // every w in `over` satisfies id < w; the relation is re-closed.
  Poset with_element(ElementId id, const std::vector<ElementId>& under,
                     const std::vector<ElementId>& over, const std::string& label = {}) const;

  // New point that relates to everything except `anchor` exactly as
  // `anchor` does, with anchor < id. The closure is a no-op by
  // construction; asserted anyway.
  Poset with_twin_above(ElementId anchor, ElementId id, const std::string& label = {}) const;

  // Minimal placement of a new point strictly between lo and hi.
  Poset with_point_between(ElementId lo, ElementId hi, ElementId id,
                           const std::string& label = {}) const;

  Poset restricted_to(std::vector<ElementId> subset) const;

  // Structural equality of carriers and order; labels ignored.
  bool same_order_as(const Poset& other) const;

  // Hasse diagram in DOT format.
  std::string to_dot(const std::string& graph_name = "poset") const;

 private:
  int index_of(ElementId a) const;  // -1 when absent

  std::vector<ElementId> els_;  // ascending
  std::vector<char> lt_;        // row-major size() x size(), transitively closed
  std::map<ElementId, std::string> labels_;
};

// Injective map preserving and reflecting the order.
struct Embedding {
  Poset source;
  Poset target;
  std::vector<IdPair> map;  // sorted by source id, total on source

  ElementId apply(ElementId a) const;
  std::optional<ElementId> preimage(ElementId b) const;
};

bool is_embedding_map(const Poset& source, const Poset& target, const std::vector<IdPair>& map);
// Throws NotIsomorphism when the map is not an embedding.
Embedding make_embedding(Poset source, Poset target, std::vector<IdPair> map);
Embedding identity_embedding(const Poset& p);
Embedding compose(const Embedding& first, const Embedding& then);

// Backtracking search for embeddings of A into B, source vertices ordered
// by decreasing comparability degree, candidates pruned against the
// partial assignment. Exhaustive when limit is not hit.
std::vector<Embedding> find_embeddings(const Poset& a, const Poset& b,
                                       std::size_t limit = SIZE_MAX);

// true iff small's carrier is contained in big's and the orders agree on it.
bool is_extension(const Poset& small, const Poset& big);

// Quantifier-free type of a point over a base set: which base elements lie
// strictly below (gt: formulas x > a), strictly above (lt: formulas x < a),
// or equal. All vectors sorted ascending.
struct QfType {
  std::vector<ElementId> base;
  std::vector<ElementId> gt;
  std::vector<ElementId> lt;
  std::vector<ElementId> eq;

  bool operator==(const QfType&) const = default;
  std::string to_string() const;
};

QfType qf_type(ElementId c, std::vector<ElementId> base, const Poset& p);
QfType push_forward(const QfType& p, const Embedding& alpha);

// One-point placements. PointRel is the relation of the prospective new
// point p to an existing element w.
enum class PointRel : std::uint8_t { Below, Above, Incomp };  // p < w, p > w, p ⊥ w

struct Placement {
  std::vector<ElementId> under;  // w : w < p
  std::vector<ElementId> over;   // w : p < w
};

// All transitively consistent assignments of a relation between a new point
// and every element, honoring `forced`. Enumeration order: elements
// ascending, relation tried Below, Above, Incomp — callers relying on a
// canonical choice take the first result.
std::vector<Placement> enumerate_placements(const Poset& p,
                                            const std::vector<std::pair<ElementId, PointRel>>& forced,
                                            std::size_t limit = SIZE_MAX);

// The least placement honoring `forced`: transitive closure of the forced
// relations, incomparable elsewhere. nullopt when the constraints clash.
std::optional<Placement> minimal_placement(const Poset& p,
                                           const std::vector<std::pair<ElementId, PointRel>>& forced);

}  // namespace pamalg
