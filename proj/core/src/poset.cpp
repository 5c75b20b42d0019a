#include "pamalg/poset.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace pamalg {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::CycleDetected: return "CycleDetected";
    case ErrorKind::UnknownElement: return "UnknownElement";
    case ErrorKind::SizeCap: return "SizeCap";
    case ErrorKind::NotInjective: return "NotInjective";
    case ErrorKind::OrderViolation: return "OrderViolation";
    case ErrorKind::NotIsomorphism: return "NotIsomorphism";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::DomainConflict: return "DomainConflict";
    case ErrorKind::PreconditionViolation: return "PreconditionViolation";
    case ErrorKind::HypothesisViolation: return "HypothesisViolation";
    case ErrorKind::BoundExhausted: return "BoundExhausted";
    case ErrorKind::CertificateInvalid: return "CertificateInvalid";
    case ErrorKind::InternalInvariantBroken: return "InternalInvariantBroken";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
    case ErrorKind::InputError: return "InputError";
  }
  return "Error";
}

Rel inverse(Rel r) {
  switch (r) {
    case Rel::Less: return Rel::Greater;
    case Rel::Greater: return Rel::Less;
    default: return r;
  }
}

const char* to_string(Rel r) {
  switch (r) {
    case Rel::Less: return "less";
    case Rel::Greater: return "greater";
    case Rel::Incomparable: return "incomparable";
    case Rel::Equal: return "equal";
  }
  return "?";
}

Poset Poset::make(std::vector<ElementId> elements, const std::vector<IdPair>& lt,
                  std::map<ElementId, std::string> labels, int max_elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  if (static_cast<int>(elements.size()) > max_elements) {
    throw Error(ErrorKind::SizeCap,
                "carrier of " + std::to_string(elements.size()) + " exceeds cap of " +
                    std::to_string(max_elements));
  }

  Poset p;
  p.els_ = std::move(elements);
  const int n = p.size();
  p.lt_.assign(static_cast<std::size_t>(n) * n, 0);

  for (const auto& [a, b] : lt) {
    int i = p.index_of(a);
    int j = p.index_of(b);
    if (i < 0 || j < 0) {
      throw Error(ErrorKind::UnknownElement,
                  "relation mentions id " + std::to_string(i < 0 ? a : b));
    }
    p.lt_[static_cast<std::size_t>(i) * n + j] = 1;
  }
  for (const auto& [id, name] : labels) {
    if (!p.contains(id)) {
      throw Error(ErrorKind::UnknownElement, "label for absent id " + std::to_string(id));
    }
  }
  p.labels_ = std::move(labels);

  // Floyd-Warshall closure.
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      if (!p.lt_[static_cast<std::size_t>(i) * n + k]) continue;
      for (int j = 0; j < n; ++j) {
        if (p.lt_[static_cast<std::size_t>(k) * n + j]) {
          p.lt_[static_cast<std::size_t>(i) * n + j] = 1;
        }
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    if (p.lt_[static_cast<std::size_t>(i) * n + i]) {
      throw Error(ErrorKind::CycleDetected,
                  "closure relates " + std::to_string(p.els_[i]) + " to itself");
    }
  }
  return p;
}

int Poset::index_of(ElementId a) const {
  auto it = std::lower_bound(els_.begin(), els_.end(), a);
  if (it == els_.end() || *it != a) return -1;
  return static_cast<int>(it - els_.begin());
}

bool Poset::contains(ElementId a) const { return index_of(a) >= 0; }

bool Poset::less(ElementId a, ElementId b) const {
  int i = index_of(a);
  int j = index_of(b);
  if (i < 0 || j < 0) {
    throw Error(ErrorKind::UnknownElement,
                "relation query on absent id " + std::to_string(i < 0 ? a : b));
  }
  return lt_[static_cast<std::size_t>(i) * size() + j] != 0;
}

bool Poset::incomparable(ElementId a, ElementId b) const {
  return a != b && !less(a, b) && !less(b, a);
}

Rel Poset::relation(ElementId a, ElementId b) const {
  if (a == b) {
    if (!contains(a)) throw Error(ErrorKind::UnknownElement, "id " + std::to_string(a));
    return Rel::Equal;
  }
  if (less(a, b)) return Rel::Less;
  if (less(b, a)) return Rel::Greater;
  return Rel::Incomparable;
}

std::vector<IdPair> Poset::lt_pairs() const {
  std::vector<IdPair> out;
  const int n = size();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (lt_[static_cast<std::size_t>(i) * n + j]) out.emplace_back(els_[i], els_[j]);
    }
  }
  return out;
}

std::vector<IdPair> Poset::cover_pairs() const {
  std::vector<IdPair> out;
  const int n = size();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!lt_[static_cast<std::size_t>(i) * n + j]) continue;
      bool covered = true;
      for (int k = 0; k < n; ++k) {
        if (lt_[static_cast<std::size_t>(i) * n + k] &&
            lt_[static_cast<std::size_t>(k) * n + j]) {
          covered = false;
          break;
        }
      }
      if (covered) out.emplace_back(els_[i], els_[j]);
    }
  }
  return out;
}

std::vector<ElementId> Poset::down_set(ElementId a) const {
  std::vector<ElementId> out;
  for (ElementId w : els_) {
    if (w != a && less(w, a)) out.push_back(w);
  }
  return out;
}

std::vector<ElementId> Poset::up_set(ElementId a) const {
  std::vector<ElementId> out;
  for (ElementId w : els_) {
    if (w != a && less(a, w)) out.push_back(w);
  }
  return out;
}

std::vector<ElementId> Poset::open_interval(ElementId a, ElementId b) const {
  std::vector<ElementId> out;
  for (ElementId w : els_) {
    if (w != a && w != b && less(a, w) && less(w, b)) out.push_back(w);
  }
  return out;
}

std::string Poset::label(ElementId a) const {
  auto it = labels_.find(a);
  if (it != labels_.end()) return it->second;
  return std::to_string(a);
}

std::optional<ElementId> Poset::find_label(const std::string& name) const {
  for (const auto& [id, l] : labels_) {
    if (l == name) return id;
  }
  return std::nullopt;
}

ElementId Poset::fresh_id() const { return els_.empty() ? 0 : els_.back() + 1; }

Poset Poset::with_element(ElementId id, const std::vector<ElementId>& under,
                          const std::vector<ElementId>& over, const std::string& label) const {
  if (contains(id)) {
    throw Error(ErrorKind::DomainConflict, "element " + std::to_string(id) + " already present");
  }
  std::vector<ElementId> els = els_;
  els.push_back(id);
  std::vector<IdPair> rel = lt_pairs();
  for (ElementId w : under) rel.emplace_back(w, id);
  for (ElementId w : over) rel.emplace_back(id, w);
  std::map<ElementId, std::string> labels = labels_;
  if (!label.empty()) labels[id] = label;
  return make(std::move(els), rel, std::move(labels));
}

Poset Poset::with_twin_above(ElementId anchor, ElementId id, const std::string& label) const {
  if (!contains(anchor)) {
    throw Error(ErrorKind::UnknownElement, "twin anchor " + std::to_string(anchor));
  }
  std::vector<ElementId> under = down_set(anchor);
  under.push_back(anchor);
  std::vector<ElementId> over = up_set(anchor);
  Poset result = with_element(id, under, over, label);
  // The copy of anchor's row/column is already transitively closed.
  for (ElementId w : elements()) {
    if (w == anchor || w == id) continue;
    if (result.relation(w, id) != relation(w, anchor)) {
      throw Error(ErrorKind::InternalInvariantBroken, "twin insertion changed a relation");
    }
  }
  return result;
}

Poset Poset::with_point_between(ElementId lo, ElementId hi, ElementId id,
                                const std::string& label) const {
  if (!contains(lo) || !contains(hi)) {
    throw Error(ErrorKind::UnknownElement, "interval endpoint missing");
  }
  if (!less(lo, hi)) {
    throw Error(ErrorKind::PreconditionViolation,
                label_pair(*this, lo, hi) + " is not a strict interval");
  }
  std::vector<ElementId> under = down_set(lo);
  under.push_back(lo);
  std::vector<ElementId> over = up_set(hi);
  over.push_back(hi);
  return with_element(id, under, over, label);
}

Poset Poset::restricted_to(std::vector<ElementId> subset) const {
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  std::vector<IdPair> rel;
  std::map<ElementId, std::string> labels;
  for (ElementId a : subset) {
    if (!contains(a)) throw Error(ErrorKind::UnknownElement, "id " + std::to_string(a));
    auto it = labels_.find(a);
    if (it != labels_.end()) labels[a] = it->second;
    for (ElementId b : subset) {
      if (a != b && less(a, b)) rel.emplace_back(a, b);
    }
  }
  return make(std::move(subset), rel, std::move(labels));
}

bool Poset::same_order_as(const Poset& other) const {
  return els_ == other.els_ && lt_ == other.lt_;
}

std::string label_pair(const Poset& p, ElementId a, ElementId b) {
  return "(" + p.label(a) + ", " + p.label(b) + ")";
}

std::string Poset::to_dot(const std::string& graph_name) const {
  std::ostringstream os;
  os << "digraph " << graph_name << " {\n  rankdir=BT;\n  node [shape=circle];\n";
  for (ElementId a : els_) {
    os << "  n" << a << " [label=\"" << label(a) << "\"];\n";
  }
  for (const auto& [a, b] : cover_pairs()) {
    os << "  n" << a << " -> n" << b << ";\n";
  }
  os << "}\n";
  return os.str();
}

ElementId Embedding::apply(ElementId a) const {
  for (const auto& [s, t] : map) {
    if (s == a) return t;
  }
  throw Error(ErrorKind::UnknownElement, "embedding undefined on " + std::to_string(a));
}

std::optional<ElementId> Embedding::preimage(ElementId b) const {
  for (const auto& [s, t] : map) {
    if (t == b) return s;
  }
  return std::nullopt;
}

bool is_embedding_map(const Poset& source, const Poset& target, const std::vector<IdPair>& map) {
  if (map.size() != source.elements().size()) return false;
  std::vector<ElementId> seen_sources, seen_targets;
  for (const auto& [s, t] : map) {
    if (!source.contains(s) || !target.contains(t)) return false;
    seen_sources.push_back(s);
    seen_targets.push_back(t);
  }
  std::sort(seen_sources.begin(), seen_sources.end());
  if (seen_sources != source.elements()) return false;
  std::sort(seen_targets.begin(), seen_targets.end());
  if (std::adjacent_find(seen_targets.begin(), seen_targets.end()) != seen_targets.end()) {
    return false;
  }
  for (const auto& [s1, t1] : map) {
    for (const auto& [s2, t2] : map) {
      if (source.less(s1, s2) != target.less(t1, t2)) return false;
    }
  }
  return true;
}

Embedding make_embedding(Poset source, Poset target, std::vector<IdPair> map) {
  std::sort(map.begin(), map.end());
  if (!is_embedding_map(source, target, map)) {
    throw Error(ErrorKind::NotIsomorphism, "map is not a poset embedding");
  }
  return Embedding{std::move(source), std::move(target), std::move(map)};
}

Embedding identity_embedding(const Poset& p) {
  std::vector<IdPair> map;
  for (ElementId a : p.elements()) map.emplace_back(a, a);
  return Embedding{p, p, std::move(map)};
}

Embedding compose(const Embedding& first, const Embedding& then) {
  std::vector<IdPair> map;
  for (const auto& [s, t] : first.map) map.emplace_back(s, then.apply(t));
  return make_embedding(first.source, then.target, std::move(map));
}

namespace {

struct EmbeddingSearch {
  const Poset& a;
  const Poset& b;
  std::size_t limit;
  std::vector<ElementId> order;              // source elements, most-comparable first
  std::vector<std::pair<int, int>> degrees;  // (down, up) per source element in `order`
  std::vector<ElementId> assigned_source;
  std::vector<ElementId> assigned_target;
  std::vector<Embedding>* out;

  bool run(std::size_t depth) {
    if (depth == order.size()) {
      std::vector<IdPair> map;
      for (std::size_t i = 0; i < order.size(); ++i) {
        map.emplace_back(assigned_source[i], assigned_target[i]);
      }
      std::sort(map.begin(), map.end());
      out->push_back(Embedding{a, b, std::move(map)});
      return out->size() >= limit;
    }
    ElementId s = order[depth];
    auto [sd, su] = degrees[depth];
    for (ElementId t : b.elements()) {
      bool used = false;
      for (std::size_t i = 0; i < depth; ++i) {
        if (assigned_target[i] == t) {
          used = true;
          break;
        }
      }
      if (used) continue;
      if (static_cast<int>(b.down_set(t).size()) < sd) continue;
      if (static_cast<int>(b.up_set(t).size()) < su) continue;
      bool ok = true;
      for (std::size_t i = 0; i < depth && ok; ++i) {
        ok = a.relation(s, assigned_source[i]) == b.relation(t, assigned_target[i]);
      }
      if (!ok) continue;
      assigned_source[depth] = s;
      assigned_target[depth] = t;
      if (run(depth + 1)) return true;
    }
    return false;
  }
};

}  // namespace

std::vector<Embedding> find_embeddings(const Poset& a, const Poset& b, std::size_t limit) {
  std::vector<Embedding> out;
  if (limit == 0) return out;
  if (a.empty()) {
    out.push_back(Embedding{a, b, {}});
    return out;
  }
  EmbeddingSearch search{a, b, limit, {}, {}, {}, {}, &out};
  search.order = a.elements();
  std::stable_sort(search.order.begin(), search.order.end(), [&](ElementId u, ElementId v) {
    auto deg = [&](ElementId w) { return a.down_set(w).size() + a.up_set(w).size(); };
    return deg(u) > deg(v);
  });
  for (ElementId s : search.order) {
    search.degrees.emplace_back(static_cast<int>(a.down_set(s).size()),
                                static_cast<int>(a.up_set(s).size()));
  }
  search.assigned_source.resize(search.order.size());
  search.assigned_target.resize(search.order.size());
  search.run(0);
  return out;
}

bool is_extension(const Poset& small, const Poset& big) {
  for (ElementId a : small.elements()) {
    if (!big.contains(a)) return false;
  }
  for (ElementId a : small.elements()) {
    for (ElementId b : small.elements()) {
      if (a != b && small.less(a, b) != big.less(a, b)) return false;
    }
  }
  return true;
}

QfType qf_type(ElementId c, std::vector<ElementId> base, const Poset& p) {
  if (!p.contains(c)) throw Error(ErrorKind::UnknownElement, "typed point " + std::to_string(c));
  std::sort(base.begin(), base.end());
  base.erase(std::unique(base.begin(), base.end()), base.end());
  QfType t;
  for (ElementId a : base) {
    if (!p.contains(a)) throw Error(ErrorKind::UnknownElement, "base id " + std::to_string(a));
    if (a == c) {
      t.eq.push_back(a);
    } else if (p.less(a, c)) {
      t.gt.push_back(a);
    } else if (p.less(c, a)) {
      t.lt.push_back(a);
    }
  }
  t.base = std::move(base);
  return t;
}

namespace {

std::vector<ElementId> map_sorted(const std::vector<ElementId>& v,
                                  const std::function<ElementId(ElementId)>& f) {
  std::vector<ElementId> out;
  out.reserve(v.size());
  for (ElementId a : v) out.push_back(f(a));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

QfType push_forward(const QfType& p, const Embedding& alpha) {
  // alpha restricted to p.base must be an isomorphism onto its image; an
  // embedding restricted to any subset of its source is one, so only
  // totality on the base needs checking.
  for (ElementId a : p.base) {
    bool found = false;
    for (const auto& [s, t] : alpha.map) {
      if (s == a) {
        found = true;
        break;
      }
    }
    if (!found) {
      throw Error(ErrorKind::NotIsomorphism,
                  "map does not cover base element " + std::to_string(a));
    }
  }
  auto f = [&](ElementId a) { return alpha.apply(a); };
  QfType q;
  q.base = map_sorted(p.base, f);
  q.gt = map_sorted(p.gt, f);
  q.lt = map_sorted(p.lt, f);
  q.eq = map_sorted(p.eq, f);
  return q;
}

std::string QfType::to_string() const {
  auto render = [](const std::vector<ElementId>& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(v[i]);
    }
    return s + "}";
  };
  return "gt=" + render(gt) + " lt=" + render(lt) + " eq=" + render(eq) + " over " + render(base);
}

std::vector<Placement> enumerate_placements(const Poset& p,
                                            const std::vector<std::pair<ElementId, PointRel>>& forced,
                                            std::size_t limit) {
  std::vector<Placement> out;
  if (limit == 0) return out;
  const auto& els = p.elements();
  const int n = static_cast<int>(els.size());
  std::vector<PointRel> assignment(n, PointRel::Incomp);
  std::vector<char> is_forced(n, 0);
  std::vector<PointRel> forced_value(n, PointRel::Incomp);
  for (const auto& [id, rel] : forced) {
    bool found = false;
    for (int i = 0; i < n; ++i) {
      if (els[i] == id) {
        is_forced[i] = 1;
        forced_value[i] = rel;
        found = true;
        break;
      }
    }
    if (!found) throw Error(ErrorKind::UnknownElement, "constraint on id " + std::to_string(id));
  }

  // Pairwise consistency against earlier assignments; the matrix is closed,
  // so this is complete.
  auto consistent = [&](int i, PointRel r) {
    for (int j = 0; j < i; ++j) {
      ElementId w = els[i];
      ElementId v = els[j];
      PointRel s = assignment[j];
      switch (r) {
        case PointRel::Below:  // p < w
          if (p.less(w, v) && s != PointRel::Below) return false;        // p < w < v
          if (s == PointRel::Above && !p.less(v, w)) return false;       // v < p < w
          break;
        case PointRel::Above:  // w < p
          if (p.less(v, w) && s != PointRel::Above) return false;        // v < w < p
          if (s == PointRel::Below && !p.less(w, v)) return false;       // w < p < v
          break;
        case PointRel::Incomp:
          if (s == PointRel::Below && p.less(v, w)) return false;        // p < v < w
          if (s == PointRel::Above && p.less(w, v)) return false;        // w < v < p
          break;
      }
    }
    return true;
  };

  auto emit = [&]() {
    Placement pl;
    for (int i = 0; i < n; ++i) {
      if (assignment[i] == PointRel::Above) pl.under.push_back(els[i]);
      if (assignment[i] == PointRel::Below) pl.over.push_back(els[i]);
    }
    out.push_back(std::move(pl));
  };

  std::function<bool(int)> rec = [&](int i) -> bool {
    if (i == n) {
      emit();
      return out.size() >= limit;
    }
    if (is_forced[i]) {
      if (!consistent(i, forced_value[i])) return false;
      assignment[i] = forced_value[i];
      return rec(i + 1);
    }
    for (PointRel r : {PointRel::Below, PointRel::Above, PointRel::Incomp}) {
      if (!consistent(i, r)) continue;
      assignment[i] = r;
      if (rec(i + 1)) return true;
    }
    return false;
  };
  rec(0);
  return out;
}

std::optional<Placement> minimal_placement(const Poset& p,
                                           const std::vector<std::pair<ElementId, PointRel>>& forced) {
  std::vector<ElementId> under, over, apart;
  for (const auto& [id, rel] : forced) {
    if (!p.contains(id)) throw Error(ErrorKind::UnknownElement, "constraint on id " + std::to_string(id));
    switch (rel) {
      case PointRel::Above: under.push_back(id); break;
      case PointRel::Below: over.push_back(id); break;
      case PointRel::Incomp: apart.push_back(id); break;
    }
  }
  std::vector<ElementId> under_closed = under, over_closed = over;
  for (ElementId w : under) {
    for (ElementId v : p.down_set(w)) under_closed.push_back(v);
  }
  for (ElementId w : over) {
    for (ElementId v : p.up_set(w)) over_closed.push_back(v);
  }
  std::sort(under_closed.begin(), under_closed.end());
  under_closed.erase(std::unique(under_closed.begin(), under_closed.end()), under_closed.end());
  std::sort(over_closed.begin(), over_closed.end());
  over_closed.erase(std::unique(over_closed.begin(), over_closed.end()), over_closed.end());

  for (ElementId u : under_closed) {
    if (std::binary_search(over_closed.begin(), over_closed.end(), u)) return std::nullopt;
  }
  for (ElementId u : under_closed) {
    for (ElementId v : over_closed) {
      if (!p.less(u, v)) return std::nullopt;
    }
  }
  for (ElementId w : apart) {
    if (std::binary_search(under_closed.begin(), under_closed.end(), w)) return std::nullopt;
    if (std::binary_search(over_closed.begin(), over_closed.end(), w)) return std::nullopt;
  }
  return Placement{std::move(under_closed), std::move(over_closed)};
}

}  // namespace pamalg
