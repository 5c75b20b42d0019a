#include "pamalg/partial_auto.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace pamalg {

std::optional<ElementId> PartialAutomorphism::apply(ElementId a) const {
  for (const auto& [x, y] : pairs_) {
    if (x == a) return y;
  }
  return std::nullopt;
}

std::optional<ElementId> PartialAutomorphism::preimage(ElementId b) const {
  for (const auto& [x, y] : pairs_) {
    if (y == b) return x;
  }
  return std::nullopt;
}

std::vector<ElementId> PartialAutomorphism::domain() const {
  std::vector<ElementId> out;
  for (const auto& [x, y] : pairs_) out.push_back(x);
  return out;  // pairs_ sorted by first coordinate
}

std::vector<ElementId> PartialAutomorphism::range() const {
  std::vector<ElementId> out;
  for (const auto& [x, y] : pairs_) out.push_back(y);
  std::sort(out.begin(), out.end());
  return out;
}

PartialAutomorphism PartialAutomorphism::with_pair_unchecked(ElementId a, ElementId b) const {
  PartialAutomorphism h = *this;
  h.pairs_.emplace_back(a, b);
  std::sort(h.pairs_.begin(), h.pairs_.end());
  return h;
}

PartialAutomorphism PartialAutomorphism::on_extended_poset(const Poset& bigger) const {
  if (!is_extension(poset_, bigger)) {
    throw Error(ErrorKind::PreconditionViolation, "carrier is not an extension");
  }
  PartialAutomorphism h = *this;
  h.poset_ = bigger;
  return h;
}

std::string PaViolation::describe(const Poset& p) const {
  switch (kind) {
    case ErrorKind::UnknownElement:
      return "pair mentions absent id " + std::to_string(a);
    case ErrorKind::NotInjective:
      return "coordinate " + p.label(a) + " repeats";
    default:
      return "order violated at " + label_pair(p, a, b);
  }
}

std::optional<PaViolation> check_pa(const Poset& p, const std::vector<IdPair>& pairs) {
  for (const auto& [a, b] : pairs) {
    if (!p.contains(a)) return PaViolation{ErrorKind::UnknownElement, a, a};
    if (!p.contains(b)) return PaViolation{ErrorKind::UnknownElement, b, b};
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      if (pairs[i].first == pairs[j].first) {
        return PaViolation{ErrorKind::NotInjective, pairs[i].first, pairs[i].first};
      }
      if (pairs[i].second == pairs[j].second) {
        return PaViolation{ErrorKind::NotInjective, pairs[i].second, pairs[i].second};
      }
    }
  }
  for (const auto& [a, fa] : pairs) {
    for (const auto& [b, fb] : pairs) {
      if (p.less(a, b) != p.less(fa, fb)) {
        return PaViolation{ErrorKind::OrderViolation, a, b};
      }
    }
  }
  return std::nullopt;
}

PartialAutomorphism validate_pa(const Poset& p, std::vector<IdPair> pairs) {
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  if (auto violation = check_pa(p, pairs)) {
    throw Error(violation->kind, violation->describe(p));
  }
  PartialAutomorphism h;
  h.poset_ = p;
  h.pairs_ = std::move(pairs);
  return h;
}

QfType push_forward(const QfType& p, const PartialAutomorphism& h) {
  for (ElementId a : p.base) {
    if (!h.defined_on(a)) {
      throw Error(ErrorKind::NotIsomorphism,
                  "partial map undefined on base element " + std::to_string(a));
    }
  }
  auto f = [&](const std::vector<ElementId>& v) {
    std::vector<ElementId> out;
    for (ElementId a : v) out.push_back(*h.apply(a));
    std::sort(out.begin(), out.end());
    return out;
  };
  QfType q;
  q.base = f(p.base);
  q.gt = f(p.gt);
  q.lt = f(p.lt);
  q.eq = f(p.eq);
  return q;
}

PartialAutomorphism extend_by_pair(const PartialAutomorphism& h, ElementId c, ElementId d) {
  const Poset& p = h.poset();
  if (!p.contains(c) || !p.contains(d)) {
    throw Error(ErrorKind::UnknownElement, "extension pair mentions an absent id");
  }
  if (h.defined_on(c)) {
    throw Error(ErrorKind::DomainConflict, p.label(c) + " already in the domain");
  }
  if (h.preimage(d)) {
    throw Error(ErrorKind::DomainConflict, p.label(d) + " already in the range");
  }
  QfType source = qf_type(c, h.domain(), p);
  QfType pushed = push_forward(source, h);
  QfType target = qf_type(d, h.range(), p);
  if (pushed != target) {
    throw TypeMismatchError(pushed, target,
                            "pushed type " + pushed.to_string() + " vs type of " + p.label(d) +
                                " = " + target.to_string());
  }
  return h.with_pair_unchecked(c, d);
}

std::vector<std::pair<ElementId, PointRel>> pushforward_constraints(const PartialAutomorphism& h,
                                                                    ElementId endpoint) {
  QfType pushed = push_forward(qf_type(endpoint, h.domain(), h.poset()), h);
  std::vector<std::pair<ElementId, PointRel>> forced;
  for (ElementId r : pushed.base) {
    if (std::binary_search(pushed.gt.begin(), pushed.gt.end(), r)) {
      forced.emplace_back(r, PointRel::Above);
    } else if (std::binary_search(pushed.lt.begin(), pushed.lt.end(), r)) {
      forced.emplace_back(r, PointRel::Below);
    } else {
      forced.emplace_back(r, PointRel::Incomp);
    }
  }
  return forced;
}

PartialAutomorphism extend_by_fresh_target(const PartialAutomorphism& h, ElementId c,
                                           ElementId* new_id, const std::string& label) {
  if (h.defined_on(c)) {
    throw Error(ErrorKind::DomainConflict, h.poset().label(c) + " already in the domain");
  }
  auto forced = pushforward_constraints(h, c);
  auto placement = minimal_placement(h.poset(), forced);
  if (!placement) {
    throw Error(ErrorKind::InternalInvariantBroken, "pushforward type not realizable");
  }
  ElementId id = h.poset().fresh_id();
  Poset grown = h.poset().with_element(id, placement->under, placement->over, label);
  if (new_id) *new_id = id;
  PartialAutomorphism result = h.on_extended_poset(grown).with_pair_unchecked(c, id);
  if (check_pa(grown, result.graph())) {
    throw Error(ErrorKind::InternalInvariantBroken, "fresh target placement rejected");
  }
  return result;
}

Orbit orbit(const PartialAutomorphism& h, ElementId s) {
  if (!h.poset().contains(s)) {
    throw Error(ErrorKind::UnknownElement, "orbit start " + std::to_string(s));
  }
  Orbit o;
  o.points.push_back(s);
  ElementId current = s;
  while (true) {
    auto next = h.apply(current);
    if (!next) break;
    if (std::find(o.points.begin(), o.points.end(), *next) != o.points.end()) {
      o.cycle = true;
      break;
    }
    o.points.push_back(*next);
    current = *next;
  }
  return o;
}

PaPair make_pa_pair(const Poset& p, std::vector<IdPair> f_pairs, std::vector<IdPair> g_pairs) {
  PaPair pair;
  pair.poset = p;
  pair.f = validate_pa(p, std::move(f_pairs));
  pair.g = validate_pa(p, std::move(g_pairs));
  return pair;
}

bool commutes(const Embedding& alpha, const PartialAutomorphism& small,
              const PartialAutomorphism& big) {
  for (const auto& [a, fa] : small.graph()) {
    auto image = big.apply(alpha.apply(a));
    if (!image || *image != alpha.apply(fa)) return false;
  }
  return true;
}

bool is_pa_embedding(const PaPair& from, const PaPair& to, const std::vector<IdPair>& map) {
  if (!is_embedding_map(from.poset, to.poset, map)) return false;
  Embedding alpha{from.poset, to.poset, map};
  return commutes(alpha, from.f, to.f) && commutes(alpha, from.g, to.g);
}

PaEmbedding make_pa_embedding(const PaPair& from, const PaPair& to, std::vector<IdPair> map) {
  std::sort(map.begin(), map.end());
  Embedding alpha = make_embedding(from.poset, to.poset, std::move(map));
  if (!commutes(alpha, from.f, to.f)) {
    throw Error(ErrorKind::NotIsomorphism, "map does not commute with f");
  }
  if (!commutes(alpha, from.g, to.g)) {
    throw Error(ErrorKind::NotIsomorphism, "map does not commute with g");
  }
  return PaEmbedding{std::move(alpha), true, true};
}

PaEmbedding compose(const PaEmbedding& first, const PaEmbedding& then) {
  PaEmbedding out;
  out.map = compose(first.map, then.map);
  out.f_checked = first.f_checked && then.f_checked;
  out.g_checked = first.g_checked && then.g_checked;
  return out;
}

PaEmbedding inclusion_pa_embedding(const PaPair& small, const PaPair& big) {
  std::vector<IdPair> map;
  for (ElementId a : small.poset.elements()) map.emplace_back(a, a);
  return make_pa_embedding(small, big, std::move(map));
}

bool is_pa_extension(const PartialAutomorphism& small, const PartialAutomorphism& big) {
  if (!is_extension(small.poset(), big.poset())) return false;
  return std::includes(big.graph().begin(), big.graph().end(), small.graph().begin(),
                       small.graph().end());
}

bool is_pa_extension(const PaPair& small, const PaPair& big) {
  if (!is_extension(small.poset, big.poset)) return false;
  return std::includes(big.f.graph().begin(), big.f.graph().end(), small.f.graph().begin(),
                       small.f.graph().end()) &&
         std::includes(big.g.graph().begin(), big.g.graph().end(), small.g.graph().begin(),
                       small.g.graph().end());
}

namespace {

std::vector<IdPair> chain_pairs(ElementId a, const std::vector<ElementId>& chain) {
  std::vector<IdPair> out;
  ElementId prev = a;
  for (ElementId c : chain) {
    out.emplace_back(prev, c);
    prev = c;
  }
  return out;
}

}  // namespace

bool free_check_instance(const PartialAutomorphism& b, ElementId a, ElementId bb, const Poset& c,
                         const std::vector<ElementId>& chain) {
  if (!is_extension(b.poset(), c)) {
    throw Error(ErrorKind::PreconditionViolation, "not a poset extension");
  }
  ElementId prev = a;
  for (ElementId ci : chain) {
    if (!c.contains(ci)) {
      throw Error(ErrorKind::PreconditionViolation, "chain point " + std::to_string(ci) +
                                                        " is not in the extension");
    }
    if (!c.less(prev, ci)) {
      throw Error(ErrorKind::PreconditionViolation,
                  "chain inequality " + label_pair(c, prev, ci) + " fails");
    }
    prev = ci;
  }
  if (!chain.empty() && !c.less(chain.back(), bb)) {
    throw Error(ErrorKind::PreconditionViolation,
                "chain inequality " + label_pair(c, chain.back(), bb) + " fails");
  }
  if (chain.empty()) return true;
  std::vector<IdPair> pairs = b.graph();
  auto extra = chain_pairs(a, chain);
  pairs.insert(pairs.end(), extra.begin(), extra.end());
  return !check_pa(c, pairs).has_value();
}

FreeVerdict free_verify_bounded(const PartialAutomorphism& b, ElementId a, ElementId bb,
                                const FreeBounds& bounds) {
  const Poset& base = b.poset();
  if (!base.less(a, bb)) {
    throw Error(ErrorKind::PreconditionViolation, label_pair(base, a, bb) + " not ordered");
  }

  // New points only matter when they can appear on a chain, so they are
  // placed inside the open interval; any counterexample restricts to one of
  // this shape.
  std::vector<Poset> extensions;
  extensions.push_back(base);
  int max_points = std::min(bounds.k_points, bounds.l_chain);
  std::function<void(const Poset&, int)> grow = [&](const Poset& current, int remaining) {
    if (remaining == 0) return;
    ElementId id = current.fresh_id();
    std::vector<std::pair<ElementId, PointRel>> forced = {{a, PointRel::Above},
                                                          {bb, PointRel::Below}};
    for (const Placement& pl : enumerate_placements(current, forced)) {
      Poset next = current.with_element(id, pl.under, pl.over);
      extensions.push_back(next);
      grow(next, remaining - 1);
    }
  };
  grow(base, max_points);

  for (const Poset& c : extensions) {
    std::vector<ElementId> interval = c.open_interval(a, bb);
    // All strictly increasing chains of length 1..l_chain in the interval.
    std::vector<std::vector<ElementId>> chains;
    std::function<void(std::vector<ElementId>&)> extend_chain = [&](std::vector<ElementId>& cur) {
      if (!cur.empty()) chains.push_back(cur);
      if (static_cast<int>(cur.size()) >= bounds.l_chain) return;
      for (ElementId w : interval) {
        if (!cur.empty() && !c.less(cur.back(), w)) continue;
        cur.push_back(w);
        extend_chain(cur);
        cur.pop_back();
      }
    };
    std::vector<ElementId> cur;
    extend_chain(cur);
    for (const auto& chain : chains) {
      if (!free_check_instance(b, a, bb, c, chain)) {
        return FreeVerdict{false, FreeCounterexample{c, chain}};
      }
    }
  }
  return FreeVerdict{true, std::nullopt};
}

std::string to_dot(const PaPair& pair, const std::string& graph_name) {
  std::ostringstream os;
  os << "digraph " << graph_name << " {\n  rankdir=BT;\n  node [shape=circle];\n";
  for (ElementId a : pair.poset.elements()) {
    os << "  n" << a << " [label=\"" << pair.poset.label(a) << "\"];\n";
  }
  for (const auto& [x, y] : pair.poset.cover_pairs()) {
    os << "  n" << x << " -> n" << y << " [color=gray];\n";
  }
  for (const auto& [x, y] : pair.f.graph()) {
    os << "  n" << x << " -> n" << y << " [color=red, constraint=false, label=\"f\"];\n";
  }
  for (const auto& [x, y] : pair.g.graph()) {
    os << "  n" << x << " -> n" << y
       << " [color=blue, style=dashed, constraint=false, label=\"g\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace pamalg
