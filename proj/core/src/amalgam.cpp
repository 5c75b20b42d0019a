#include "pamalg/amalgam.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace pamalg {

JepResult jep_join(const PaPair& p1, const PaPair& p2) {
  std::map<ElementId, ElementId> left, right;
  ElementId next = 0;
  for (ElementId a : p1.poset.elements()) left[a] = next++;
  for (ElementId a : p2.poset.elements()) right[a] = next++;

  std::vector<ElementId> elements;
  std::map<ElementId, std::string> labels;
  std::vector<IdPair> lt;
  for (ElementId a : p1.poset.elements()) {
    elements.push_back(left[a]);
    auto it = p1.poset.labels().find(a);
    if (it != p1.poset.labels().end()) labels[left[a]] = it->second;
  }
  for (ElementId a : p2.poset.elements()) {
    elements.push_back(right[a]);
    auto it = p2.poset.labels().find(a);
    if (it != p2.poset.labels().end()) labels[right[a]] = it->second;
  }
  for (const auto& [a, b] : p1.poset.lt_pairs()) lt.emplace_back(left[a], left[b]);
  for (const auto& [a, b] : p2.poset.lt_pairs()) lt.emplace_back(right[a], right[b]);
  for (ElementId a : p1.poset.elements()) {
    for (ElementId b : p2.poset.elements()) lt.emplace_back(left[a], right[b]);
  }
  Poset joined = Poset::make(std::move(elements), lt, std::move(labels));

  std::vector<IdPair> f, g;
  for (const auto& [a, b] : p1.f.graph()) f.emplace_back(left[a], left[b]);
  for (const auto& [a, b] : p2.f.graph()) f.emplace_back(right[a], right[b]);
  for (const auto& [a, b] : p1.g.graph()) g.emplace_back(left[a], left[b]);
  for (const auto& [a, b] : p2.g.graph()) g.emplace_back(right[a], right[b]);

  JepResult out;
  out.joined = make_pa_pair(joined, std::move(f), std::move(g));
  std::vector<IdPair> lmap, rmap;
  for (const auto& [a, t] : left) lmap.emplace_back(a, t);
  for (const auto& [a, t] : right) rmap.emplace_back(a, t);
  out.left = make_pa_embedding(p1, out.joined, std::move(lmap));
  out.right = make_pa_embedding(p2, out.joined, std::move(rmap));
  return out;
}

bool verify_amalgam(const PaPair& a, const PaPair& b, const PaPair& c, const PaPair& d,
                    const PaEmbedding& emb_b, const PaEmbedding& emb_c,
                    const PaEmbedding& emb_bd, const PaEmbedding& emb_cd) {
  if (!is_pa_embedding(b, d, emb_bd.map.map)) return false;
  if (!is_pa_embedding(c, d, emb_cd.map.map)) return false;
  for (ElementId x : a.poset.elements()) {
    if (emb_bd.map.apply(emb_b.map.apply(x)) != emb_cd.map.apply(emb_c.map.apply(x))) {
      return false;
    }
  }
  return true;
}

namespace {

enum class Cell : std::uint8_t { Unknown, Less, Greater, Incomp };

struct Engine {
  // Side data
  const PaPair& b;
  const PaPair& c;
  std::vector<ElementId> bels, cels;
  int nb = 0, nc = 0;

  // Matching state: index matches between the two carriers.
  std::vector<int> match_bc, match_cb;     // -1 when unmatched
  std::vector<char> committed_unmatched;   // B side, decided unmatched

  std::uint64_t nodes = 0;
  std::uint64_t max_nodes = 0;

  struct Budget {};  // thrown when max_nodes is exceeded

  int bidx(ElementId e) const {
    return static_cast<int>(std::lower_bound(bels.begin(), bels.end(), e) - bels.begin());
  }
  int cidx(ElementId e) const {
    return static_cast<int>(std::lower_bound(cels.begin(), cels.end(), e) - cels.begin());
  }

  bool merge(int ib, int ic, std::vector<std::pair<int, int>>& queue) {
    if (match_bc[ib] == ic && match_cb[ic] == ib) return true;
    if (match_bc[ib] != -1 || match_cb[ic] != -1) return false;
    if (committed_unmatched[ib]) return false;
    // relation consistency against every existing merged pair
    for (int jb = 0; jb < nb; ++jb) {
      int jc = match_bc[jb];
      if (jc == -1) continue;
      if (b.poset.relation(bels[ib], bels[jb]) != c.poset.relation(cels[ic], cels[jc])) {
        return false;
      }
    }
    match_bc[ib] = ic;
    match_cb[ic] = ib;
    queue.emplace_back(ib, ic);
    return true;
  }

  // Functional closure of the current matching; false on conflict.
  bool propagate(std::vector<std::pair<int, int>>& queue) {
    while (!queue.empty()) {
      auto [ib, ic] = queue.back();
      queue.pop_back();
      ElementId eb = bels[ib];
      ElementId ec = cels[ic];
      for (const PartialAutomorphism* hb : {&b.f, &b.g}) {
        const PartialAutomorphism* hc = hb == &b.f ? &c.f : &c.g;
        auto ib2 = hb->apply(eb);
        auto ic2 = hc->apply(ec);
        if (ib2 && ic2 && !merge(bidx(*ib2), cidx(*ic2), queue)) return false;
        auto pb = hb->preimage(eb);
        auto pc = hc->preimage(ec);
        if (pb && pc && !merge(bidx(*pb), cidx(*pc), queue)) return false;
      }
    }
    return true;
  }
};

// Relation CSP over the quotient carrier for one closed matching.
struct RelationSolver {
  const PaPair& b;
  const PaPair& c;
  const Engine& eng;

  // Nodes: merged pairs first (b-representative), then B-only, then C-only.
  struct Node {
    int ib = -1;
    int ic = -1;
  };
  std::vector<Node> nodes;
  std::vector<int> node_of_b, node_of_c;
  int n = 0;
  std::vector<Cell> rel;  // n x n
  std::vector<int> f_map, g_map;  // node -> node or -1
  std::uint64_t* budget_nodes;
  std::uint64_t max_nodes;

  Cell& at(int u, int v) { return rel[static_cast<std::size_t>(u) * n + v]; }
  Cell get(int u, int v) const { return rel[static_cast<std::size_t>(u) * n + v]; }

  bool set_less(int u, int v) {
    if (u == v) return false;
    Cell cur = get(u, v);
    if (cur == Cell::Less) return true;
    if (cur != Cell::Unknown) return false;
    at(u, v) = Cell::Less;
    at(v, u) = Cell::Greater;
    // transitive closure
    for (int p = 0; p < n; ++p) {
      if (p != u && get(p, u) == Cell::Less && !set_less(p, v)) return false;
    }
    for (int q = 0; q < n; ++q) {
      if (q != v && get(v, q) == Cell::Less && !set_less(u, q)) return false;
    }
    return link_maps(u, v, true);
  }

  bool set_incomp(int u, int v) {
    if (u == v) return false;
    Cell cur = get(u, v);
    if (cur == Cell::Incomp) return true;
    if (cur != Cell::Unknown) return false;
    at(u, v) = Cell::Incomp;
    at(v, u) = Cell::Incomp;
    return link_maps(u, v, false);
  }

  // rel(u,v) == rel(h(u),h(v)) for both union maps, both directions.
  bool link_maps(int u, int v, bool less) {
    for (const std::vector<int>* h : {&f_map, &g_map}) {
      int hu = (*h)[u], hv = (*h)[v];
      if (hu != -1 && hv != -1) {
        if (less ? !set_less(hu, hv) : !set_incomp(hu, hv)) return false;
      }
      for (int pu = 0; pu < n; ++pu) {
        if ((*h)[pu] != u) continue;
        for (int pv = 0; pv < n; ++pv) {
          if ((*h)[pv] != v) continue;
          if (less ? !set_less(pu, pv) : !set_incomp(pu, pv)) return false;
        }
      }
    }
    return true;
  }

  bool apply_known(int u, int v, Rel r) {
    switch (r) {
      case Rel::Less: return set_less(u, v);
      case Rel::Greater: return set_less(v, u);
      case Rel::Incomparable: return set_incomp(u, v);
      case Rel::Equal: return false;
    }
    return false;
  }

  bool init() {
    int merged = 0;
    node_of_b.assign(eng.nb, -1);
    node_of_c.assign(eng.nc, -1);
    for (int ib = 0; ib < eng.nb; ++ib) {
      if (eng.match_bc[ib] != -1) {
        node_of_b[ib] = merged;
        node_of_c[eng.match_bc[ib]] = merged;
        nodes.push_back({ib, eng.match_bc[ib]});
        ++merged;
      }
    }
    for (int ib = 0; ib < eng.nb; ++ib) {
      if (node_of_b[ib] == -1) {
        node_of_b[ib] = static_cast<int>(nodes.size());
        nodes.push_back({ib, -1});
      }
    }
    for (int ic = 0; ic < eng.nc; ++ic) {
      if (node_of_c[ic] == -1) {
        node_of_c[ic] = static_cast<int>(nodes.size());
        nodes.push_back({-1, ic});
      }
    }
    n = static_cast<int>(nodes.size());
    rel.assign(static_cast<std::size_t>(n) * n, Cell::Unknown);

    f_map.assign(n, -1);
    g_map.assign(n, -1);
    for (int u = 0; u < n; ++u) {
      const Node& node = nodes[u];
      if (node.ib != -1) {
        if (auto img = b.f.apply(eng.bels[node.ib])) f_map[u] = node_of_b[eng.bidx(*img)];
        if (auto img = b.g.apply(eng.bels[node.ib])) g_map[u] = node_of_b[eng.bidx(*img)];
      }
      if (node.ic != -1) {
        if (auto img = c.f.apply(eng.cels[node.ic])) {
          int w = node_of_c[eng.cidx(*img)];
          if (f_map[u] != -1 && f_map[u] != w) return false;  // functional conflict
          f_map[u] = w;
        }
        if (auto img = c.g.apply(eng.cels[node.ic])) {
          int w = node_of_c[eng.cidx(*img)];
          if (g_map[u] != -1 && g_map[u] != w) return false;
          g_map[u] = w;
        }
      }
    }

    // Known relations: B-internal, C-internal, merged-vs-other-side.
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        const Node& nu = nodes[u];
        const Node& nv = nodes[v];
        std::optional<Rel> known;
        if (nu.ib != -1 && nv.ib != -1) {
          known = b.poset.relation(eng.bels[nu.ib], eng.bels[nv.ib]);
        }
        if (nu.ic != -1 && nv.ic != -1) {
          Rel rc = c.poset.relation(eng.cels[nu.ic], eng.cels[nv.ic]);
          if (known && *known != rc) return false;
          known = rc;
        }
        if (known && get(u, v) == Cell::Unknown && !apply_known(u, v, *known)) return false;
        if (known && get(u, v) != Cell::Unknown) {
          Cell want = *known == Rel::Less      ? Cell::Less
                      : *known == Rel::Greater ? Cell::Greater
                                               : Cell::Incomp;
          if (get(u, v) != want) return false;
        }
      }
    }
    return true;
  }

  std::optional<std::pair<int, int>> pick_unknown() const {
    std::optional<std::pair<int, int>> best;
    int best_degree = -1;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (get(u, v) != Cell::Unknown) continue;
        int degree = 0;
        for (int w = 0; w < n; ++w) {
          if (get(u, w) != Cell::Unknown) ++degree;
          if (get(v, w) != Cell::Unknown) ++degree;
        }
        if (degree > best_degree) {
          best_degree = degree;
          best = std::make_pair(u, v);
        }
      }
    }
    return best;
  }

  bool solve() {
    auto pick = pick_unknown();
    if (!pick) return true;
    auto [u, v] = *pick;
    for (Cell value : {Cell::Less, Cell::Greater, Cell::Incomp}) {
      if (++*budget_nodes > max_nodes) throw Engine::Budget{};
      std::vector<Cell> saved = rel;
      bool ok = value == Cell::Less      ? set_less(u, v)
                : value == Cell::Greater ? set_less(v, u)
                                         : set_incomp(u, v);
      if (ok && solve()) return true;
      rel = std::move(saved);
    }
    return false;
  }
};

}  // namespace

AmalgamResult amalgam_exists(const PaPair& a, const PaPair& b, const PaPair& c,
                             const PaEmbedding& emb_b, const PaEmbedding& emb_c,
                             const AmalgamOptions& options) {
  if (!is_pa_embedding(a, b, emb_b.map.map) || !is_pa_embedding(a, c, emb_c.map.map)) {
    throw Error(ErrorKind::PreconditionViolation, "base embeddings are invalid");
  }

  Engine eng{b, c, b.poset.elements(), c.poset.elements(), 0, 0, {}, {}, {}, 0, options.max_nodes};
  eng.nb = static_cast<int>(eng.bels.size());
  eng.nc = static_cast<int>(eng.cels.size());
  eng.match_bc.assign(eng.nb, -1);
  eng.match_cb.assign(eng.nc, -1);
  eng.committed_unmatched.assign(eng.nb, 0);

  // Forced identifications: the two images of A, closed under the maps.
  {
    std::vector<std::pair<int, int>> queue;
    for (ElementId x : a.poset.elements()) {
      if (!eng.merge(eng.bidx(emb_b.map.apply(x)), eng.cidx(emb_c.map.apply(x)), queue)) {
        return AmalgamResult{AmalgamOutcome::Refuted, std::nullopt, eng.nodes};
      }
    }
    if (!eng.propagate(queue)) {
      return AmalgamResult{AmalgamOutcome::Refuted, std::nullopt, eng.nodes};
    }
  }

  std::vector<int> base_b;  // B-side indices forced by A
  for (int ib = 0; ib < eng.nb; ++ib) {
    if (eng.match_bc[ib] != -1) base_b.push_back(ib);
  }

  AmalgamResult result{AmalgamOutcome::Refuted, std::nullopt, 0};

  // Try one closed matching: solve the relation CSP; on success build D.
  auto try_matching = [&]() -> bool {
    RelationSolver solver{b, c, eng, {}, {}, {}, 0, {}, {}, {}, &eng.nodes, options.max_nodes};
    if (!solver.init()) return false;
    if (!solver.solve()) return false;

    // Materialize D.
    std::vector<ElementId> els;
    std::map<ElementId, std::string> labels;
    for (int u = 0; u < solver.n; ++u) {
      els.push_back(u);
      const auto& node = solver.nodes[u];
      std::string label = node.ib != -1 ? b.poset.label(eng.bels[node.ib])
                                        : c.poset.label(eng.cels[node.ic]);
      labels[u] = label;
    }
    std::vector<IdPair> lt;
    for (int u = 0; u < solver.n; ++u) {
      for (int v = 0; v < solver.n; ++v) {
        if (solver.get(u, v) == Cell::Less) lt.emplace_back(u, v);
      }
    }
    std::vector<IdPair> f, g;
    for (int u = 0; u < solver.n; ++u) {
      if (solver.f_map[u] != -1) f.emplace_back(u, solver.f_map[u]);
      if (solver.g_map[u] != -1) g.emplace_back(u, solver.g_map[u]);
    }
    Poset dposet = Poset::make(std::move(els), lt, std::move(labels));
    PaPair d = make_pa_pair(dposet, std::move(f), std::move(g));

    std::vector<IdPair> bd, cd;
    for (int ib = 0; ib < eng.nb; ++ib) bd.emplace_back(eng.bels[ib], solver.node_of_b[ib]);
    for (int ic = 0; ic < eng.nc; ++ic) cd.emplace_back(eng.cels[ic], solver.node_of_c[ic]);
    PaEmbedding emb_bd = make_pa_embedding(b, d, std::move(bd));
    PaEmbedding emb_cd = make_pa_embedding(c, d, std::move(cd));
    if (!verify_amalgam(a, b, c, d, emb_b, emb_c, emb_bd, emb_cd)) {
      throw Error(ErrorKind::InternalInvariantBroken, "constructed amalgam failed verification");
    }
    result.outcome = AmalgamOutcome::Found;
    result.amalgam = Amalgam{std::move(d), std::move(emb_bd), std::move(emb_cd)};
    return true;
  };

  // Enumerate closed matchings extending the forced one: each non-base
  // B-element is either matched to a type-compatible C-element or committed
  // unmatched; every merge is propagated.
  std::function<bool(int)> enumerate = [&](int ib) -> bool {
    if (++eng.nodes > options.max_nodes) throw Engine::Budget{};
    while (ib < eng.nb && (eng.match_bc[ib] != -1 || eng.committed_unmatched[ib])) ++ib;
    if (ib == eng.nb) return try_matching();

    for (int ic = 0; ic < eng.nc; ++ic) {
      if (eng.match_cb[ic] != -1) continue;
      bool compatible = true;
      for (int jb : base_b) {
        if (b.poset.relation(eng.bels[ib], eng.bels[jb]) !=
            c.poset.relation(eng.cels[ic], eng.cels[eng.match_bc[jb]])) {
          compatible = false;
          break;
        }
      }
      if (!compatible) continue;
      auto saved_bc = eng.match_bc;
      auto saved_cb = eng.match_cb;
      std::vector<std::pair<int, int>> queue;
      if (eng.merge(ib, ic, queue) && eng.propagate(queue)) {
        if (enumerate(ib + 1)) return true;
      }
      eng.match_bc = std::move(saved_bc);
      eng.match_cb = std::move(saved_cb);
    }

    eng.committed_unmatched[ib] = 1;
    bool found = enumerate(ib + 1);
    eng.committed_unmatched[ib] = 0;
    return found;
  };

  try {
    enumerate(0);
  } catch (const Engine::Budget&) {
    return AmalgamResult{AmalgamOutcome::ResourceLimit, std::nullopt, eng.nodes};
  }
  result.nodes = eng.nodes;
  return result;
}

}  // namespace pamalg
