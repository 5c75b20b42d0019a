#include "pamalg/generators.hpp"

#include <algorithm>
#include <functional>

#include "pamalg/rng.hpp"

namespace pamalg {

namespace {

// Realizability of a prescribed (gt, lt) pattern over S: close downward the
// forced down-set and upward the forced up-set; the pattern is realizable
// iff the closures are disjoint, pairwise ordered, and do not drag extra
// S-elements in.
bool realizable(const Poset& a, const std::vector<ElementId>& s, const std::vector<ElementId>& gt,
                const std::vector<ElementId>& lt) {
  std::vector<ElementId> down, up;
  for (ElementId g : gt) {
    down.push_back(g);
    for (ElementId w : a.down_set(g)) down.push_back(w);
  }
  for (ElementId l : lt) {
    up.push_back(l);
    for (ElementId w : a.up_set(l)) up.push_back(w);
  }
  std::sort(down.begin(), down.end());
  down.erase(std::unique(down.begin(), down.end()), down.end());
  std::sort(up.begin(), up.end());
  up.erase(std::unique(up.begin(), up.end()), up.end());

  for (ElementId d : down) {
    if (std::binary_search(up.begin(), up.end(), d)) return false;
  }
  for (ElementId d : down) {
    for (ElementId u : up) {
      if (!a.less(d, u)) return false;
    }
  }
  // the closures must not capture S-elements beyond the prescription
  for (ElementId w : s) {
    bool in_down = std::binary_search(down.begin(), down.end(), w);
    bool in_up = std::binary_search(up.begin(), up.end(), w);
    bool in_gt = std::binary_search(gt.begin(), gt.end(), w);
    bool in_lt = std::binary_search(lt.begin(), lt.end(), w);
    if (in_down != in_gt || in_up != in_lt) return false;
  }
  return true;
}

}  // namespace

std::vector<QfType> one_point_types(const Poset& a, const std::vector<ElementId>& s) {
  std::vector<ElementId> base = s;
  std::sort(base.begin(), base.end());
  base.erase(std::unique(base.begin(), base.end()), base.end());
  for (ElementId w : base) {
    if (!a.contains(w)) throw Error(ErrorKind::UnknownElement, "subset id " + std::to_string(w));
  }

  std::vector<QfType> out;
  const std::size_t k = base.size();
  std::vector<int> choice(k, 0);  // 0 neither, 1 in gt, 2 in lt
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == k) {
      std::vector<ElementId> gt, lt;
      for (std::size_t j = 0; j < k; ++j) {
        if (choice[j] == 1) gt.push_back(base[j]);
        if (choice[j] == 2) lt.push_back(base[j]);
      }
      if (realizable(a, base, gt, lt)) {
        QfType t;
        t.base = base;
        t.gt = std::move(gt);
        t.lt = std::move(lt);
        out.push_back(std::move(t));
      }
      return;
    }
    for (int v : {0, 1, 2}) {
      choice[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

namespace {

bool type_realized(const Poset& p, const QfType& t) {
  for (ElementId w : p.elements()) {
    QfType have = qf_type(w, t.base, p);
    if (have.eq.empty() && have.gt == t.gt && have.lt == t.lt) return true;
  }
  return false;
}

std::vector<std::vector<ElementId>> subsets_up_to(const std::vector<ElementId>& els, int k) {
  std::vector<std::vector<ElementId>> out;
  std::vector<ElementId> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (static_cast<int>(cur.size()) <= k) out.push_back(cur);
    if (i == els.size() || static_cast<int>(cur.size()) == k) return;
    for (std::size_t j = i; j < els.size(); ++j) {
      cur.push_back(els[j]);
      rec(j + 1);
      cur.pop_back();
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Poset saturate(const Poset& a, int k, const SaturateOptions& options) {
  if (k < 1) throw Error(ErrorKind::PreconditionViolation, "level must be at least 1");
  k = std::min(k, a.size());
  Poset current = a;
  for (const auto& subset : subsets_up_to(a.elements(), k)) {
    for (const QfType& t : one_point_types(a, subset)) {
      if (type_realized(current, t)) continue;
      if (current.size() + 1 > options.max_elements) {
        throw Error(ErrorKind::SizeCap, "saturation exceeds the carrier cap");
      }
      std::vector<ElementId> under, over;
      for (ElementId g : t.gt) {
        under.push_back(g);
        for (ElementId w : current.down_set(g)) under.push_back(w);
      }
      for (ElementId l : t.lt) {
        over.push_back(l);
        for (ElementId w : current.up_set(l)) over.push_back(w);
      }
      current = current.with_element(current.fresh_id(), under, over);
    }
  }
  return current;
}

PaPair random_pa_extension(const PaPair& p, int steps, std::uint64_t seed,
                           const RandomExtensionOptions& options) {
  Rng rng(seed);
  PaPair current = p;
  int new_points = 0;

  for (int step = 0; step < steps; ++step) {
    int move = static_cast<int>(rng.below(3));
    if (move == 0) {
      // add a point with a random realizable type
      if (current.poset.size() >= options.max_elements) continue;
      if (options.max_new_points >= 0 && new_points >= options.max_new_points) continue;
      auto placements = enumerate_placements(current.poset, {});
      if (placements.empty()) continue;
      const Placement& pl = rng.pick(placements);
      Poset grown = current.poset.with_element(current.poset.fresh_id(), pl.under, pl.over);
      current.poset = grown;
      current.f = current.f.on_extended_poset(grown);
      current.g = current.g.on_extended_poset(grown);
      ++new_points;
    } else {
      PartialAutomorphism& h = move == 1 ? current.f : current.g;
      std::vector<IdPair> candidates;
      for (ElementId cc : current.poset.elements()) {
        if (h.defined_on(cc)) continue;
        for (ElementId dd : current.poset.elements()) {
          if (h.preimage(dd)) continue;
          candidates.emplace_back(cc, dd);
        }
      }
      rng.shuffle(candidates);
      for (const auto& [cc, dd] : candidates) {
        try {
          h = extend_by_pair(h, cc, dd);
          break;
        } catch (const Error&) {
          continue;
        }
      }
    }
  }
  return current;
}

}  // namespace pamalg
