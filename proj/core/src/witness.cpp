#include "pamalg/witness.hpp"

#include <algorithm>
#include <sstream>

namespace pamalg {

PaPair base_pair() {
  Poset p = Poset::make({0, 1, 2}, {{0, 1}, {1, 2}}, {{0, "x"}, {1, "y"}, {2, "z"}});
  return make_pa_pair(p, {{0, 1}, {2, 2}}, {{0, 2}});
}

namespace {

constexpr ElementId kX = 0;
constexpr ElementId kZ = 2;

}  // namespace

A0Result build_A0(const PaPair& atilde, const Lemma1Options& options) {
  if (!is_pa_extension(base_pair(), atilde)) {
    throw Error(ErrorKind::PreconditionViolation, "input does not extend the canonical pair");
  }

  A0Result out;

  // f-side free interval at the orbit of x.
  out.f_trace = lemma1_extend(atilde.f, kX, options);
  const PartialAutomorphism& f_b = out.f_trace.result;
  out.meta.a_f = out.f_trace.a;
  out.meta.b_f = out.f_trace.b;
  out.meta.n = out.f_trace.n;

  // c strictly inside (a_f, b_f); the twin placement realizes the forced type.
  ElementId c = f_b.poset().fresh_id();
  Poset carrier = f_b.poset().with_twin_above(out.meta.a_f, c, "c");
  out.meta.c = c;

  // g-side: minimal extension defining g at c, then the free interval at
  // the orbit of c. x < c < z forces c below its g-image.
  PartialAutomorphism g_start = atilde.g.on_extended_poset(carrier);
  PartialAutomorphism g_e = extend_by_fresh_target(g_start, c);
  out.g_trace = lemma1_extend(g_e, c, options);
  const PartialAutomorphism& g_c = out.g_trace.result;
  carrier = g_c.poset();
  out.meta.a_g = out.g_trace.a;
  out.meta.b_g = out.g_trace.b;
  out.meta.m = out.g_trace.n;

  Orbit c_orbit = orbit(g_c, c);
  if (static_cast<int>(c_orbit.points.size()) != out.meta.m + 1 ||
      c_orbit.points.back() != out.meta.a_g) {
    throw Error(ErrorKind::InternalInvariantBroken, "g-side orbit does not end at a_g");
  }

  // Twin d_i above each orbit point c_i, outside dom(g_C).
  out.meta.d.clear();
  for (int i = 0; i <= out.meta.m; ++i) {
    ElementId di = carrier.fresh_id();
    carrier = carrier.with_twin_above(c_orbit.points[static_cast<std::size_t>(i)], di,
                                      "d" + std::to_string(i));
    out.meta.d.push_back(di);
  }

  // f_0 = f_B ∪ {(a_f,c),(c,d_0)}, g_0 = g_C ∪ {(d_0,d_1),...,(d_{m-1},d_m)}.
  std::vector<IdPair> f0 = f_b.graph();
  f0.emplace_back(out.meta.a_f, c);
  f0.emplace_back(c, out.meta.d[0]);
  std::vector<IdPair> g0 = g_c.graph();
  for (int i = 0; i < out.meta.m; ++i) {
    g0.emplace_back(out.meta.d[static_cast<std::size_t>(i)],
                    out.meta.d[static_cast<std::size_t>(i) + 1]);
  }
  out.a0.poset = carrier;
  out.a0.f = validate_pa(carrier, std::move(f0));
  out.a0.g = validate_pa(carrier, std::move(g0));

  if (!carrier.less(out.meta.b_f, kZ)) {
    throw Error(ErrorKind::InternalInvariantBroken, "b_f is not below z");
  }
  Orbit x_orbit = orbit(out.a0.f, kX);
  if (static_cast<int>(x_orbit.points.size()) <= out.meta.n ||
      x_orbit.points[static_cast<std::size_t>(out.meta.n)] != out.meta.a_f ||
      !carrier.less(out.meta.a_f, kZ)) {
    throw Error(ErrorKind::InternalInvariantBroken, "f_0-orbit of x misses a_f below z");
  }
  if (!is_pa_extension(atilde, out.a0)) {
    throw Error(ErrorKind::InternalInvariantBroken, "A_0 does not extend the input");
  }
  return out;
}

namespace {

// Both extensions define f at a_g; their targets relate differently to the
// twin d_m, which both pairs reach by the same word. a_g is fresh to f_0 on
// both sides, so the only forced relations of the target are the
// pushforward of a_g's type over rng(f_0).
PaPair extend_f_at_ag(const A0Result& a0, Rel wanted_to_dm, ElementId* new_point) {
  const PaPair& base = a0.a0;
  ElementId a_g = a0.meta.a_g;
  ElementId d_m = a0.meta.d.back();
  if (base.f.defined_on(a_g) || base.f.preimage(a_g)) {
    throw Error(ErrorKind::InternalInvariantBroken, "a_g is not fresh to f_0");
  }

  if (wanted_to_dm == Rel::Greater) {
    // The free partner b_g already sits above d_m with the right type.
    ElementId b_g = a0.meta.b_g;
    std::vector<IdPair> f1 = base.f.graph();
    f1.emplace_back(a_g, b_g);
    if (base.poset.relation(b_g, d_m) == Rel::Greater && !check_pa(base.poset, f1)) {
      PaPair out;
      out.poset = base.poset;
      out.f = validate_pa(base.poset, f1);
      out.g = base.g;
      if (new_point) *new_point = -1;
      return out;
    }
  }

  PointRel constraint = wanted_to_dm == Rel::Greater  ? PointRel::Above
                         : wanted_to_dm == Rel::Less ? PointRel::Below
                                                      : PointRel::Incomp;
  auto forced = pushforward_constraints(base.f, a_g);
  forced.emplace_back(d_m, constraint);
  auto placements = enumerate_placements(base.poset, forced, 1);
  if (placements.empty()) {
    throw Error(ErrorKind::InternalInvariantBroken,
                "no placement with relation " + std::string(to_string(wanted_to_dm)) +
                    " to the top twin");
  }
  ElementId fresh = base.poset.fresh_id();
  Poset grown = base.poset.with_element(fresh, placements[0].under, placements[0].over, "e");
  std::vector<IdPair> f2 = base.f.graph();
  f2.emplace_back(a_g, fresh);
  PaPair out;
  out.poset = grown;
  out.f = validate_pa(grown, f2);
  out.g = base.g.on_extended_poset(grown);
  if (new_point) *new_point = fresh;
  return out;
}

}  // namespace

PaPair build_A1(const A0Result& a0) {
  PaPair a1 = extend_f_at_ag(a0, Rel::Greater, nullptr);
  if (!is_pa_extension(a0.a0, a1)) {
    throw Error(ErrorKind::InternalInvariantBroken, "A_1 does not extend A_0");
  }
  return a1;
}

PaPair build_A2(A0Result& a0) {
  ElementId e = -1;
  PaPair a2;
  try {
    a2 = extend_f_at_ag(a0, Rel::Incomparable, &e);
  } catch (const Error&) {
    a2 = extend_f_at_ag(a0, Rel::Less, &e);
  }
  if (!is_pa_extension(a0.a0, a2)) {
    throw Error(ErrorKind::InternalInvariantBroken, "A_2 does not extend A_0");
  }
  if (e >= 0) a0.meta.e = e;
  return a2;
}

std::string Word::to_string() const {
  std::string s;
  for (const auto& [gen, exp] : factors) {
    s += gen == Generator::F ? "F" : "G";
    s += "^" + std::to_string(exp);
    s += " ";
  }
  if (!s.empty()) s.pop_back();
  return s;
}

std::optional<ElementId> eval_word(const PaPair& pair, const Word& w, ElementId start) {
  if (!pair.poset.contains(start)) {
    throw Error(ErrorKind::UnknownElement, "start point " + std::to_string(start));
  }
  ElementId current = start;
  for (auto it = w.factors.rbegin(); it != w.factors.rend(); ++it) {
    const auto& [gen, exp] = *it;
    if (exp < 0) throw Error(ErrorKind::InputError, "negative exponent");
    const PartialAutomorphism& h = gen == Generator::F ? pair.f : pair.g;
    for (int i = 0; i < exp; ++i) {
      auto next = h.apply(current);
      if (!next) return std::nullopt;
      current = *next;
    }
  }
  return current;
}

ObstructionCertificate make_certificate(const A0Result& a0, const PaPair& a1, const PaPair& a2) {
  ObstructionCertificate cert;
  cert.base = base_pair();
  cert.pair1 = a1;
  cert.pair2 = a2;
  for (ElementId a : cert.base.poset.elements()) {
    cert.embedding1.emplace_back(a, a);
    cert.embedding2.emplace_back(a, a);
  }
  cert.meta = a0.meta;
  cert.start = kX;
  cert.w1 = Word{{{Generator::F, 1}, {Generator::G, a0.meta.m}, {Generator::F, a0.meta.n + 1}}};
  cert.w2 = Word{{{Generator::G, a0.meta.m}, {Generator::F, a0.meta.n + 2}}};

  auto v11 = eval_word(a1, cert.w1, kX);
  auto v21 = eval_word(a1, cert.w2, kX);
  auto v12 = eval_word(a2, cert.w1, kX);
  auto v22 = eval_word(a2, cert.w2, kX);
  if (!v11 || !v21 || !v12 || !v22) {
    throw Error(ErrorKind::CertificateInvalid, "a word evaluation is undefined");
  }
  cert.relation_in_1 = a1.poset.relation(*v11, *v21);
  cert.relation_in_2 = a2.poset.relation(*v12, *v22);

  CertificateCheck check = check_certificate(cert);
  if (!check.valid) {
    throw Error(ErrorKind::CertificateInvalid, check.failure);
  }
  return cert;
}

CertificateCheck check_certificate(const ObstructionCertificate& cert) {
  auto fail = [](const std::string& why) { return CertificateCheck{false, why}; };

  if (!is_pa_embedding(cert.base, cert.pair1, cert.embedding1)) {
    return fail("first embedding does not embed the base");
  }
  if (!is_pa_embedding(cert.base, cert.pair2, cert.embedding2)) {
    return fail("second embedding does not embed the base");
  }
  if (!cert.base.poset.contains(cert.start)) return fail("start point is not in the base");

  Embedding e1{cert.base.poset, cert.pair1.poset, cert.embedding1};
  Embedding e2{cert.base.poset, cert.pair2.poset, cert.embedding2};
  ElementId s1 = e1.apply(cert.start);
  ElementId s2 = e2.apply(cert.start);

  auto v11 = eval_word(cert.pair1, cert.w1, s1);
  auto v21 = eval_word(cert.pair1, cert.w2, s1);
  auto v12 = eval_word(cert.pair2, cert.w1, s2);
  auto v22 = eval_word(cert.pair2, cert.w2, s2);
  if (!v11 || !v21) return fail("a word evaluation is undefined in the first extension");
  if (!v12 || !v22) return fail("a word evaluation is undefined in the second extension");

  if (cert.pair1.poset.relation(*v11, *v21) != cert.relation_in_1) {
    return fail("stored relation for the first extension does not match the evaluation");
  }
  if (cert.pair2.poset.relation(*v12, *v22) != cert.relation_in_2) {
    return fail("stored relation for the second extension does not match the evaluation");
  }
  if (cert.relation_in_1 == cert.relation_in_2) {
    return fail("the two extensions agree on the word relation; no obstruction");
  }
  return CertificateCheck{true, {}};
}

std::string describe_certificate(const ObstructionCertificate& cert) {
  std::ostringstream os;
  Embedding e1{cert.base.poset, cert.pair1.poset, cert.embedding1};
  Embedding e2{cert.base.poset, cert.pair2.poset, cert.embedding2};
  ElementId s1 = e1.apply(cert.start);
  ElementId s2 = e2.apply(cert.start);
  auto v11 = eval_word(cert.pair1, cert.w1, s1);
  auto v21 = eval_word(cert.pair1, cert.w2, s1);
  auto v12 = eval_word(cert.pair2, cert.w1, s2);
  auto v22 = eval_word(cert.pair2, cert.w2, s2);

  os << "Obstruction to amalgamation over the base pair.\n";
  os << "Both extensions share the common structure; in any amalgam over the base,\n"
     << "the evaluation of a fixed word in f and g starting at "
     << cert.base.poset.label(cert.start)
     << " is identified across the two extensions whenever defined on both sides.\n\n";
  os << "w1 = " << cert.w1.to_string() << "\n";
  os << "w2 = " << cert.w2.to_string() << "\n\n";
  os << "In the first extension:  w1(x) = " << cert.pair1.poset.label(*v11) << ", w2(x) = "
     << cert.pair1.poset.label(*v21) << ", relation " << to_string(cert.relation_in_1) << "\n";
  os << "In the second extension: w1(x) = " << cert.pair2.poset.label(*v12) << ", w2(x) = "
     << cert.pair2.poset.label(*v22) << ", relation " << to_string(cert.relation_in_2) << "\n\n";
  os << "A pair of identified points carries exactly one relation, so the two\n"
     << "extensions cannot be amalgamated over the base pair.\n";
  return os.str();
}

}  // namespace pamalg
