#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pamalg/lemma1.hpp"
#include "pamalg/partial_auto.hpp"

namespace pamalg {

// The 3-chain x < y < z with f = {(x,y),(z,z)} and g = {(x,z)}.
PaPair base_pair();

// Named points of the witness construction.
struct WitnessMeta {
  ElementId a_f = -1, b_f = -1, c = -1;
  int n = 0;
  ElementId a_g = -1, b_g = -1;
  int m = 0;
  std::vector<ElementId> d;  // d_0 .. d_m
  std::optional<ElementId> e;  // the fresh point of the second extension
};

struct A0Result {
  PaPair a0;
  WitnessMeta meta;
  Lemma1Trace f_trace;
  Lemma1Trace g_trace;
};

// Builds the common extension A0 of atilde: Lemma 1 on the f-side at s = x,
// insertion of c inside (a_f, b_f), Lemma 1 on a minimal g-side extension at
// s = c, the twin points d_0..d_m, f_0 = f_B ∪ {(a_f,c),(c,d_0)} and
// g_0 = g_C ∪ {(d_0,d_1),...,(d_{m-1},d_m)}. Requires atilde to extend the
// base pair. Postconditions b_f < z and f_0^n(x) < z are asserted.
A0Result build_A0(const PaPair& atilde, const Lemma1Options& options = {});

// Two extensions of A0 that cannot be amalgamated over the base pair: both
// define f at a_g, the first mapping it to the free partner b_g (above the
// twin d_m), the second to a fresh point e whose relation to d_m differs.
PaPair build_A1(const A0Result& a0);
PaPair build_A2(A0Result& a0);  // records e into the meta

enum class Generator : std::uint8_t { F, G };

// Composition word in f and g, stored outermost-first: {(G,t),(F,s)} is
// g^t ∘ f^s and applies the f-part first.
struct Word {
  std::vector<std::pair<Generator, int>> factors;
  bool operator==(const Word&) const = default;
  std::string to_string() const;
};

std::optional<ElementId> eval_word(const PaPair& pair, const Word& w, ElementId start);

// Two word evaluations starting at x whose relations in the two extensions
// are distinct, refuting any amalgam over the base: the evaluated points are
// forced to be identified pairwise, and a pair of points has exactly one
// relation.
struct ObstructionCertificate {
  PaPair base;
  PaPair pair1;
  PaPair pair2;
  std::vector<IdPair> embedding1;  // base -> pair1
  std::vector<IdPair> embedding2;  // base -> pair2
  Word w1;
  Word w2;
  ElementId start = -1;
  Rel relation_in_1 = Rel::Equal;
  Rel relation_in_2 = Rel::Equal;
  WitnessMeta meta;
};

// Assembles and verifies the certificate for the outputs of build_A1/A2.
// Throws CertificateInvalid naming the failing clause.
ObstructionCertificate make_certificate(const A0Result& a0, const PaPair& a1, const PaPair& a2);

struct CertificateCheck {
  bool valid = false;
  std::string failure;  // empty when valid
};

// Re-checks a certificate from its embedded data only.
CertificateCheck check_certificate(const ObstructionCertificate& cert);

// Human-readable account of the obstruction.
std::string describe_certificate(const ObstructionCertificate& cert);

}  // namespace pamalg
