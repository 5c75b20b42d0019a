#pragma once

#include <cstdint>
#include <optional>

#include "pamalg/partial_auto.hpp"

namespace pamalg {

struct JepResult {
  PaPair joined;
  PaEmbedding left;
  PaEmbedding right;
};

// Joint embedding: disjoint union with everything from the left pair below
// everything from the right pair; f and g are the unions. Carriers are
// renamed apart (left keeps 0..n1-1, right follows).
JepResult jep_join(const PaPair& p1, const PaPair& p2);

struct Amalgam {
  PaPair d;
  PaEmbedding from_left;   // B -> D
  PaEmbedding from_right;  // C -> D
};

enum class AmalgamOutcome : std::uint8_t { Found, Refuted, ResourceLimit };

struct AmalgamResult {
  AmalgamOutcome outcome = AmalgamOutcome::Refuted;
  std::optional<Amalgam> amalgam;
  std::uint64_t nodes = 0;
};

struct AmalgamOptions {
  std::uint64_t max_nodes = 10'000'000;
};

// Complete decision procedure for amalgamation of B and C over A along the
// given embeddings. Search space: quotients of B ⊔_A C (any amalgam
// restricted to the union of the images is one, and f_D = f_B ∪ f_C
// suffices), i.e. partial matchings between B\A and C\A closed under
// functional propagation, then a cross-relation CSP with {<,>,⊥} values,
// propagating transitivity and the order-isomorphism constraints of the
// union maps. Refuted is returned only after exhaustive refutation;
// exceeding the node budget yields ResourceLimit instead. Deterministic.
AmalgamResult amalgam_exists(const PaPair& a, const PaPair& b, const PaPair& c,
                             const PaEmbedding& emb_b, const PaEmbedding& emb_c,
                             const AmalgamOptions& options = {});

// Certificate checker for Found results: both maps are pa-embeddings and the
// square over A commutes.
bool verify_amalgam(const PaPair& a, const PaPair& b, const PaPair& c, const PaPair& d,
                    const PaEmbedding& emb_b, const PaEmbedding& emb_c,
                    const PaEmbedding& emb_bd, const PaEmbedding& emb_cd);

}  // namespace pamalg
