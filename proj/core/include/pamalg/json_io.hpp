#pragma once

#include <string>

#include "pamalg/lemma1.hpp"
#include "pamalg/partial_auto.hpp"
#include "pamalg/witness.hpp"

namespace pamalg {

// JSON schemas (field names are part of the tool contract):
//   Poset        {"elements":[ids], "lt":[[a,b],...], "labels":{"id":"name",...}}
//                lt may be any generating relation; the reader closes it.
//   PaPair       {"poset":Poset, "f":[[a,b],...], "g":[[a,b],...]}
//   Word         [["F",s],["G",t],...]  outermost factor first
//   Certificate  {"base":PaPair, "pair1":PaPair, "pair2":PaPair,
//                 "embedding1":[[a,b],...], "embedding2":[[a,b],...],
//                 "w1":Word, "w2":Word, "start":id,
//                 "relation_in_1":rel, "relation_in_2":rel, "meta":{...}}
//                rel in {"equal","less","greater","incomparable"}
// Readers throw Error(InputError) with parser line/column diagnostics on
// malformed input.

std::string to_json(const Poset& p, int indent = 2);
Poset poset_from_json(const std::string& text);

std::string to_json(const PaPair& pair, int indent = 2);
PaPair pa_pair_from_json(const std::string& text);

std::string to_json(const ObstructionCertificate& cert, int indent = 2);
ObstructionCertificate certificate_from_json(const std::string& text);

std::string to_json(const Lemma1Trace& trace, int indent = 2);

std::string to_json(const WitnessMeta& meta, int indent = 2);

}  // namespace pamalg
