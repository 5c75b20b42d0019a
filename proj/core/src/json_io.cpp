#include "pamalg/json_io.hpp"

#include <functional>

#include <json.hpp>

namespace pamalg {

using nlohmann::json;

namespace {

json poset_to_obj(const Poset& p) {
  json obj;
  obj["elements"] = p.elements();
  json lt = json::array();
  // the generating relation is enough; emit the reduction for compactness
  for (const auto& [a, b] : p.cover_pairs()) lt.push_back({a, b});
  obj["lt"] = lt;
  if (!p.labels().empty()) {
    json labels = json::object();
    for (const auto& [id, name] : p.labels()) labels[std::to_string(id)] = name;
    obj["labels"] = labels;
  }
  return obj;
}

Poset poset_from_obj(const json& obj) {
  if (!obj.is_object() || !obj.contains("elements") || !obj.contains("lt")) {
    throw Error(ErrorKind::InputError, "poset object needs 'elements' and 'lt'");
  }
  std::vector<ElementId> elements = obj.at("elements").get<std::vector<ElementId>>();
  std::vector<IdPair> lt;
  for (const auto& pair : obj.at("lt")) {
    if (!pair.is_array() || pair.size() != 2) {
      throw Error(ErrorKind::InputError, "'lt' entries must be pairs");
    }
    lt.emplace_back(pair[0].get<ElementId>(), pair[1].get<ElementId>());
  }
  std::map<ElementId, std::string> labels;
  if (obj.contains("labels")) {
    for (const auto& [key, value] : obj.at("labels").items()) {
      labels[static_cast<ElementId>(std::stol(key))] = value.get<std::string>();
    }
  }
  return Poset::make(std::move(elements), lt, std::move(labels));
}

json pairs_to_obj(const std::vector<IdPair>& pairs) {
  json arr = json::array();
  for (const auto& [a, b] : pairs) arr.push_back({a, b});
  return arr;
}

std::vector<IdPair> pairs_from_obj(const json& arr, const char* what) {
  if (!arr.is_array()) throw Error(ErrorKind::InputError, std::string(what) + " must be an array");
  std::vector<IdPair> out;
  for (const auto& pair : arr) {
    if (!pair.is_array() || pair.size() != 2) {
      throw Error(ErrorKind::InputError, std::string(what) + " entries must be pairs");
    }
    out.emplace_back(pair[0].get<ElementId>(), pair[1].get<ElementId>());
  }
  return out;
}

json pa_pair_to_obj(const PaPair& pair) {
  json obj;
  obj["poset"] = poset_to_obj(pair.poset);
  obj["f"] = pairs_to_obj(pair.f.graph());
  obj["g"] = pairs_to_obj(pair.g.graph());
  return obj;
}

PaPair pa_pair_from_obj(const json& obj) {
  if (!obj.is_object() || !obj.contains("poset")) {
    throw Error(ErrorKind::InputError, "pair object needs 'poset', 'f' and 'g'");
  }
  Poset p = poset_from_obj(obj.at("poset"));
  std::vector<IdPair> f =
      obj.contains("f") ? pairs_from_obj(obj.at("f"), "f") : std::vector<IdPair>{};
  std::vector<IdPair> g =
      obj.contains("g") ? pairs_from_obj(obj.at("g"), "g") : std::vector<IdPair>{};
  return make_pa_pair(p, std::move(f), std::move(g));
}

json word_to_obj(const Word& w) {
  json arr = json::array();
  for (const auto& [gen, exp] : w.factors) {
    arr.push_back({gen == Generator::F ? "F" : "G", exp});
  }
  return arr;
}

Word word_from_obj(const json& arr) {
  Word w;
  for (const auto& factor : arr) {
    if (!factor.is_array() || factor.size() != 2 || !factor[0].is_string()) {
      throw Error(ErrorKind::InputError, "word factors are [\"F\"|\"G\", exponent]");
    }
    std::string gen = factor[0].get<std::string>();
    if (gen != "F" && gen != "G") throw Error(ErrorKind::InputError, "unknown generator " + gen);
    w.factors.emplace_back(gen == "F" ? Generator::F : Generator::G, factor[1].get<int>());
  }
  return w;
}

json rel_to_obj(Rel r) { return to_string(r); }

Rel rel_from_obj(const json& value) {
  std::string s = value.get<std::string>();
  if (s == "less") return Rel::Less;
  if (s == "greater") return Rel::Greater;
  if (s == "incomparable") return Rel::Incomparable;
  if (s == "equal") return Rel::Equal;
  throw Error(ErrorKind::InputError, "unknown relation " + s);
}

json meta_to_obj(const WitnessMeta& meta) {
  json obj;
  obj["a_f"] = meta.a_f;
  obj["b_f"] = meta.b_f;
  obj["c"] = meta.c;
  obj["n"] = meta.n;
  obj["a_g"] = meta.a_g;
  obj["b_g"] = meta.b_g;
  obj["m"] = meta.m;
  obj["d"] = meta.d;
  if (meta.e) {
    obj["e"] = *meta.e;
  } else {
    obj["e"] = nullptr;
  }
  return obj;
}

WitnessMeta meta_from_obj(const json& obj) {
  WitnessMeta meta;
  meta.a_f = obj.at("a_f").get<ElementId>();
  meta.b_f = obj.at("b_f").get<ElementId>();
  meta.c = obj.at("c").get<ElementId>();
  meta.n = obj.at("n").get<int>();
  meta.a_g = obj.at("a_g").get<ElementId>();
  meta.b_g = obj.at("b_g").get<ElementId>();
  meta.m = obj.at("m").get<int>();
  meta.d = obj.at("d").get<std::vector<ElementId>>();
  if (obj.contains("e") && !obj.at("e").is_null()) meta.e = obj.at("e").get<ElementId>();
  return meta;
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::InputError, e.what());
  }
}

template <typename T>
T guarded(const std::function<T(const json&)>& reader, const json& obj) {
  try {
    return reader(obj);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InputError, e.what());
  }
}

}  // namespace

std::string to_json(const Poset& p, int indent) { return poset_to_obj(p).dump(indent); }

Poset poset_from_json(const std::string& text) {
  return guarded<Poset>(poset_from_obj, parse_text(text));
}

std::string to_json(const PaPair& pair, int indent) { return pa_pair_to_obj(pair).dump(indent); }

PaPair pa_pair_from_json(const std::string& text) {
  return guarded<PaPair>(pa_pair_from_obj, parse_text(text));
}

std::string to_json(const ObstructionCertificate& cert, int indent) {
  json obj;
  obj["base"] = pa_pair_to_obj(cert.base);
  obj["pair1"] = pa_pair_to_obj(cert.pair1);
  obj["pair2"] = pa_pair_to_obj(cert.pair2);
  obj["embedding1"] = pairs_to_obj(cert.embedding1);
  obj["embedding2"] = pairs_to_obj(cert.embedding2);
  obj["w1"] = word_to_obj(cert.w1);
  obj["w2"] = word_to_obj(cert.w2);
  obj["start"] = cert.start;
  obj["relation_in_1"] = rel_to_obj(cert.relation_in_1);
  obj["relation_in_2"] = rel_to_obj(cert.relation_in_2);
  obj["meta"] = meta_to_obj(cert.meta);
  return obj.dump(indent);
}

ObstructionCertificate certificate_from_json(const std::string& text) {
  json obj = parse_text(text);
  return guarded<ObstructionCertificate>(
      [](const json& o) {
        ObstructionCertificate cert;
        cert.base = pa_pair_from_obj(o.at("base"));
        cert.pair1 = pa_pair_from_obj(o.at("pair1"));
        cert.pair2 = pa_pair_from_obj(o.at("pair2"));
        cert.embedding1 = pairs_from_obj(o.at("embedding1"), "embedding1");
        cert.embedding2 = pairs_from_obj(o.at("embedding2"), "embedding2");
        cert.w1 = word_from_obj(o.at("w1"));
        cert.w2 = word_from_obj(o.at("w2"));
        cert.start = o.at("start").get<ElementId>();
        cert.relation_in_1 = rel_from_obj(o.at("relation_in_1"));
        cert.relation_in_2 = rel_from_obj(o.at("relation_in_2"));
        cert.meta = meta_from_obj(o.at("meta"));
        return cert;
      },
      obj);
}

std::string to_json(const Lemma1Trace& trace, int indent) {
  json obj;
  obj["input"] = json{{"poset", poset_to_obj(trace.input.poset())},
                      {"map", pairs_to_obj(trace.input.graph())}};
  obj["s"] = trace.s;
  json stages = json::array();
  for (const StageRecord& stage : trace.stages) {
    stages.push_back(json{{"element", stage.element},
                          {"case", stage.case_used},
                          {"m", stage.m},
                          {"added_points", stage.added_points}});
  }
  obj["stages"] = stages;
  obj["n"] = trace.n;
  obj["a"] = trace.a;
  obj["b"] = trace.b;
  obj["result"] = json{{"poset", poset_to_obj(trace.result.poset())},
                       {"map", pairs_to_obj(trace.result.graph())}};
  return obj.dump(indent);
}

std::string to_json(const WitnessMeta& meta, int indent) { return meta_to_obj(meta).dump(indent); }

}  // namespace pamalg
