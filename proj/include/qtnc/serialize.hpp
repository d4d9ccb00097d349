#pragma once

// JSON documents:
//   NSet      {"fin":[0,1]} | {"cofin":[2]}
//   Obj       {"members":[<NSet>, ...]}            (normalized on load)
//   VObj      {"vkind":"wc","x":<Obj>,"y":<Obj>} | {"vkind":"utilde"}
//             {"vkind":"uprod","x":<Obj>}
//             {"vkind":"exp","b":<Obj>,"c":<Obj>}
//             {"vkind":"exp_slice","a":<Obj>,"b":<Obj>,"c":<Obj>}
//             {"vkind":"wexp","a":<Obj>,"b":<Obj>,"c":<Obj>}

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "qtnc/errors.hpp"
#include "qtnc/vobj.hpp"

namespace qtnc {

using json = nlohmann::ordered_json;

inline json to_json(const NSet& s) {
  json members = json::array();
  for (natural n : s.support()) members.push_back(n);
  json out = json::object();
  out[s.is_finite() ? "fin" : "cofin"] = std::move(members);
  return out;
}

template <nset_family R>
json to_json(const R& family) {
  json members = json::array();
  for (const NSet& m : family) members.push_back(to_json(m));
  return json{{"members", std::move(members)}};
}

inline json to_json(const VObj& v) {
  struct visitor {
    json operator()(const Wc& w) const {
      return {{"vkind", "wc"}, {"x", to_json(w.source)}, {"y", to_json(w.target)}};
    }
    json operator()(const UTilde&) const { return {{"vkind", "utilde"}}; }
    json operator()(const UProd& u) const { return {{"vkind", "uprod"}, {"x", to_json(u.base)}}; }
    json operator()(const Exp& e) const {
      return {{"vkind", "exp"}, {"b", to_json(e.b)}, {"c", to_json(e.c)}};
    }
    json operator()(const ExpSlice& e) const {
      return {{"vkind", "exp_slice"}, {"a", to_json(e.a)}, {"b", to_json(e.b)}, {"c", to_json(e.c)}};
    }
    json operator()(const Wexp& e) const {
      return {{"vkind", "wexp"}, {"a", to_json(e.a)}, {"b", to_json(e.b)}, {"c", to_json(e.c)}};
    }
  };
  return std::visit(visitor{}, v.repr());
}

inline json to_json(const Endpoint& e) {
  if (const auto* o = std::get_if<Obj>(&e)) return to_json(*o);
  return to_json(std::get<VObj>(e));
}

inline json to_json(const LabelVerdict& v) {
  return {{"arrow", v.arrow}, {"star", v.star}, {"w", v.w}, {"f", v.f}, {"c", v.c}};
}

inline json to_json(const PartialVerdict& v) {
  auto field = [](const std::optional<bool>& b) { return b ? json(*b) : json(nullptr); };
  json out = {{"arrow", field(v.arrow)}, {"star", field(v.star)}, {"w", field(v.w)},
              {"f", field(v.f)},         {"c", field(v.c)}};
  if (!v.undecided.empty()) out["undecided"] = v.undecided;
  return out;
}

namespace detail {

inline std::vector<natural> naturals(const json& j, std::string_view where) {
  if (!j.is_array()) throw parse_error(std::string(where) + ": expected an array of naturals");
  std::vector<natural> out;
  for (const auto& n : j) {
    if (!n.is_number_unsigned())
      throw parse_error(std::string(where) + ": elements must be non-negative integers");
    out.push_back(n.get<natural>());
  }
  return out;
}

inline const json& field(const json& j, const char* key, std::string_view what) {
  if (!j.is_object() || !j.contains(key))
    throw parse_error(std::string(what) + ": missing \"" + key + "\"");
  return j.at(key);
}

}  // namespace detail

inline NSet nset_from_json(const json& j) {
  if (!j.is_object() || j.size() != 1)
    throw parse_error("NSet: expected {\"fin\":[...]} or {\"cofin\":[...]}");
  if (j.contains("fin")) return NSet::finite(detail::naturals(j.at("fin"), "fin"));
  if (j.contains("cofin")) return NSet::cofinite(detail::naturals(j.at("cofin"), "cofin"));
  throw parse_error("NSet: expected key \"fin\" or \"cofin\"");
}

inline Family family_from_json(const json& j) {
  const json& members = detail::field(j, "members", "object");
  if (!members.is_array()) throw parse_error("object: \"members\" must be an array");
  Family out;
  for (const auto& m : members) out.push_back(nset_from_json(m));
  return out;
}

inline Obj obj_from_json(const json& j) { return normalize(family_from_json(j)); }

inline VObj vobj_from_json(const json& j) {
  const json& kind_field = detail::field(j, "vkind", "virtual object");
  if (!kind_field.is_string()) throw parse_error("virtual object: \"vkind\" must be a string");
  const auto kind = kind_field.get<std::string>();
  auto obj = [&j, &kind](const char* key) {
    return obj_from_json(detail::field(j, key, kind));
  };
  try {
    if (kind == "wc") return VObj::wc(obj("x"), obj("y"));
    if (kind == "utilde") return VObj::utilde();
    if (kind == "uprod") return VObj::uprod(obj("x"));
    if (kind == "exp") return VObj::exp(obj("b"), obj("c"));
    if (kind == "exp_slice") return VObj::exp_slice(obj("a"), obj("b"), obj("c"));
    if (kind == "wexp") return VObj::wexp(obj("a"), obj("b"), obj("c"));
  } catch (const precondition_error& e) {
    throw parse_error(std::string("virtual object: ") + e.what());
  }
  throw parse_error("virtual object: unknown vkind \"" + kind + "\"");
}

inline Endpoint endpoint_from_json(const json& j) {
  if (j.is_object() && j.contains("vkind")) return vobj_from_json(j);
  return obj_from_json(j);
}

inline json parse_document(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw parse_error(std::string("invalid JSON: ") + e.what());
  }
}

/// Accepts an inline JSON literal (first non-blank character '{') or a path.
inline json load_document(const std::string& literal_or_path) {
  const auto first = literal_or_path.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && literal_or_path[first] == '{')
    return parse_document(literal_or_path);
  std::ifstream in(literal_or_path);
  if (!in) throw parse_error("cannot read \"" + literal_or_path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str());
}

}  // namespace qtnc
