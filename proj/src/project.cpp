#include "rvt/project.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace rvt {

using nlohmann::json;

const Attribute* ClassDef::find_attr(const std::string& n) const {
  for (const auto& a : attributes)
    if (a.name == n) return &a;
  return nullptr;
}

const ClassDef* Signature::find_class(const std::string& n) const {
  for (const auto& c : classes)
    if (c.name == n) return &c;
  return nullptr;
}

std::vector<const ClassDef*> Signature::classes_with_attr(const std::string& n) const {
  std::vector<const ClassDef*> out;
  for (const auto& c : classes)
    if (c.find_attr(n)) out.push_back(&c);
  return out;
}

std::string category_name(Category c) {
  switch (c) {
    case Category::Definition: return "definition";
    case Category::Requirement: return "requirement";
    case Category::Scenario: return "scenario";
    case Category::Property: return "property";
  }
  return "?";
}

std::optional<Category> category_parse(const std::string& s) {
  if (s == "definition") return Category::Definition;
  if (s == "requirement") return Category::Requirement;
  if (s == "scenario") return Category::Scenario;
  if (s == "property") return Category::Property;
  return std::nullopt;
}

const Requirement* Project::find_requirement(const std::string& id) const {
  for (const auto& r : requirements)
    if (r.id == id) return &r;
  return nullptr;
}

std::vector<Diagnostic> validate_signature(const Signature& sig) {
  std::vector<Diagnostic> out;
  std::set<std::string> class_names;
  for (const auto& c : sig.classes) {
    if (!class_names.insert(c.name).second)
      out.push_back({"signature", {}, "duplicate class " + c.name});
    std::set<std::string> attr_names;
    for (const auto& a : c.attributes) {
      std::string where = c.name + "." + a.name;
      if (!attr_names.insert(a.name).second) out.push_back({where, {}, "duplicate attribute " + a.name});
      switch (a.type.kind) {
        case AttrKind::Enumeration: {
          if (a.type.symbols.empty()) out.push_back({where, {}, "empty enumeration"});
          std::set<std::string> syms(a.type.symbols.begin(), a.type.symbols.end());
          if (syms.size() != a.type.symbols.size())
            out.push_back({where, {}, "duplicate enumeration symbol"});
          break;
        }
        case AttrKind::Integer:
          if (a.type.lo > a.type.hi) out.push_back({where, {}, "empty integer range"});
          break;
        case AttrKind::Reference:
          if (!sig.find_class(a.type.target))
            out.push_back({where, {}, "reference to undeclared class " + a.type.target});
          break;
        default: break;
      }
      if (a.type.continuous && a.type.kind != AttrKind::Real)
        out.push_back({where, {}, "continuous kind requires a real attribute"});
    }
  }
  return out;
}

namespace {

AttrType parse_attr_type(const json& j, const std::string& where) {
  AttrType t;
  if (!j.is_object() || !j.contains("kind")) throw Error(where + ": attribute type must carry a kind");
  std::string k = j.at("kind").get<std::string>();
  if (k == "boolean") {
    t.kind = AttrKind::Boolean;
  } else if (k == "enumeration") {
    t.kind = AttrKind::Enumeration;
    if (!j.contains("symbols")) throw Error(where + ": enumeration needs symbols");
    for (const auto& s : j.at("symbols")) t.symbols.push_back(s.get<std::string>());
  } else if (k == "integer") {
    t.kind = AttrKind::Integer;
    if (!j.contains("range") || !j.at("range").is_array() || j.at("range").size() != 2)
      throw Error(where + ": integer attributes need an inclusive range [lo, hi]");
    t.lo = j.at("range")[0].get<long>();
    t.hi = j.at("range")[1].get<long>();
  } else if (k == "real") {
    t.kind = AttrKind::Real;
    t.continuous = j.value("continuous", false);
  } else if (k == "reference") {
    t.kind = AttrKind::Reference;
    if (!j.contains("target")) throw Error(where + ": reference needs a target class");
    t.target = j.at("target").get<std::string>();
    t.nullable = j.value("nullable", false);
  } else {
    throw Error(where + ": invalid attribute kind '" + k + "'");
  }
  // "continuous" is only meaningful on reals; reject it elsewhere at load time
  if (j.value("continuous", false) && k != "real")
    throw Error(where + ": continuous kind requires a real attribute");
  return t;
}

json attr_type_json(const AttrType& t) {
  json j;
  switch (t.kind) {
    case AttrKind::Boolean: j["kind"] = "boolean"; break;
    case AttrKind::Enumeration:
      j["kind"] = "enumeration";
      j["symbols"] = t.symbols;
      break;
    case AttrKind::Integer:
      j["kind"] = "integer";
      j["range"] = {t.lo, t.hi};
      break;
    case AttrKind::Real:
      j["kind"] = "real";
      j["continuous"] = t.continuous;
      break;
    case AttrKind::Reference:
      j["kind"] = "reference";
      j["target"] = t.target;
      j["nullable"] = t.nullable;
      break;
  }
  return j;
}

}  // namespace

Project parse_project_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(std::string("malformed project file: ") + e.what());
  }
  if (!j.is_object()) throw Error("project file must be a JSON object");

  Project p;
  for (const auto& jc : j.value("signature", json::object()).value("classes", json::array())) {
    ClassDef c;
    c.name = jc.at("name").get<std::string>();
    for (const auto& ja : jc.value("attributes", json::array())) {
      Attribute a;
      a.name = ja.at("name").get<std::string>();
      a.type = parse_attr_type(ja.at("type"), c.name + "." + a.name);
      c.attributes.push_back(std::move(a));
    }
    p.signature.classes.push_back(std::move(c));
  }

  auto diags = validate_signature(p.signature);
  if (!diags.empty()) throw Error("invalid signature: " + diags.front().str());

  std::set<std::string> ids;
  for (const auto& jr : j.value("requirements", json::array())) {
    Requirement r;
    r.id = jr.at("id").get<std::string>();
    if (!ids.insert(r.id).second) throw Error("duplicate id " + r.id);
    r.text = jr.value("text", "");
    auto cat = category_parse(jr.value("category", "requirement"));
    if (!cat) throw Error(r.id + ": unknown category '" + jr.value("category", "") + "'");
    r.category = *cat;
    for (const auto& s : jr.value("constraints", json::array())) r.constraints.push_back(s.get<std::string>());
    if (r.category == Category::Definition && !r.constraints.empty())
      throw Error(r.id + ": definition fragments are glossary-only and may not carry constraints");
    for (const auto& s : jr.value("links", json::array())) r.links.push_back(s.get<std::string>());
    p.requirements.push_back(std::move(r));
  }
  for (const auto& r : p.requirements)
    for (const auto& l : r.links)
      if (!ids.count(l)) throw Error("dangling link " + l);

  for (auto it = j.value("bounds", json::object()).begin(); it != j.value("bounds", json::object()).end();
       ++it) {
    long n = it.value().get<long>();
    if (n < 1) throw Error("bound for " + it.key() + " must be >= 1");
    if (!p.signature.find_class(it.key())) throw Error("bound for undeclared class " + it.key());
    p.bounds[it.key()] = n;
  }
  return p;
}

Project load_project(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_project_text(ss.str());
}

std::string write_project(const Project& p) {
  json j;
  json classes = json::array();
  for (const auto& c : p.signature.classes) {
    json jc;
    jc["name"] = c.name;
    json attrs = json::array();
    for (const auto& a : c.attributes) attrs.push_back({{"name", a.name}, {"type", attr_type_json(a.type)}});
    jc["attributes"] = attrs;
    classes.push_back(jc);
  }
  j["signature"] = {{"classes", classes}};
  json reqs = json::array();
  for (const auto& r : p.requirements) {
    json jr;
    jr["id"] = r.id;
    jr["text"] = r.text;
    jr["category"] = category_name(r.category);
    jr["constraints"] = r.constraints;
    jr["links"] = r.links;
    reqs.push_back(jr);
  }
  j["requirements"] = reqs;
  json bounds = json::object();
  for (const auto& [k, v] : p.bounds) bounds[k] = v;
  j["bounds"] = bounds;
  return j.dump(2) + "\n";
}

std::vector<Requirement> requirements_for(const Project& p, const std::set<std::string>& ids) {
  for (const auto& id : ids)
    if (!p.find_requirement(id)) throw Error("unknown requirement id " + id);
  std::vector<Requirement> out;
  for (const auto& r : p.requirements)
    if (ids.count(r.id)) out.push_back(r);
  return out;
}

}  // namespace rvt
