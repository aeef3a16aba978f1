// Project model: class-diagram signature, requirement fragments, bounds.
#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rvt/diagnostics.hpp"
#include "rvt/rational.hpp"

namespace rvt {

enum class AttrKind { Boolean, Enumeration, Integer, Real, Reference };

struct AttrType {
  AttrKind kind = AttrKind::Boolean;
  std::vector<std::string> symbols;  // Enumeration
  long lo = 0, hi = 0;               // Integer (inclusive); required at load
  bool continuous = false;           // Real
  std::string target;                // Reference
  bool nullable = false;             // Reference

  bool operator==(const AttrType&) const = default;
};

struct Attribute {
  std::string name;
  AttrType type;
  bool operator==(const Attribute&) const = default;
};

struct ClassDef {
  std::string name;
  std::vector<Attribute> attributes;
  const Attribute* find_attr(const std::string& n) const;
  bool operator==(const ClassDef&) const = default;
};

struct Signature {
  std::vector<ClassDef> classes;
  const ClassDef* find_class(const std::string& n) const;
  // classes declaring an attribute with this name
  std::vector<const ClassDef*> classes_with_attr(const std::string& n) const;
  bool operator==(const Signature&) const = default;
};

enum class Category { Definition, Requirement, Scenario, Property };

std::string category_name(Category c);
std::optional<Category> category_parse(const std::string& s);

struct Requirement {
  std::string id;
  std::string text;
  Category category = Category::Requirement;
  std::vector<std::string> constraints;  // verbatim constraint sources
  std::vector<std::string> links;
  bool operator==(const Requirement&) const = default;
};

struct Project {
  Signature signature;
  std::vector<Requirement> requirements;
  std::map<std::string, long> bounds;  // class name -> N >= 1

  const Requirement* find_requirement(const std::string& id) const;
  bool operator==(const Project&) const = default;
};

std::vector<Diagnostic> validate_signature(const Signature& sig);

// throws Error on malformed file or invariant violation
Project load_project(const std::string& path);
Project parse_project_text(const std::string& json_text);
std::string write_project(const Project& p);  // JSON, round-trips with load

// requirements in declaration order; throws on unknown id
std::vector<Requirement> requirements_for(const Project& p, const std::set<std::string>& ids);

}  // namespace rvt
