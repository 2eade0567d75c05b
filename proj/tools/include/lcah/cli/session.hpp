#pragma once

#include <string>
#include <variant>
#include <vector>

#include "lcah/json_io.hpp"

namespace lcah::cli {

using Value = std::variant<ElcaGroup, ElcaMorphism, HeartObject, HeartMorphism,
                           PgaGroup, PgaMorphism, Roof>;
const char *kind_name(const Value &v);

struct Binding {
  std::string name;
  Value value;
};

// A certificate from one heart object to another, kept for revalidation.
struct StoredCertificate {
  std::string id;
  HeartObject from, to;
  BicartesianCertificate certificate;
};

// "cert:" followed by the FNV-1a hash of the canonical JSON.
std::string certificate_id(const BicartesianCertificate &c, const SymbolTable &t);
std::string content_id(const char *prefix, const io::json &j);

class Session {
public:
  static constexpr int kVersion = 1;

  SymbolTable symbols;
  std::vector<std::string> history;

  const Value *find(const std::string &name) const;
  // Rebinding a name replaces the value in place.
  void bind(const std::string &name, Value v);
  const std::vector<Binding> &bindings() const { return bindings_; }

  const std::string &add_certificate(const HeartObject &from, const HeartObject &to,
                                     const BicartesianCertificate &c);
  const std::vector<StoredCertificate> &certificates() const { return certificates_; }

  io::json to_json() const;
  // Rebuilds every binding and reruns every certificate check.
  static Session from_json(const io::json &j);
  std::string serialize() const;
  static Session parse(const std::string &text);
  void save(const std::string &path) const;
  static Session load(const std::string &path);

private:
  std::vector<Binding> bindings_;
  std::vector<StoredCertificate> certificates_;
};

io::json value_to_json(const Value &v, const SymbolTable &t);
Value value_from_json(const std::string &kind, const io::json &j, const SymbolTable &t);

} // namespace lcah::cli
