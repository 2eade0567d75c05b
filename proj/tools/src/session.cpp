#include "lcah/cli/session.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace lcah::cli {

const char *kind_name(const Value &v) {
  static const char *names[] = {"group",     "morphism",     "heart",
                                "heart-morphism", "pga", "pga-morphism", "roof"};
  return names[v.index()];
}

std::string content_id(const char *prefix, const io::json &j) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : j.dump()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s:%016llx", prefix, static_cast<unsigned long long>(h));
  return buf;
}

std::string certificate_id(const BicartesianCertificate &c, const SymbolTable &t) {
  return content_id("cert", io::to_json(c, t));
}

const Value *Session::find(const std::string &name) const {
  for (const auto &b : bindings_)
    if (b.name == name)
      return &b.value;
  return nullptr;
}

void Session::bind(const std::string &name, Value v) {
  for (auto &b : bindings_)
    if (b.name == name) {
      b.value = std::move(v);
      return;
    }
  bindings_.push_back({name, std::move(v)});
}

const std::string &Session::add_certificate(const HeartObject &from, const HeartObject &to,
                                            const BicartesianCertificate &c) {
  std::string id = certificate_id(c, symbols);
  for (const auto &s : certificates_)
    if (s.id == id)
      return s.id;
  certificates_.push_back({id, from, to, c});
  return certificates_.back().id;
}

io::json value_to_json(const Value &v, const SymbolTable &t) {
  return std::visit(
      [&](const auto &x) -> io::json {
        using X = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<X, ElcaGroup>)
          return io::to_json(x);
        else
          return io::to_json(x, t);
      },
      v);
}

Value value_from_json(const std::string &kind, const io::json &j, const SymbolTable &t) {
  if (kind == "group")
    return io::group_from_json(j);
  if (kind == "morphism")
    return io::morphism_from_json(j, t);
  if (kind == "heart")
    return io::heart_from_json(j, t);
  if (kind == "heart-morphism")
    return io::heart_morphism_from_json(j, t);
  if (kind == "pga")
    return io::pga_from_json(j, t);
  if (kind == "pga-morphism")
    return io::pga_morphism_from_json(j, t);
  if (kind == "roof") {
    Roof r = io::roof_from_json(j, t);
    check_roof(r);
    return r;
  }
  fail(ErrorKind::Session, "unknown binding kind '" + kind + "'");
}

io::json Session::to_json() const {
  io::json out;
  out["version"] = kVersion;
  out["symbols"] = io::to_json(symbols);
  io::json bs = io::json::array();
  for (const auto &b : bindings_)
    bs.push_back({{"name", b.name}, {"kind", kind_name(b.value)},
                  {"value", value_to_json(b.value, symbols)}});
  out["bindings"] = bs;
  io::json cs = io::json::array();
  for (const auto &c : certificates_)
    cs.push_back({{"id", c.id},
                  {"from", io::to_json(c.from, symbols)},
                  {"to", io::to_json(c.to, symbols)},
                  {"steps", io::to_json(c.certificate, symbols)}});
  out["certificates"] = cs;
  out["history"] = history;
  return out;
}

Session Session::from_json(const io::json &j) {
  if (!j.is_object() || !j.contains("version") || !j["version"].is_number_integer())
    fail(ErrorKind::Session, "session file has no version");
  if (j["version"].get<int>() != kVersion)
    fail(ErrorKind::Session, "unsupported session version " + j["version"].dump() +
                                 " (expected " + std::to_string(kVersion) + ")");
  for (const char *key : {"symbols", "bindings", "certificates", "history"})
    if (!j.contains(key) || !j[key].is_array())
      fail(ErrorKind::Session, std::string("session file lacks '") + key + "'");
  Session s;
  s.symbols = io::symbols_from_json(j["symbols"]);
  for (const auto &b : j["bindings"]) {
    if (!b.is_object() || !b.contains("name") || !b["name"].is_string() ||
        !b.contains("kind") || !b["kind"].is_string() || !b.contains("value"))
      fail(ErrorKind::Session, "malformed binding entry");
    std::string name = b["name"].get<std::string>();
    if (s.find(name))
      fail(ErrorKind::Session, "binding '" + name + "' appears twice");
    try {
      s.bind(name, value_from_json(b["kind"].get<std::string>(), b["value"], s.symbols));
    } catch (const Error &e) {
      fail(ErrorKind::Session, "binding '" + name + "': " + e.what());
    }
  }
  for (const auto &c : j["certificates"]) {
    if (!c.is_object() || !c.contains("id") || !c["id"].is_string())
      fail(ErrorKind::Session, "malformed certificate entry");
    std::string id = c["id"].get<std::string>();
    try {
      HeartObject from = io::heart_from_json(c.at("from"), s.symbols);
      HeartObject to = io::heart_from_json(c.at("to"), s.symbols);
      BicartesianCertificate cert = io::certificate_from_json(c.at("steps"), s.symbols);
      check_certificate(cert, from, to);
      if (certificate_id(cert, s.symbols) != id)
        fail(ErrorKind::InvalidCertificate, "content does not match its id");
      s.certificates_.push_back({id, from, to, cert});
    } catch (const Error &e) {
      fail(ErrorKind::Session, "certificate " + id + ": " + e.what());
    } catch (const nlohmann::json::exception &e) {
      fail(ErrorKind::Session, "certificate " + id + ": " + e.what());
    }
  }
  for (const auto &h : j["history"]) {
    if (!h.is_string())
      fail(ErrorKind::Session, "malformed history entry");
    s.history.push_back(h.get<std::string>());
  }
  return s;
}

std::string Session::serialize() const { return to_json().dump(2) + "\n"; }

Session Session::parse(const std::string &text) {
  io::json j;
  try {
    j = io::json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    fail(ErrorKind::Session, std::string("session file is not JSON: ") + e.what());
  }
  return from_json(j);
}

void Session::save(const std::string &path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    fail(ErrorKind::Session, "cannot write session file '" + path + "'");
  out << serialize();
}

Session Session::load(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    fail(ErrorKind::Session, "cannot read session file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

} // namespace lcah::cli
