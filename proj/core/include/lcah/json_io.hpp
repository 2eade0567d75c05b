#pragma once

#include <nlohmann/json.hpp>

#include "lcah/pga.hpp"

namespace lcah::io {

using json = nlohmann::ordered_json;

// Scalars are objects from monomial keys ("0" for the unit, "a", "a^-1",
// "a*b^2") to rational strings. Matrices are arrays of rows.

json to_json(const SymbolTable &t);
SymbolTable symbols_from_json(const json &j);

json to_json(const Scalar &s, const SymbolTable &t);
Scalar scalar_from_json(const json &j, const SymbolTable &t);

json to_json(const FgAbGroup &g);
FgAbGroup fg_group_from_json(const json &j);
json to_json(const FgAbMorphism &f);
FgAbMorphism fg_morphism_from_json(const json &j);

json to_json(const ElcaGroup &g);
ElcaGroup group_from_json(const json &j);
json to_json(const ElcaMorphism &f, const SymbolTable &t);
ElcaMorphism morphism_from_json(const json &j, const SymbolTable &t);

json to_json(const HeartObject &o, const SymbolTable &t);
HeartObject heart_from_json(const json &j, const SymbolTable &t);
json to_json(const HeartMorphism &m, const SymbolTable &t);
HeartMorphism heart_morphism_from_json(const json &j, const SymbolTable &t);

json to_json(const SquareData &s, const SymbolTable &t);
SquareData square_from_json(const json &j, const SymbolTable &t);
json to_json(const BicartesianCertificate &c, const SymbolTable &t);
BicartesianCertificate certificate_from_json(const json &j, const SymbolTable &t);

json to_json(const Roof &r, const SymbolTable &t);
Roof roof_from_json(const json &j, const SymbolTable &t);

json to_json(const PgaGroup &p, const SymbolTable &t);
PgaGroup pga_from_json(const json &j, const SymbolTable &t);
json to_json(const PgaMorphism &f, const SymbolTable &t);
PgaMorphism pga_morphism_from_json(const json &j, const SymbolTable &t);
json to_json(const LatticeIsogenyWitness &w, const SymbolTable &t);
LatticeIsogenyWitness witness_from_json(const json &j, const SymbolTable &t);

} // namespace lcah::io
