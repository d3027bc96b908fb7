#pragma once

#include "pearl/bmorph.hpp"
#include "pearl/divisor.hpp"
#include "pearl/generator.hpp"

#include <nlohmann/json_fwd.hpp>

#include <string>

namespace pearl {

using Json = nlohmann::json;

// Exact numbers: int64 JSON numbers when they fit, decimal strings
// otherwise; rationals as [num, den].
Json int_to_json(const Int& v);
Int int_from_json(const Json& j);
Json rat_to_json(const Rational& q);
Rational rat_from_json(const Json& j);

Json to_json(const Novikov& x);
Novikov novikov_from_json(const Json& j);

Json to_json(const CombType& t);
CombType combtype_from_json(const Json& j);

Json to_json(const LabeledType& t);
LabeledType labeledtype_from_json(const Json& j);

Json to_json(const LatticePresentation& p);
LatticePresentation presentation_from_json(const Json& j);

Json to_json(const ClassPairing& c);
ClassPairing classpairing_from_json(const Json& j);

Json to_json(const Dataset& d);
Dataset dataset_from_json(const Json& j);

Json to_json(const BMorphism& m);
Json to_json(const Degeneration& d);
Json to_json(const D2Report& r);

Json load_json_file(const std::string& path);

}  // namespace pearl
