#pragma once

#include "json.hpp"

#include "mu/interpolate.hpp"
#include "mu/oracle.hpp"

namespace mu {

using Json = nlohmann::json;

// Complex numbers travel as two-element arrays [re, im].
Json complex_to_json(const Complex& z);
Complex complex_from_json(const Json& j);  // throws MalformedInput

Json to_json(const TetraPoint& x);
Json to_json(const SymPoint& y);
TetraPoint tetra_from_json(const Json& j);
SymPoint g2_from_json(const Json& j);

Json to_json(const MembershipVerdict& v, const std::string& domain);
Json to_json(const ConditionReport& r, const std::string& domain,
             const Complex& lambda0);

Json expr_to_json(const ScalarExpr& e);
ScalarExpr expr_from_json(const Json& j);  // throws MalformedInput

Json to_json(const AnalyticDisc& d);
AnalyticDisc disc_from_json(const Json& j);

Json to_json(const InterpolantReport& r);
Json to_json(const SchurMatrixWitness& w);
Json to_json(const SweepReport& r);

SweepConfig sweep_config_from_json(const Json& j);

}  // namespace mu
