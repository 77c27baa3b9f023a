#pragma once

#include <json.hpp>

#include "phantom/heights.hpp"
#include "phantom/linear_systems.hpp"
#include "phantom/numerical.hpp"
#include "phantom/picard_lattice.hpp"

namespace phantom {

// Divisors serialize as their literal "d;m1,...,mn".
void to_json(nlohmann::json& j, const DivisorClass& d);
void from_json(const nlohmann::json& j, DivisorClass& d);

// Integers, or the string "TOP".
void to_json(nlohmann::json& j, const Height& h);

void to_json(nlohmann::json& j, const GramMatrix& g);
void to_json(nlohmann::json& j, const OracleResult& r);
void to_json(nlohmann::json& j, const CohomologyVector& v);
void to_json(nlohmann::json& j, const ReductionTrace& t);
void to_json(nlohmann::json& j, const ChainReport& c);
void to_json(nlohmann::json& j, const PseudoheightResult& r);
void to_json(nlohmann::json& j, const PresiltingViolation& v);
void to_json(nlohmann::json& j, const Collection& c);

} // namespace phantom
