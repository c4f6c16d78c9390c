#pragma once

#include <string>
#include <vector>

#include "halfzero/basecurve.hpp"
#include "halfzero/census.hpp"
#include "halfzero/twist.hpp"
#include "halfzero/vanishing.hpp"
#include "halfzero/zeta.hpp"
#include "json.hpp"

namespace hz {

using Json = nlohmann::ordered_json;

/// {"q", "g", "coefficients"}.
Json to_json(const LPolynomial& P);
LPolynomial lpoly_from_json(const Json& j);
Json to_json(const EigenvalueReport& r);
Json to_json(const CensusRecord& r);
CensusRecord census_record_from_json(const Json& j);
Json to_json(const BaseCurve& b);
Json to_json(const TwistFamilyReport& r);
Json to_json(const DensityEstimate& d);

/// degree,vanishing_count,total,exponent
std::string census_csv(const std::vector<CensusRecord>& records);
/// D,u,v,unit,Y,fiber_size,verified
std::string family_csv(const TwistFamilyReport& r);

/// Writes text to path via a temporary file and rename.
void write_file_atomic(const std::string& path, const std::string& text);

}  // namespace hz
