#pragma once

// JSON encodings for the domain types. Keys keep insertion order and numbers
// round-trip exactly, so reports are byte-stable under a fixed seed.
// Complex numbers are [re, im] pairs; matrices are row-major arrays of rows.

#include <string>

#include <json.hpp>

#include "iwasawa/acs.hpp"
#include "iwasawa/dolbeault.hpp"
#include "iwasawa/echelon.hpp"
#include "iwasawa/forms.hpp"
#include "iwasawa/metric.hpp"
#include "iwasawa/retract.hpp"
#include "iwasawa/spectra.hpp"

namespace iwasawa {

using Json = nlohmann::ordered_json;

Json json_of(Complex z);
Complex complex_from(const Json& j);

Json json_of(const KForm& form);
KForm kform_from(const Json& j);

Json json_of(const ACS& acs);
ACS acs_from(const Json& j);

// The derived coefficients (u and d) are emitted for readability but always
// recomputed on input.
Json json_of(const EchelonPlus& coords);
EchelonPlus echelon_plus_from(const Json& j);
Json json_of(const EchelonMinus& coords);
EchelonMinus echelon_minus_from(const Json& j);

Json json_of(const SphereCoord& n);
SphereCoord sphere_from(const Json& j);

Json json_of(const PolarSplit& split);

Json json_of(const SpectrumClass& s);
Json json_of(const DolbeaultReport& r);

std::string region_name(Region region);
std::string component_name(Component component);

}  // namespace iwasawa
