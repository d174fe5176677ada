#pragma once

#include <json.hpp>

#include "cartan/dersolve.hpp"
#include "cartan/structure.hpp"

namespace cartan {

using json = nlohmann::json;

json spec_json(const AlgebraSpec& s);
// handle dump; structure constants as [i, j, k, c] for i <= j
json handle_json(const Algebra& h, bool with_structure = true);
json structure_json(const Algebra& h, std::size_t normalizer_dim);
// runtime is kept out of the report body, under "metadata"
json derivation_json(const AlgebraSpec& s, const DerivationReport& r, bool with_metadata = true);

}  // namespace cartan
