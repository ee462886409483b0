// File formats: "nilcoupling/1" JSON for algebras and extensions (1-based
// indices, rationals as "p/q" strings) and CSV logs for cocycle samples.
#pragma once

#include "extension.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace nilc {

using Json = nlohmann::json;

Json algebra_to_json(const LayeredAlgebra& a);
// "layers" optional: absent means adapt the basis. Throws SchemaError.
LayeredAlgebra algebra_from_json(const Json& j);

Json extension_to_json(const CentralExtension& ext);
CentralExtension extension_from_json(const Json& j);

std::string rat_json(const Rat& x);   // canonical "p/q" or "p"
Rat rat_from_json(const Json& j);     // throws SchemaError
VecQ vec_from_json(const Json& j, int dim);
Json vec_to_json(const VecQ& v);

// CSV log: header + one row (seed,trial,gen,k,outcome,D) per sample.
std::string samples_to_csv(const std::vector<CocycleSample>& samples,
                           std::uint64_t seed);
std::vector<CocycleSample> samples_from_csv(const std::string& text);

}  // namespace nilc
