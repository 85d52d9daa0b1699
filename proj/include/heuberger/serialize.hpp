#pragma once

#include <json.hpp>

#include "heuberger/homomorphism.hpp"
#include "heuberger/oracle.hpp"
#include "heuberger/payan.hpp"

namespace heuberger {

using json = nlohmann::json;

// JSON documents use sorted keys and integers only. An integer outside the
// int64 range is written as a decimal string.

json integer_to_json(const Integer& x);
Integer integer_from_json(const json& j);

json to_json(const Vector& v);
json to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const json& j);

json to_json(const StructuralStep& step);
json to_json(const HomStep& step);
json to_json(const HomChain& chain);
/// Rebuilds a chain from its document. The stored matrices and images are
/// kept as written, so chain_is_sound and verify_hom_chain check the document
/// itself rather than a recomputation of it.
HomChain chain_from_json(const json& j);

json to_json(const ChiReport& report);
json to_json(const ChromaticResult& result);
json to_json(const PayanEntry& entry);
json to_json(const PayanReport& report);

}  // namespace heuberger
