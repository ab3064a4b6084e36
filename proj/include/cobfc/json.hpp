#pragma once

#include <json.hpp>

namespace cobfc {

// Insertion-ordered JSON everywhere: reports must serialize byte-identically
// across runs, so field order is part of the contract.
using Json = nlohmann::ordered_json;

}  // namespace cobfc
