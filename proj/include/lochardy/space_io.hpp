#pragma once

// Space documents:
//   { "n": int,
//     "metric": { "type": "dense", "data": [[...], ...] }
//             | { "type": "graph", "data": [[i, j, w], ...] },
//     "mass": [floats],
//     "scale_unit": float }            // optional, default 1.0
// Graph metrics are closed under shortest paths before validation.

#include <string>
#include <string_view>

#include "lochardy/mmspace.hpp"

namespace lochardy {

Space load_space(std::string_view document);
Space load_space_file(const std::string& path);

/// Dense-metric document; round-trips through load_space.
std::string space_to_json(const Space& space);

}  // namespace lochardy
