#pragma once

// Deterministic space families for experiments.

#include <cstdint>
#include <string>

#include "lochardy/mmspace.hpp"

namespace lochardy {

/// n-cycle with unit edges and unit masses.
Space cycle_space(std::size_t n);
/// n-point path with unit edges and unit masses.
Space path_space(std::size_t n);
/// n points uniform in the unit square, Euclidean metric, unit masses.
Space random_geometric_space(std::size_t n, std::uint64_t seed);
/// First n points of the unit-edge lattice with ceil(sqrt n) columns,
/// row-major, lattice-graph metric, unit masses.
Space grid_space(std::size_t n);

/// Dispatch by family name: cycle | path | random-geometric | grid.
Space generate_space(const std::string& family, std::size_t n, std::uint64_t seed);

/// Same metric, masses drawn uniformly from [lo, hi].
Space with_random_masses(const Space& space, std::uint64_t seed, double lo = 0.5, double hi = 2.0);

/// SplitMix64 finaliser, used to derive independent per-trial seeds.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b = 0);

}  // namespace lochardy
