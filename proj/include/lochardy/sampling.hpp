#pragma once

// Seeded random test objects used by the experiment harness.

#include <random>

#include "lochardy/atoms.hpp"

namespace lochardy {

/// i.i.d. standard normal values, the indicator of a random ball, or a
/// single spike with a normal height.
enum class FnFamily { normal, ball_indicator, spike };

/// Cycles through the three families.
inline FnFamily fn_family(std::size_t i) { return static_cast<FnFamily>(i % 3); }

FnOnSpace sample_function(const Space& space, FnFamily family, std::mt19937_64& rng);

/// Atom on a random ball (radius uniform in [0, scale] for standard atoms,
/// exactly scale for global ones) filled to a random fraction of the size
/// limit.
Atom sample_atom(const Space& space, double scale, double p, AtomKind kind, std::mt19937_64& rng);

/// Ion on a random ball of radius <= b whose integral is a random fraction
/// of r_B^alpha.
Ion sample_ion(const Space& space, double b, double p, double alpha, std::mt19937_64& rng);

}  // namespace lochardy
