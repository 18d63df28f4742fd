#pragma once

#include "lochardy/atoms.hpp"

namespace lochardy::detail {

struct Candidate {
  double value = 0.0;  // <atom, g>
  Atom atom;
};

// Best atom overall; when `out` is given it also receives the best standard
// atom of every centre and the global atom of every point whose pairing
// exceeds `threshold`.
Candidate pairing_candidates(const Space& space, const FnOnSpace& g, double p, double threshold,
                             std::vector<Candidate>* out);

}  // namespace lochardy::detail
