#pragma once

#include <numbers>

#include "rigidity/reps.hpp"

namespace rigidity {

// Two-generator PSL(2,R) Schottky group, axes at 0 and pi/2, lengths 2.
inline Representation standard_fuchsian() { return psl2_schottky({0.0, std::numbers::pi / 2.0}, {2.0, 2.0}, "fuchsian"); }

// Two-generator Klein-model Schottky group in H^k, random axes (and twists
// for k >= 3), translation length 2.5.
inline KleinSchottky standard_klein(int k) { return random_klein_schottky(k, 2, 2.5, 7); }

// Schottky group of SO(1,2) sitting inside SO(1,3): axes in a plane, no twist.
inline KleinSchottky planar_klein_in_h3() {
  Vec u1(3), u2(3);
  u1 << 1.0, 0.0, 0.0;
  u2 << 0.0, 1.0, 0.0;
  return klein_schottky(3, {{u1, 2.5, 0.0}, {u2, 2.5, 0.0}}, "planar-in-h3");
}

}  // namespace rigidity
