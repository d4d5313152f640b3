#pragma once

#include <string>
#include <string_view>

#include "conewalk/cone.hpp"
#include "conewalk/walk.hpp"

namespace conewalk {

/// `wedge:beta=<rad>[,rot=<rad>][,eps=<tol>]`, `halfline`,
/// `halfspaces:n1=<a,b,c>;n2=...` (the dimension is the normal length).
/// Throws std::invalid_argument with a message naming the bad token.
Cone parse_cone(std::string_view spec);

/// `srw1d | srw2d | srw3d | srw2d-2step | disk[:sigma2=<s>] | lattice:@file.json`.
/// The JSON file is an array of atoms `[[dx, dy], p]`.
StepDistribution parse_walk(std::string_view spec);

/// Parses the atom-list JSON text directly.
StepDistribution parse_lattice_json(std::string_view json_text, std::string name = "lattice");

}  // namespace conewalk
