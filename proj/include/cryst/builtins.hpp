#pragma once

#include <optional>
#include <string>

#include "cryst/crystal.hpp"

namespace cryst {

// dimension 2: split extension of the dihedral group of order 12 acting on
// the hexagonal lattice
CrystGroup gamma1();

// dimension 3: split extension of a group of order 48 (S4 x Z2)
CrystGroup gamma2();

// parse "gamma1", "gamma2", "gamma1^2", "gamma1^2*gamma2", ...; nullopt when
// the string is not a builtin product expression
std::optional<CrystGroup> parse_builtin(const std::string& name);

}  // namespace cryst
