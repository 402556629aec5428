#pragma once
// Derivative oracle: re-evaluates each family's defining expression through
// jet arithmetic, independently of the hand-derived formulas in maps.cpp.

#include "pdm/jet.hpp"
#include "pdm/maps.hpp"

namespace pdm {

MapJet oracle_derivs(const MapFamily& family, Complex z);

}  // namespace pdm
