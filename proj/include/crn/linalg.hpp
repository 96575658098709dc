#pragma once

#include <optional>
#include <vector>

#include "crn/rational.hpp"

namespace crn {

// Dense exact rational matrix, row-major.  Desk scale: no pivoting heuristics
// beyond first nonzero, no fraction-free tricks — GMP keeps everything exact.
using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;

int rank(RatMat m);

// Basis of the right nullspace { v : m v = 0 }; empty when trivial.
std::vector<RatVec> nullspace(const RatMat& m);

Rat det(RatMat m);  // square input required

// Solves m x = b; nullopt when inconsistent.  When the solution space is
// positive-dimensional, returns one particular solution (free vars = 0).
std::optional<RatVec> solve(RatMat m, RatVec b);

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(RatMat& m);

}  // namespace crn
