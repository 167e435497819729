#pragma once

#include <cstdint>
#include <vector>

#include "leafchar/symbolics/polynomial.hpp"

namespace leafchar {

using RationalMatrix = std::vector<std::vector<Rational>>;
using IntegerMatrix = std::vector<std::vector<Integer>>;

/// Rank by fraction-free (Bareiss) elimination.
std::size_t bareiss_rank(IntegerMatrix m);

/// Scales each row by the lcm of its denominators.
IntegerMatrix clear_denominators(const RationalMatrix& m);

std::size_t exact_rank(const RationalMatrix& m);

/// Rank over Z/p. Throws DivisionByZero if p divides a denominator.
std::size_t modular_rank(const RationalMatrix& m, std::uint64_t p);

/// Basis of {x : m x = 0} over Q, one vector per free column.
RationalMatrix kernel_basis(const RationalMatrix& m, std::size_t cols);

inline constexpr std::uint64_t kRankPrimes[2] = {1073741827ULL, 2147483647ULL};

}  // namespace leafchar
