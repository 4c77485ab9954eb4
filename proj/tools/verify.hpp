#pragma once

#include <cstdint>
#include <ostream>

// Runs the full invariant battery; prints one line per check group.
// Returns the number of failing groups (0 means a green build).
int run_verify(std::uint64_t seed, std::ostream& out);
