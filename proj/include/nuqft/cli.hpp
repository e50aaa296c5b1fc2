#pragma once

#include "nuqft/chebfact.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>

namespace nuqft::cli {

enum class GridMode { uniform, jitter, random, clustered };

GridMode parse_mode(const std::string& s);
/// Deterministic under seed. Jitter keeps |t_j - j/N| <= gamma/N.
chebfact::SampleGrid generate_grid(GridMode mode, int n, double gamma, std::uint64_t seed);

/// Exit codes: 0 pass, 1 verification failure, 2 usage or input error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nuqft::cli
