#pragma once

// Binary statevector snapshot:
//   bytes 0..3   magic "GLAB"
//   bytes 4..7   version, u32 little-endian
//   bytes 8..15  N, u64 little-endian
//   then N pairs of IEEE-754 binary64 (re, im), little-endian, by index.

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "glab/simulator.hpp"

namespace glab {

inline constexpr std::uint32_t kSnapshotVersion = 1;

void write_snapshot(std::ostream& out, const StateVector& state);
void write_snapshot(const std::filesystem::path& path, const StateVector& state);

// Throws std::runtime_error on bad magic, unknown version or truncation.
StateVector read_snapshot(std::istream& in);
StateVector read_snapshot(const std::filesystem::path& path);

}  // namespace glab
