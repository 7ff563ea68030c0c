#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "hlim/state.hpp"

namespace hlim {

/// Binary little-endian checkpoint:
///
///   char[4]  magic "HLIM"
///   u32      version (kCheckpointVersion)
///   u32 x3   N1, N2, N3
///   f64 x2   L1, L2
///   f64      eps (0 for primitive-equation states)
///   f64      t
///   u32      field count
///   then per field, for k1 = 0..N1/2, k2 = 0..N2-1, k3 = 0..N3-1 (FFT
///   ordering, k1 outermost): f64 real, f64 imaginary.
///
/// Field order: v1, v2 (PE); v1, v2, w (SNS).
inline constexpr std::uint32_t kCheckpointVersion = 1;

struct Checkpoint {
  int n1 = 0, n2 = 0, n3 = 0;
  double l1 = 0.0, l2 = 0.0;
  double eps = 0.0;
  double t = 0.0;
  std::vector<std::vector<Complex>> fields;  // each in Grid spectral storage order
};

void write_checkpoint(std::ostream& out, const Checkpoint& cp);
Checkpoint read_checkpoint(std::istream& in);

Checkpoint to_checkpoint(const PeState& s);
Checkpoint to_checkpoint(const SnsState& s);
PeState pe_state_from(const Checkpoint& cp, double dealias_fraction = 2.0 / 3.0);
SnsState sns_state_from(const Checkpoint& cp, double dealias_fraction = 2.0 / 3.0);

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& cp);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace hlim
