#include "hlim/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "hlim/errors.hpp"

namespace hlim {

namespace {

template <typename T>
void put(std::ostream& out, T value) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
  }
  out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  unsigned char bytes[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof(T))) throw IoError("truncated checkpoint");
  if constexpr (std::endian::native == std::endian::big) {
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
  }
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

std::size_t storage_index(int n1h, int n2, int k1, int i2, int i3) {
  return (std::size_t(i3) * n2 + i2) * n1h + k1;
}

Checkpoint base(const Grid& g, double eps, double t) {
  Checkpoint cp;
  cp.n1 = g.n1();
  cp.n2 = g.n2();
  cp.n3 = g.n3();
  cp.l1 = g.l1();
  cp.l2 = g.l2();
  cp.eps = eps;
  cp.t = t;
  return cp;
}

std::vector<Complex> copy(const SpectralField& f) {
  auto c = f.coefficients();
  return {c.begin(), c.end()};
}

}  // namespace

void write_checkpoint(std::ostream& out, const Checkpoint& cp) {
  out.write("HLIM", 4);
  put<std::uint32_t>(out, kCheckpointVersion);
  put<std::uint32_t>(out, std::uint32_t(cp.n1));
  put<std::uint32_t>(out, std::uint32_t(cp.n2));
  put<std::uint32_t>(out, std::uint32_t(cp.n3));
  put<double>(out, cp.l1);
  put<double>(out, cp.l2);
  put<double>(out, cp.eps);
  put<double>(out, cp.t);
  put<std::uint32_t>(out, std::uint32_t(cp.fields.size()));
  const int n1h = cp.n1 / 2 + 1;
  for (const auto& field : cp.fields) {
    if (field.size() != std::size_t(n1h) * cp.n2 * cp.n3) throw ConfigError("checkpoint field has the wrong size");
    for (int k1 = 0; k1 < n1h; ++k1) {
      for (int i2 = 0; i2 < cp.n2; ++i2) {
        for (int i3 = 0; i3 < cp.n3; ++i3) {
          const Complex c = field[storage_index(n1h, cp.n2, k1, i2, i3)];
          put<double>(out, c.real());
          put<double>(out, c.imag());
        }
      }
    }
  }
  if (!out) throw IoError("failed writing checkpoint");
}

Checkpoint read_checkpoint(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, "HLIM", 4) != 0) throw IoError("not a checkpoint (bad magic)");
  const auto version = get<std::uint32_t>(in);
  if (version != kCheckpointVersion) throw IoError("unsupported checkpoint version " + std::to_string(version));
  Checkpoint cp;
  cp.n1 = int(get<std::uint32_t>(in));
  cp.n2 = int(get<std::uint32_t>(in));
  cp.n3 = int(get<std::uint32_t>(in));
  cp.l1 = get<double>(in);
  cp.l2 = get<double>(in);
  cp.eps = get<double>(in);
  cp.t = get<double>(in);
  const auto count = get<std::uint32_t>(in);
  if (cp.n1 <= 0 || cp.n2 <= 0 || cp.n3 <= 0 || cp.n1 % 2 || cp.n2 % 2 || cp.n3 % 2 || count > 16) {
    throw IoError("corrupt checkpoint header");
  }
  const int n1h = cp.n1 / 2 + 1;
  cp.fields.resize(count);
  for (auto& field : cp.fields) {
    field.resize(std::size_t(n1h) * cp.n2 * cp.n3);
    for (int k1 = 0; k1 < n1h; ++k1) {
      for (int i2 = 0; i2 < cp.n2; ++i2) {
        for (int i3 = 0; i3 < cp.n3; ++i3) {
          const double re = get<double>(in);
          const double im = get<double>(in);
          field[storage_index(n1h, cp.n2, k1, i2, i3)] = Complex(re, im);
        }
      }
    }
  }
  return cp;
}

Checkpoint to_checkpoint(const PeState& s) {
  Checkpoint cp = base(s.grid(), 0.0, s.t);
  cp.fields = {copy(s.v[0]), copy(s.v[1])};
  return cp;
}

Checkpoint to_checkpoint(const SnsState& s) {
  Checkpoint cp = base(s.grid(), s.eps, s.t);
  cp.fields = {copy(s.v[0]), copy(s.v[1]), copy(s.w)};
  return cp;
}

PeState pe_state_from(const Checkpoint& cp, double dealias_fraction) {
  if (cp.fields.size() != 2 || cp.eps != 0.0) throw IoError("checkpoint does not hold a primitive-equation state");
  Grid g(cp.n1, cp.n2, cp.n3, cp.l1, cp.l2, dealias_fraction);
  return PeState{{SpectralField(g, cp.fields[0], Parity::even), SpectralField(g, cp.fields[1], Parity::even)}, cp.t};
}

SnsState sns_state_from(const Checkpoint& cp, double dealias_fraction) {
  if (cp.fields.size() != 3 || !(cp.eps > 0.0)) throw IoError("checkpoint does not hold a scaled Navier-Stokes state");
  Grid g(cp.n1, cp.n2, cp.n3, cp.l1, cp.l2, dealias_fraction);
  return SnsState{{SpectralField(g, cp.fields[0], Parity::even), SpectralField(g, cp.fields[1], Parity::even)},
                  SpectralField(g, cp.fields[2], Parity::odd), cp.eps, cp.t};
}

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& cp) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_checkpoint(out, cp);
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return read_checkpoint(in);
}

}  // namespace hlim
