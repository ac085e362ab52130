#include "bmtk/bmgf.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

#include "bmtk/errors.hpp"

namespace bmtk {
namespace {

static_assert(std::endian::native == std::endian::little, "BMGF I/O assumes a little-endian host");

template <typename T>
void put(std::ostream& out, T v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.write(buf, sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  char buf[sizeof(T)];
  if (!in.read(buf, sizeof(T))) throw FormatError("truncated BMGF file");
  T v;
  std::memcpy(&v, buf, sizeof(T));
  return v;
}

}  // namespace

void write_bmgf(std::ostream& out, const GridFunction& f) {
  const GridSpec& s = f.spec();
  out.write("BMGF", 4);
  put<std::uint32_t>(out, kBmgfVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(s.dim));
  for (int a = 0; a < s.dim; ++a) put<std::uint32_t>(out, static_cast<std::uint32_t>(s.points));
  put<double>(out, s.length);
  out.write(reinterpret_cast<const char*>(f.values().data()),
            static_cast<std::streamsize>(f.size() * sizeof(double)));
}

void write_bmgf(const std::filesystem::path& path, const GridFunction& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot open " + path.string() + " for writing");
  write_bmgf(out, f);
}

GridFunction read_bmgf(std::istream& in) {
  char magic[4] = {};
  if (!in.read(magic, 4) || std::memcmp(magic, "BMGF", 4) != 0)
    throw FormatError("not a BMGF file");
  const auto version = get<std::uint32_t>(in);
  if (version != kBmgfVersion) throw FormatError("unsupported BMGF version");
  const auto dim = get<std::uint32_t>(in);
  if (dim != 2 && dim != 3) throw FormatError("BMGF dimension must be 2 or 3");
  std::vector<std::uint32_t> dims(dim);
  for (auto& d : dims) d = get<std::uint32_t>(in);
  for (auto d : dims)
    if (d != dims[0]) throw FormatError("BMGF grids must have equal points per axis");
  GridSpec spec{static_cast<int>(dim), static_cast<int>(dims[0]), get<double>(in)};
  spec.validate();
  std::vector<double> values(spec.size());
  if (!in.read(reinterpret_cast<char*>(values.data()),
               static_cast<std::streamsize>(values.size() * sizeof(double))))
    throw FormatError("truncated BMGF sample data");
  GridFunction f(spec, std::move(values));
  f.check_finite();
  return f;
}

GridFunction read_bmgf(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path.string());
  return read_bmgf(in);
}

}  // namespace bmtk
