#include "uasc/snapshot.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <memory>
#include <vector>

namespace uasc {

static_assert(std::endian::native == std::endian::little,
              "snapshot io assumes a little-endian host");

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

void write_plane(std::FILE* f, const ComplexField& field, bool imag) {
  std::vector<double> plane(field.size());
  for (int j = 0; j < field.size(); ++j)
    plane[j] = imag ? field[j].imag() : field[j].real();
  if (std::fwrite(plane.data(), sizeof(double), plane.size(), f) !=
      plane.size())
    throw StructuralError("snapshot write failed");
}

std::vector<double> read_plane(std::FILE* f, int n) {
  std::vector<double> plane(n);
  if (std::fread(plane.data(), sizeof(double), plane.size(), f) !=
      plane.size())
    throw StructuralError("snapshot truncated");
  return plane;
}

}  // namespace

void save_snapshot(const StateSnapshot& s, const std::string& path) {
  FilePtr f(std::fopen(path.c_str(), "wb"));
  if (!f) throw StructuralError("cannot open snapshot file for writing: " + path);
  const int nx = s.grid().n;
  std::fprintf(f.get(), "UASC1 %s %d %a %a %d\n", s.kind.c_str(), nx, s.eps,
               s.tf, s.complex_S ? 1 : 0);
  if (s.is_wave()) {
    write_plane(f.get(), s.psi, false);
    write_plane(f.get(), s.psi, true);
  } else {
    write_plane(f.get(), s.S, false);
    write_plane(f.get(), s.S, true);
    write_plane(f.get(), s.A, false);
    write_plane(f.get(), s.A, true);
  }
}

StateSnapshot load_snapshot(const std::string& path) {
  FilePtr f(std::fopen(path.c_str(), "rb"));
  if (!f) throw StructuralError("cannot open snapshot file: " + path);

  char line[256];
  if (!std::fgets(line, sizeof(line), f.get()))
    throw StructuralError("snapshot header missing");
  char magic[16] = {0}, kind[64] = {0};
  int nx = 0, cs = 0;
  double eps = 0.0, tf = 0.0;
  if (std::sscanf(line, "%15s %63s %d %la %la %d", magic, kind, &nx, &eps, &tf,
                  &cs) != 6 ||
      std::strcmp(magic, "UASC1") != 0)
    throw StructuralError("not a UASC1 snapshot: " + path);
  if (nx < 4) throw StructuralError("snapshot grid too small");

  StateSnapshot s;
  s.kind = kind;
  s.eps = eps;
  s.tf = tf;
  s.complex_S = cs != 0;
  const Grid g = make_grid(nx);
  if (s.is_wave()) {
    const auto re = read_plane(f.get(), nx);
    const auto im = read_plane(f.get(), nx);
    s.psi = ComplexField(g);
    for (int j = 0; j < nx; ++j) s.psi[j] = cplx(re[j], im[j]);
  } else {
    const auto sre = read_plane(f.get(), nx);
    const auto sim = read_plane(f.get(), nx);
    const auto are = read_plane(f.get(), nx);
    const auto aim = read_plane(f.get(), nx);
    s.S = ComplexField(g);
    s.A = ComplexField(g);
    for (int j = 0; j < nx; ++j) {
      s.S[j] = cplx(sre[j], sim[j]);
      s.A[j] = cplx(are[j], aim[j]);
    }
  }
  return s;
}

}  // namespace uasc
