#include <g5/io.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace g5 {

namespace {

void check_stream(const std::ios& s, const std::filesystem::path& path) {
  if (!s.good()) throw IoError("io: failed writing " + path.string());
}

constexpr char kMagic[8] = {'G', '5', 'S', 'T', 'A', 'T', 'E', '1'};

void write_header(std::ofstream& out, const Grid& g, std::uint32_t ncomp, double t,
                  double m, double hbar) {
  out.write(kMagic, sizeof(kMagic));
  const std::uint32_t dims = static_cast<std::uint32_t>(g.dims());
  out.write(reinterpret_cast<const char*>(&dims), 4);
  out.write(reinterpret_cast<const char*>(&ncomp), 4);
  for (int d = 0; d < g.dims(); ++d) {
    const std::uint32_t n = static_cast<std::uint32_t>(g.points(d));
    out.write(reinterpret_cast<const char*>(&n), 4);
  }
  for (int d = 0; d < g.dims(); ++d) {
    const double len = g.length(d);
    out.write(reinterpret_cast<const char*>(&len), 8);
  }
  out.write(reinterpret_cast<const char*>(&t), 8);
  out.write(reinterpret_cast<const char*>(&m), 8);
  out.write(reinterpret_cast<const char*>(&hbar), 8);
}

void write_block(std::ofstream& out, const std::vector<Complex>& amp) {
  out.write(reinterpret_cast<const char*>(amp.data()),
            static_cast<std::streamsize>(amp.size() * sizeof(Complex)));
}

}  // namespace

void write_series_csv(const std::filesystem::path& path,
                      const std::vector<SeriesRow>& rows) {
  std::ofstream out(path);
  check_stream(out, path);
  out << "t,norm,mean_x0,mean_x1,mean_x2,mean_p0,mean_p1,mean_p2,var_x,var_p,energy\n";
  char buf[64];
  auto put = [&](double v, char sep) {
    std::snprintf(buf, sizeof(buf), "%.16e%c", v, sep);
    out << buf;
  };
  for (const auto& r : rows) {
    put(r.t, ',');
    put(r.obs.norm, ',');
    for (int d = 0; d < 3; ++d) put(r.obs.mean_x[d], ',');
    for (int d = 0; d < 3; ++d) put(r.obs.mean_p[d], ',');
    put(r.obs.var_x, ',');
    put(r.obs.var_p, ',');
    put(r.obs.energy, '\n');
  }
  check_stream(out, path);
}

void write_state_bin(const std::filesystem::path& path, const ScalarWavefunction& s) {
  std::ofstream out(path, std::ios::binary);
  check_stream(out, path);
  write_header(out, s.grid, 1, s.t, s.m, s.hbar);
  write_block(out, s.amp);
  check_stream(out, path);
}

void write_state_bin(const std::filesystem::path& path, const PauliSpinor& s) {
  std::ofstream out(path, std::ios::binary);
  check_stream(out, path);
  write_header(out, s.grid, 2, s.t, s.m, s.hbar);
  write_block(out, s.up);
  write_block(out, s.dn);
  check_stream(out, path);
}

ScalarWavefunction read_state_bin(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) throw IoError("io: cannot open " + path.string());
  char magic[8];
  in.read(magic, 8);
  if (!std::equal(magic, magic + 8, kMagic))
    throw IoError("io: bad magic in " + path.string());
  std::uint32_t dims = 0, ncomp = 0;
  in.read(reinterpret_cast<char*>(&dims), 4);
  in.read(reinterpret_cast<char*>(&ncomp), 4);
  if (dims < 1 || dims > 3 || ncomp != 1)
    throw IoError("io: unsupported state layout in " + path.string());
  std::vector<int> points(dims);
  std::vector<double> lengths(dims);
  for (auto& n : points) {
    std::uint32_t v = 0;
    in.read(reinterpret_cast<char*>(&v), 4);
    n = static_cast<int>(v);
  }
  for (auto& l : lengths) in.read(reinterpret_cast<char*>(&l), 8);
  double t = 0, m = 0, hbar = 0;
  in.read(reinterpret_cast<char*>(&t), 8);
  in.read(reinterpret_cast<char*>(&m), 8);
  in.read(reinterpret_cast<char*>(&hbar), 8);
  ScalarWavefunction s{Grid(points, lengths), {}, t, m, hbar};
  s.amp.resize(s.grid.size());
  in.read(reinterpret_cast<char*>(s.amp.data()),
          static_cast<std::streamsize>(s.amp.size() * sizeof(Complex)));
  if (!in.good()) throw IoError("io: truncated state in " + path.string());
  return s;
}

void write_report_json(const std::filesystem::path& path,
                       const nlohmann::ordered_json& report) {
  std::ofstream out(path);
  check_stream(out, path);
  out << report.dump(2) << "\n";
  check_stream(out, path);
}

}  // namespace g5
