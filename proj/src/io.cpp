#include "ipsnet/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ipsnet/errors.hpp"

namespace ipsnet {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_trajectory(std::ostream& out, const ObservationSeries& series) {
  const bool with_n = !series.n_plus.empty();
  out << (with_n ? "t,S,N\n" : "t,S\n");
  for (long t = 0; t < series.size(); ++t) {
    out << (t + 1) << ',' << series.s[t];
    if (with_n) out << ',' << series.n_plus[t];
    out << '\n';
  }
}

void write_trajectory(const std::filesystem::path& path,
                      const ObservationSeries& series) {
  std::ofstream out(path);
  if (!out) throw IoFailure("cannot open " + path.string());
  write_trajectory(out, series);
}

ObservationSeries read_trajectory(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw IoFailure("empty file " + path.string());
  const bool with_n = line == "t,S,N";
  if (!with_n && line != "t,S")
    throw IoFailure("expected header t,S or t,S,N in " + path.string());
  ObservationSeries series;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    long t, s;
    char c1, c2;
    if (!(row >> t >> c1 >> s) || c1 != ',')
      throw IoFailure("malformed row in " + path.string() + ": " + line);
    series.s.push_back(s);
    if (with_n) {
      int n;
      if (!(row >> c2 >> n) || c2 != ',')
        throw IoFailure("malformed row in " + path.string() + ": " + line);
      series.n_plus.push_back(n);
    }
  }
  return series;
}

std::vector<double> read_sample(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "value")
    throw IoFailure("expected header `value` in " + path.string());
  std::vector<double> xs;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      xs.push_back(std::stod(line));
    } catch (const std::exception&) {
      throw IoFailure("malformed value in " + path.string() + ": " + line);
    }
  }
  return xs;
}

}  // namespace ipsnet
