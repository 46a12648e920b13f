#include "lbreg/grid_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

namespace lbreg {
namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

std::size_t parse_dim(std::string_view s, const char* what) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v == 0) {
    throw FormatError(std::string("grid csv: bad ") + what + " '" + std::string(s) + "'");
  }
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_value(std::string_view s, std::size_t line) {
  s = trim(s);
  // strtod rather than from_chars<double>: libstdc++ 11 lacks the latter.
  std::string tmp(s);
  char* end = nullptr;
  const double v = std::strtod(tmp.c_str(), &end);
  if (tmp.empty() || end != tmp.c_str() + tmp.size()) {
    throw FormatError("grid csv: bad value '" + tmp + "' on line " + std::to_string(line));
  }
  return v;
}

}  // namespace

void write_grid_csv(std::ostream& out, const Grid& g) {
  out << g.rows() << ',' << g.cols() << '\n';
  out << std::setprecision(17);
  for (std::size_t r = 0; r < g.rows(); ++r) {
    for (std::size_t c = 0; c < g.cols(); ++c) {
      if (c) out << ',';
      out << g(r, c);
    }
    out << '\n';
  }
}

void write_grid_csv(const std::filesystem::path& path, const Grid& g) {
  auto out = open_out(path);
  write_grid_csv(out, g);
}

Grid read_grid_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("grid csv: missing header");
  const auto header = trim(line);
  const auto comma = header.find(',');
  if (comma == std::string_view::npos) throw FormatError("grid csv: header must be 'rows,cols'");
  const std::size_t rows = parse_dim(trim(header.substr(0, comma)), "rows");
  const std::size_t cols = parse_dim(trim(header.substr(comma + 1)), "cols");

  std::vector<double> values;
  values.reserve(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!std::getline(in, line)) {
      throw FormatError("grid csv: expected " + std::to_string(rows) + " rows, got " +
                        std::to_string(r));
    }
    std::string_view rest(line);
    std::size_t count = 0;
    while (true) {
      const auto pos = rest.find(',');
      values.push_back(parse_value(rest.substr(0, pos), r + 2));
      ++count;
      if (pos == std::string_view::npos) break;
      rest.remove_prefix(pos + 1);
    }
    if (count != cols) {
      throw FormatError("grid csv: row " + std::to_string(r) + " has " + std::to_string(count) +
                        " values, expected " + std::to_string(cols));
    }
  }
  try {
    return Grid(rows, cols, std::move(values));
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("grid csv: ") + e.what());
  }
}

Grid read_grid_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_grid_csv(in);
}

PgmScaling write_pgm(const std::filesystem::path& path, const Grid& g) {
  const auto [lo, hi] = std::minmax_element(g.values().begin(), g.values().end());
  const PgmScaling scaling{*lo, *hi};
  const double range = scaling.max - scaling.min;

  std::vector<unsigned char> pixels(g.size(), 0);
  if (range > 0.0) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double t = (g[i] - scaling.min) / range;
      pixels[i] = static_cast<unsigned char>(std::lround(std::clamp(t, 0.0, 1.0) * 255.0));
    }
  }

  {
    auto out = open_out(path);
    out << "P5\n" << g.cols() << ' ' << g.rows() << "\n255\n";
    out.write(reinterpret_cast<const char*>(pixels.data()),
              static_cast<std::streamsize>(pixels.size()));
  }
  auto meta_path = path;
  meta_path += ".meta";
  auto meta = open_out(meta_path);
  meta << std::setprecision(17) << "min " << scaling.min << "\nmax " << scaling.max << "\nrows "
       << g.rows() << "\ncols " << g.cols() << '\n';
  return scaling;
}

}  // namespace lbreg
