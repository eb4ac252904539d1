#include "curvemg/image_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace curvemg {

namespace {

std::runtime_error io_error(const std::filesystem::path& path, const std::string& what) {
  return std::runtime_error(path.string() + ": " + what);
}

// Reads the next header token, skipping whitespace and '#' comments.
std::string pgm_token(std::istream& in) {
  std::string tok;
  int ch;
  while ((ch = in.get()) != EOF) {
    if (ch == '#') {
      while ((ch = in.get()) != EOF && ch != '\n') {
      }
      continue;
    }
    if (std::isspace(ch)) {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(static_cast<char>(ch));
  }
  return tok;
}

std::filesystem::path sidecar(const std::filesystem::path& path) {
  return std::filesystem::path(path.string() + ".json");
}

}  // namespace

Image read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error(path, "cannot open");
  if (pgm_token(in) != "P5") throw io_error(path, "not a binary PGM (P5)");
  int width = 0, height = 0, maxval = 0;
  try {
    width = std::stoi(pgm_token(in));
    height = std::stoi(pgm_token(in));
    maxval = std::stoi(pgm_token(in));
  } catch (const std::exception&) {
    throw io_error(path, "malformed PGM header");
  }
  if (width <= 0 || height <= 0 || maxval <= 0 || maxval > 65535)
    throw io_error(path, "invalid PGM dimensions or maxval");

  Image img(width, height, static_cast<double>(maxval));
  const int bytes = maxval < 256 ? 1 : 2;
  std::vector<unsigned char> raw(img.size() * bytes);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (in.gcount() != static_cast<std::streamsize>(raw.size())) throw io_error(path, "truncated PGM");
  auto d = img.data();
  for (std::size_t i = 0; i < d.size(); ++i)
    d[i] = bytes == 1 ? raw[i] : static_cast<double>((raw[2 * i] << 8) | raw[2 * i + 1]);
  return img;
}

void write_pgm(const Image& img, const std::filesystem::path& path, int maxval) {
  if (maxval <= 0 || maxval > 65535) throw std::invalid_argument("write_pgm: maxval out of range");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error(path, "cannot open for writing");
  out << "P5\n" << img.width() << ' ' << img.height() << '\n' << maxval << '\n';
  const double scale = maxval / img.peak();
  const bool wide = maxval > 255;
  std::vector<unsigned char> raw;
  raw.reserve(img.size() * (wide ? 2 : 1));
  for (double v : img.data()) {
    const auto q = static_cast<unsigned>(std::clamp(std::lround(v * scale), 0L, static_cast<long>(maxval)));
    if (wide) raw.push_back(static_cast<unsigned char>(q >> 8));
    raw.push_back(static_cast<unsigned char>(q & 0xff));
  }
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (!out) throw io_error(path, "write failed");
}

Image read_csv_image(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw io_error(path, "cannot open");
  std::vector<double> data;
  int width = -1, height = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    int count = 0;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        data.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw io_error(path, "bad number '" + cell + "'");
      }
      ++count;
    }
    if (width < 0) width = count;
    if (count != width) throw io_error(path, "ragged CSV row");
    ++height;
  }
  if (height == 0) throw io_error(path, "empty CSV image");

  double peak = 255.0;
  std::ifstream meta(sidecar(path));
  if (meta) {
    const auto j = nlohmann::json::parse(meta);
    peak = j.value("peak", peak);
  }
  return Image(width, height, std::move(data), peak);
}

void write_csv_image(const Image& img, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw io_error(path, "cannot open for writing");
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (int r = 0; r < img.height(); ++r) {
    for (int c = 0; c < img.width(); ++c) {
      if (c) out << ',';
      out << img(r, c);
    }
    out << '\n';
  }
  std::ofstream meta(sidecar(path));
  meta << nlohmann::json{{"width", img.width()}, {"height", img.height()}, {"peak", img.peak()}}.dump(2)
       << '\n';
}

Image read_image(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".pgm") return read_pgm(path);
  if (ext == ".csv") return read_csv_image(path);
  throw io_error(path, "unsupported image extension (use .pgm or .csv)");
}

void write_image(const Image& img, const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".pgm") return write_pgm(img, path, img.peak() > 255.0 ? 65535 : 255);
  if (ext == ".csv") return write_csv_image(img, path);
  throw io_error(path, "unsupported image extension (use .pgm or .csv)");
}

}  // namespace curvemg
