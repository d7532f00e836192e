#include "seagrass/pnm.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <string>

#include "seagrass/error.hpp"

namespace seagrass::pnm {

namespace {

// Reads one whitespace-delimited header token, skipping '#' comments.
std::string next_token(std::istream& in) {
  std::string token;
  int ch;
  while ((ch = in.get()) != EOF) {
    if (ch == '#') {
      while ((ch = in.get()) != EOF && ch != '\n') {
      }
      continue;
    }
    if (std::isspace(ch)) {
      if (!token.empty()) return token;
      continue;
    }
    token.push_back(static_cast<char>(ch));
  }
  return token;
}

int header_int(std::istream& in, const std::filesystem::path& path, const char* field) {
  const std::string token = next_token(in);
  try {
    std::size_t used = 0;
    const int value = std::stoi(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return value;
  } catch (const std::exception&) {
    throw LoadError(path.string() + ": bad " + field + " in header ('" + token + "')");
  }
}

}  // namespace

Image8 read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open image '" + path.string() + "'");
  const std::string magic = next_token(in);
  Image8 img;
  if (magic == "P5") {
    img.channels = 1;
  } else if (magic == "P6") {
    img.channels = 3;
  } else {
    throw LoadError(path.string() + ": unsupported format '" + magic + "' (expected P5 or P6)");
  }
  img.width = header_int(in, path, "width");
  img.height = header_int(in, path, "height");
  const int maxval = header_int(in, path, "maxval");
  if (img.width <= 0 || img.height <= 0) throw LoadError(path.string() + ": non-positive dimensions");
  if (maxval <= 0 || maxval > 255) throw LoadError(path.string() + ": maxval must be in [1, 255]");

  img.pixels.resize(static_cast<std::size_t>(img.width) * img.height * img.channels);
  in.read(reinterpret_cast<char*>(img.pixels.data()), static_cast<std::streamsize>(img.pixels.size()));
  if (in.gcount() != static_cast<std::streamsize>(img.pixels.size()))
    throw LoadError(path.string() + ": truncated pixel data");
  for (auto p : img.pixels) {
    if (p > maxval) throw LoadError(path.string() + ": sample exceeds maxval");
  }
  img.maxval = maxval;
  return img;
}

void write(const std::filesystem::path& path, const Image8& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw LoadError("cannot write image '" + path.string() + "'");
  out << (image.channels == 1 ? "P5" : "P6") << "\n"
      << image.width << " " << image.height << "\n"
      << image.maxval << "\n";
  out.write(reinterpret_cast<const char*>(image.pixels.data()), static_cast<std::streamsize>(image.pixels.size()));
  if (!out) throw LoadError("failed writing image '" + path.string() + "'");
}

Raster read_raster(const std::filesystem::path& path) {
  const Image8 img = read(path);
  Raster out(img.width, img.height, img.channels);
  std::size_t i = 0;
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x)
      for (int c = 0; c < img.channels; ++c) out.set(x, y, c, static_cast<double>(img.pixels[i++]) / img.maxval);
  return out;
}

void write_raster(const std::filesystem::path& path, const Raster& img) {
  Image8 out{img.width(), img.height(), img.channels(), 255, {}};
  out.pixels.reserve(img.data().size());
  for (double v : img.data()) out.pixels.push_back(static_cast<std::uint8_t>(std::lround(v * 255.0)));
  write(path, out);
}

}  // namespace seagrass::pnm
