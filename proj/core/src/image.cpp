#include "vap/image.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace vap::image {

namespace {

int read_ppm_token(std::istream& in) {
  // skips whitespace and '#' comments between header fields
  while (true) {
    int c = in.peek();
    if (c == '#') {
      std::string line;
      std::getline(in, line);
    } else if (std::isspace(c)) {
      in.get();
    } else {
      break;
    }
  }
  int value = -1;
  in >> value;
  return value;
}

}  // namespace

Frame read_ppm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("ppm: cannot open '" + path + "'");
  char m0 = 0, m1 = 0;
  in.get(m0);
  in.get(m1);
  if (m0 != 'P' || m1 != '6') throw Error("ppm: '" + path + "' is not a binary P6 file");
  int w = read_ppm_token(in);
  int h = read_ppm_token(in);
  int maxval = read_ppm_token(in);
  if (w <= 0 || h <= 0 || maxval <= 0 || maxval > 255)
    throw Error("ppm: '" + path + "' has an unsupported header");
  in.get();  // single whitespace after maxval
  std::vector<unsigned char> raw(static_cast<std::size_t>(w) * h * 3);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (!in) throw Error("ppm: '" + path + "' truncated pixel data");
  Frame frame(w, h);
  const float scale = 1.0f / static_cast<float>(maxval);
  for (std::size_t i = 0; i < raw.size(); ++i) frame.pixels[i] = raw[i] * scale;
  return frame;
}

void write_ppm(const Frame& frame, const std::string& path) {
  if (frame.empty()) throw DegenerateInputError("ppm: cannot write empty frame");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("ppm: cannot write '" + path + "'");
  out << "P6\n" << frame.width << " " << frame.height << "\n255\n";
  std::vector<unsigned char> raw(frame.pixels.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    float v = std::clamp(frame.pixels[i], 0.0f, 1.0f);
    raw[i] = static_cast<unsigned char>(std::lround(v * 255.0f));
  }
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (!out) throw Error("ppm: write to '" + path + "' failed");
}

Frame resize_bilinear(const Frame& src, int out_w, int out_h) {
  if (src.empty()) throw DegenerateInputError("resize: empty source");
  if (out_w <= 0 || out_h <= 0) throw DegenerateInputError("resize: non-positive target size");
  Frame out(out_w, out_h);
  out.index = src.index;
  out.timestamp = src.timestamp;
  const double sx = static_cast<double>(src.width) / out_w;
  const double sy = static_cast<double>(src.height) / out_h;
  for (int y = 0; y < out_h; ++y) {
    double fy = (y + 0.5) * sy - 0.5;
    int y0 = static_cast<int>(std::floor(fy));
    double wy = fy - y0;
    int y1 = std::min(y0 + 1, src.height - 1);
    y0 = std::clamp(y0, 0, src.height - 1);
    for (int x = 0; x < out_w; ++x) {
      double fx = (x + 0.5) * sx - 0.5;
      int x0 = static_cast<int>(std::floor(fx));
      double wx = fx - x0;
      int x1 = std::min(x0 + 1, src.width - 1);
      x0 = std::clamp(x0, 0, src.width - 1);
      for (int c = 0; c < 3; ++c) {
        double top = (1.0 - wx) * src.at(x0, y0, c) + wx * src.at(x1, y0, c);
        double bot = (1.0 - wx) * src.at(x0, y1, c) + wx * src.at(x1, y1, c);
        out.at(x, y, c) = static_cast<float>((1.0 - wy) * top + wy * bot);
      }
    }
  }
  return out;
}

std::vector<float> to_intensity(const Frame& frame) {
  std::vector<float> out(static_cast<std::size_t>(frame.width) * frame.height);
  for (int y = 0; y < frame.height; ++y)
    for (int x = 0; x < frame.width; ++x)
      out[static_cast<std::size_t>(y) * frame.width + x] = frame.intensity(x, y);
  return out;
}

}  // namespace vap::image
