#pragma once

#include <cstdio>
#include <fstream>
#include <optional>
#include <string>

#include "aorrt/core/errors.hpp"

namespace aorrt {

/// Six significant digits, as printf("%.6g").
inline std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline std::string fmt6(const std::optional<double>& v) { return v ? fmt6(*v) : std::string(); }

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing " + path);
}

}  // namespace aorrt
