// SPDX-License-Identifier: Apache-2.0
#include "csv.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "trap/errors.hpp"

namespace trapcli {

std::string num17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string row;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) row += ',';
    row += fields[i];
  }
  row += '\n';
  return row;
}

std::string csv_row(std::initializer_list<std::string> fields) {
  return csv_row(std::vector<std::string>(fields));
}

void atomic_write_file(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw trap::ConfigError("cannot open for writing: " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw trap::ConfigError("write failed: " + tmp.string());
  }
  fs::rename(tmp, target);
}

}  // namespace trapcli
