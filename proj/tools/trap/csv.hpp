// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <initializer_list>
#include <string>
#include <vector>

namespace trapcli {

/// Full-precision number rendering (17 significant digits, C locale).
std::string num17(double v);

/// One CSV line from preformatted fields, comma-separated, LF-terminated.
std::string csv_row(std::initializer_list<std::string> fields);
std::string csv_row(const std::vector<std::string>& fields);

/// Write via a temp file in the same directory plus rename, so readers
/// never observe a partial file.
void atomic_write_file(const std::string& path, const std::string& content);

}  // namespace trapcli
