#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace spinmkt {

// Shortest round-trip decimal form; the same value always prints the same
// bytes, which is what the byte-identical rerun contract rests on.
std::string format_double(double v);

std::uint64_t fnv1a64(std::string_view s);
std::string hex64(std::uint64_t v);

// CSV with '#' key=value metadata lines above an RFC-4180 header/body.
// No timestamps anywhere: equal inputs must produce equal bytes.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);
  void meta(std::string_view key, std::string_view value);
  void header(const std::vector<std::string>& cols);
  void row(const std::vector<std::string>& cells);
  bool good() const { return out_.good(); }

 private:
  std::ofstream out_;
  bool header_written_ = false;
};

std::string csv_quote(std::string_view field);

// The shared metadata block every artifact carries.
void standard_meta(CsvWriter& w, std::string_view schema, int schema_version,
                   std::uint64_t seed, std::string_view config_canonical);

}  // namespace spinmkt
