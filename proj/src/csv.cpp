#include "spinmkt/csv.hpp"

#include <charconv>
#include <stdexcept>

#include "spinmkt/version.hpp"

namespace spinmkt {

std::string format_double(double v) {
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw std::runtime_error("format_double");
  return std::string(buf, p);
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) s[i] = digits[v & 0xf];
  return s;
}

std::string csv_quote(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

CsvWriter::CsvWriter(const std::string& path) : out_(path, std::ios::binary) {
  if (!out_) throw std::runtime_error("cannot open " + path);
}

void CsvWriter::meta(std::string_view key, std::string_view value) {
  if (header_written_) throw std::logic_error("metadata must precede the header");
  out_ << "# " << key << '=' << value << '\n';
}

void CsvWriter::header(const std::vector<std::string>& cols) {
  header_written_ = true;
  row(cols);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    out_ << csv_quote(cells[i]);
  }
  out_ << '\n';
}

void standard_meta(CsvWriter& w, std::string_view schema, int schema_version,
                   std::uint64_t seed, std::string_view config_canonical) {
  w.meta("tool", kToolName);
  w.meta("tool_version", kToolVersion);
  w.meta("schema", schema);
  w.meta("schema_version", std::to_string(schema_version));
  w.meta("generator", kGeneratorName);
  w.meta("generator_version", kGeneratorVersion);
  w.meta("seed", std::to_string(seed));
  w.meta("config_hash", hex64(fnv1a64(config_canonical)));
}

}  // namespace spinmkt
