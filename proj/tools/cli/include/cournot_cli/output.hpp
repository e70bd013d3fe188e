#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "cournot_cli/config.hpp"

namespace cournot::cli {

/// Fixed 17-significant-digit scientific form; "nan" for NaN.
std::string format_number(double v);

/// `# command=<name>` followed by the echoed configuration, one
/// `# key=value` line each.
void write_header(std::ostream& os, std::string_view command, const RunConfig& cfg);

/// Streaming JSON with two-space indentation. Non-finite numbers are
/// written as null.
class JsonWriter {
 public:
  explicit JsonWriter(std::ostream& os) : os_(os) {}

  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(std::string_view name);
  JsonWriter& value(double v);
  JsonWriter& value(long v);
  JsonWriter& value(int v) { return value(static_cast<long>(v)); }
  JsonWriter& value(std::size_t v) { return value(static_cast<long>(v)); }
  JsonWriter& value(bool v);
  JsonWriter& value(std::string_view v);
  JsonWriter& value(const char* v) { return value(std::string_view(v)); }
  JsonWriter& null();

  /// `config` object with the echoed keys; numbers as numbers.
  JsonWriter& config(std::string_view command, const RunConfig& cfg);
  /// Terminates the document with a newline.
  void finish();

 private:
  void prefix();
  void raw(std::string_view text);
  void indent();

  std::ostream& os_;
  std::vector<bool> first_;  // per open container: no element written yet
  std::vector<bool> is_array_;
  bool after_key_ = false;
};

}  // namespace cournot::cli
