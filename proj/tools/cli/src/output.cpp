#include "cournot_cli/output.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace cournot::cli {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

void write_header(std::ostream& os, std::string_view command, const RunConfig& cfg) {
  os << "# command=" << command << '\n';
  for (const auto& k : config_keys()) {
    if (!k.echoed) continue;
    if (auto text = field_text(cfg, k)) os << "# " << k.name << '=' << *text << '\n';
  }
}

namespace {

std::string escape(std::string_view s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out;
}

}  // namespace

void JsonWriter::indent() {
  os_ << '\n';
  for (std::size_t i = 0; i < first_.size(); ++i) os_ << "  ";
}

void JsonWriter::prefix() {
  if (after_key_) {
    after_key_ = false;
    return;
  }
  if (first_.empty()) return;
  if (!first_.back()) os_ << ',';
  first_.back() = false;
  indent();
}

void JsonWriter::raw(std::string_view text) {
  prefix();
  os_ << text;
}

JsonWriter& JsonWriter::begin_object() {
  raw("{");
  first_.push_back(true);
  is_array_.push_back(false);
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  raw("[");
  first_.push_back(true);
  is_array_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  const bool empty = first_.back();
  first_.pop_back();
  is_array_.pop_back();
  if (!empty) indent();
  os_ << '}';
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  const bool empty = first_.back();
  first_.pop_back();
  is_array_.pop_back();
  if (!empty) indent();
  os_ << ']';
  return *this;
}

JsonWriter& JsonWriter::key(std::string_view name) {
  prefix();
  os_ << '"' << escape(name) << "\": ";
  after_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(double v) {
  if (!std::isfinite(v)) return null();
  raw(format_number(v));
  return *this;
}

JsonWriter& JsonWriter::value(long v) {
  raw(std::to_string(v));
  return *this;
}

JsonWriter& JsonWriter::value(bool v) {
  raw(v ? "true" : "false");
  return *this;
}

JsonWriter& JsonWriter::value(std::string_view v) {
  raw("\"" + escape(v) + "\"");
  return *this;
}

JsonWriter& JsonWriter::null() {
  raw("null");
  return *this;
}

JsonWriter& JsonWriter::config(std::string_view command, const RunConfig& cfg) {
  key("config").begin_object();
  key("command").value(command);
  for (const auto& k : config_keys()) {
    if (!k.echoed) continue;
    auto text = field_text(cfg, k);
    if (!text) continue;
    key(k.name);
    if (std::holds_alternative<std::optional<std::string> RunConfig::*>(k.field)) {
      value(*text);
    } else {
      raw(*text);
    }
  }
  return end_object();
}

void JsonWriter::finish() { os_ << '\n'; }

}  // namespace cournot::cli
