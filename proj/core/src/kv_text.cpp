#include "belpm/kv_text.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include "belpm/error.hpp"

namespace belpm {

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  return {buf, res.ptr};
}

std::string format_doubles(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += format_double(values[i]);
  }
  return out;
}

std::string_view trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r\n");
  return text.substr(first, last - first + 1);
}

double parse_double(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw Error(ErrorCode::ParseError, "not a number: '" + std::string(text) + "'");
  }
  return value;
}

std::int64_t parse_int(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  std::int64_t value = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw Error(ErrorCode::ParseError, "not an integer: '" + std::string(text) + "'");
  }
  return value;
}

std::size_t parse_size(std::string_view text) {
  const auto v = parse_int(text);
  if (v < 0) throw Error(ErrorCode::ParseError, "expected a non-negative integer");
  return static_cast<std::size_t>(v);
}

std::vector<double> parse_doubles(std::string_view text) {
  std::vector<double> out;
  text = trim(text);
  if (text.empty()) return out;
  std::size_t pos = 0;
  while (true) {
    const auto comma = text.find(',', pos);
    out.push_back(parse_double(text.substr(pos, comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

KvDocument KvDocument::parse(std::string_view text) {
  KvDocument doc;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    if (key.empty()) throw ParseError(line_no, "empty key");
    if (doc.contains(key)) throw ParseError(line_no, "duplicate key '" + std::string(key) + "'");
    doc.entries_.emplace_back(std::string(key), std::string(trim(line.substr(eq + 1))));
  }
  return doc;
}

void KvDocument::set(std::string key, std::string value) {
  for (auto& [k, v] : entries_) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  entries_.emplace_back(std::move(key), std::move(value));
}

bool KvDocument::contains(std::string_view key) const { return find(key).has_value(); }

std::optional<std::string_view> KvDocument::find(std::string_view key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return std::string_view(v);
  }
  return std::nullopt;
}

std::string_view KvDocument::get(std::string_view key) const {
  const auto v = find(key);
  if (!v) throw Error(ErrorCode::ConfigError, "missing key '" + std::string(key) + "'");
  return *v;
}

namespace {
template <typename F>
auto with_key(std::string_view key, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ParseError) throw;
    throw Error(ErrorCode::ConfigError, "key '" + std::string(key) + "': " + e.what());
  }
}
}  // namespace

double KvDocument::get_double(std::string_view key) const {
  return with_key(key, [&] { return parse_double(get(key)); });
}

std::size_t KvDocument::get_size(std::string_view key) const {
  return with_key(key, [&] { return parse_size(get(key)); });
}

std::vector<double> KvDocument::get_doubles(std::string_view key) const {
  return with_key(key, [&] { return parse_doubles(get(key)); });
}

std::string KvDocument::str() const {
  std::string out;
  for (const auto& [k, v] : entries_) {
    out += k;
    out += " = ";
    out += v;
    out += '\n';
  }
  return out;
}

}  // namespace belpm
