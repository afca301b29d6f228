// Apache License, Version 2.0, refer to LICENSE.txt

#include "commax/data_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <vector>

namespace commax {

namespace {

std::string trim(const std::string &s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

long long parse_integer(const std::string &text, int line,
                        const char *what) {
  try {
    std::size_t used = 0;
    const long long value = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception &) {
    throw ParseError(std::string("expected an integer ") + what + ", got '" +
                         text + "'",
                     line);
  }
}

std::ifstream open_or_throw(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  return in;
}

}  // namespace

FrequencyTable read_frequency_csv(std::istream &in, int m_override) {
  std::string line_text;
  int line = 0;
  if (!std::getline(in, line_text)) {
    throw ParseError("empty file, expected header 'k,count'", 1);
  }
  ++line;
  if (trim(line_text) != "k,count") {
    throw ParseError("expected header 'k,count', got '" + trim(line_text) +
                         "'",
                     line);
  }
  std::map<int, long long> rows;
  while (std::getline(in, line_text)) {
    ++line;
    const std::string text = trim(line_text);
    if (text.empty()) continue;
    const auto comma = text.find(',');
    if (comma == std::string::npos) {
      throw ParseError("expected 'k,count', got '" + text + "'", line);
    }
    const long long k =
        parse_integer(trim(text.substr(0, comma)), line, "for k");
    const long long count =
        parse_integer(trim(text.substr(comma + 1)), line, "for count");
    if (k < 0) throw ParseError("k must be >= 0", line);
    if (count < 0) throw ParseError("count must be >= 0", line);
    if (!rows.emplace(static_cast<int>(k), count).second) {
      throw ParseError("duplicate row for k = " + std::to_string(k), line);
    }
  }
  if (rows.empty()) throw ParseError("no data rows", line + 1);
  const int max_k = rows.rbegin()->first;
  int m = m_override >= 0 ? m_override : max_k;
  if (max_k > m) {
    throw ParseError("k = " + std::to_string(max_k) + " exceeds m = " +
                         std::to_string(m),
                     line);
  }
  std::vector<std::int64_t> counts(m + 1, 0);
  for (const auto &[k, count] : rows) counts[k] = count;
  return FrequencyTable(m, std::move(counts));
}

FrequencyTable read_frequency_csv_file(const std::string &path,
                                       int m_override) {
  auto in = open_or_throw(path);
  return read_frequency_csv(in, m_override);
}

FrequencyTable read_raw_counts(std::istream &in, int m) {
  if (m < 1) throw ParseError("m must be >= 1", 0);
  std::vector<std::int64_t> counts(m + 1, 0);
  std::string line_text;
  int line = 0;
  bool any = false;
  while (std::getline(in, line_text)) {
    ++line;
    const std::string text = trim(line_text);
    if (text.empty()) continue;
    const long long k = parse_integer(text, line, "count");
    if (k < 0 || k > m) {
      throw ParseError("k = " + std::to_string(k) + " outside 0.." +
                           std::to_string(m),
                       line);
    }
    ++counts[k];
    any = true;
  }
  if (!any) throw ParseError("no observations", line + 1);
  return FrequencyTable(m, std::move(counts));
}

FrequencyTable read_raw_counts_file(const std::string &path, int m) {
  auto in = open_or_throw(path);
  return read_raw_counts(in, m);
}

std::map<std::string, std::string> read_key_value_config(std::istream &in) {
  std::map<std::string, std::string> config;
  std::string line_text;
  int line = 0;
  while (std::getline(in, line_text)) {
    ++line;
    std::string text = line_text;
    const auto hash = text.find('#');
    if (hash != std::string::npos) text = text.substr(0, hash);
    text = trim(text);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw ParseError("expected 'key = value', got '" + text + "'", line);
    }
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key.empty()) throw ParseError("empty key", line);
    if (!config.emplace(key, value).second) {
      throw ParseError("duplicate key '" + key + "'", line);
    }
  }
  return config;
}

std::map<std::string, std::string> read_key_value_config_file(
    const std::string &path) {
  auto in = open_or_throw(path);
  return read_key_value_config(in);
}

}  // namespace commax
