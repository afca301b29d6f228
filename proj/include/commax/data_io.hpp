// Apache License, Version 2.0, refer to LICENSE.txt
//
// Input parsing for the command-line tools: frequency tables (CSV with a
// `k,count` header), raw per-trial counts (one integer per line, m supplied
// by the caller), and flat key=value config files.  All parse failures carry
// the 1-based line number.

#ifndef COMMAX_DATA_IO_HPP
#define COMMAX_DATA_IO_HPP

#include <istream>
#include <map>
#include <stdexcept>
#include <string>

#include "commax/inference.hpp"

namespace commax {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string &what, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line(line) {}
  int line;
};

// CSV with header `k,count`; missing k rows get count 0.  m defaults to the
// largest k present; a nonnegative m_override must cover every row.
FrequencyTable read_frequency_csv(std::istream &in, int m_override = -1);
FrequencyTable read_frequency_csv_file(const std::string &path,
                                       int m_override = -1);

// One integer per line in 0..m; blank lines are skipped.
FrequencyTable read_raw_counts(std::istream &in, int m);
FrequencyTable read_raw_counts_file(const std::string &path, int m);

// key=value lines; '#' starts a comment; keys must be unique.
std::map<std::string, std::string> read_key_value_config(std::istream &in);
std::map<std::string, std::string> read_key_value_config_file(
    const std::string &path);

}  // namespace commax

#endif  // COMMAX_DATA_IO_HPP
