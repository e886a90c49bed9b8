#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace epfamily {

/// One observation: a time and whether the event was observed (true) or the
/// record is right-censored (false).
struct Record {
  double time;
  bool event;
};

/// The sample D = {(t_i, delta_i)}. Order is preserved from the input.
struct CensoredSample {
  std::vector<Record> records;

  std::size_t size() const { return records.size(); }
  std::size_t n_events() const;
  std::size_t n_censored() const { return records.size() - n_events(); }
};

/// CSV with header "time,status", status 1 = event, 0 = censored.
/// Throws std::runtime_error with a line number on any malformed row,
/// negative or non-finite time, or missing header.
CensoredSample parse_csv(std::istream& in);

/// Raw mode: whitespace-separated values, a trailing '+' marks censoring
/// (e.g. "71 302+ 84"). Same validation and error reporting, token-numbered.
CensoredSample parse_raw(std::istream& in);

/// File loaders over the two parsers; errors are prefixed with the path.
CensoredSample load_csv(const std::string& path);
CensoredSample load_raw(const std::string& path);

} // namespace epfamily
