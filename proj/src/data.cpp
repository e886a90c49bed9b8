#include "epfamily/data.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace epfamily {

std::size_t CensoredSample::n_events() const {
  std::size_t c = 0;
  for (const Record& r : records) c += r.event ? 1 : 0;
  return c;
}

namespace {

thread_local const char* g_unit = "line";

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw std::runtime_error(std::string(g_unit) + " " + std::to_string(line) + ": " + msg);
}

double parse_time(const std::string& tok, std::size_t line) {
  std::size_t pos = 0;
  double t = 0.0;
  try {
    t = std::stod(tok, &pos);
  } catch (const std::exception&) {
    fail(line, "not a number: '" + tok + "'");
  }
  if (pos != tok.size()) fail(line, "trailing characters in '" + tok + "'");
  if (!std::isfinite(t) || t < 0.0) fail(line, "time must be finite and >= 0, got '" + tok + "'");
  return t;
}

std::string strip(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

} // namespace

CensoredSample parse_csv(std::istream& in) {
  CensoredSample out;
  g_unit = "line";
  std::string line;
  std::size_t lineno = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = strip(line);
    if (s.empty()) continue;
    if (!saw_header) {
      if (s != "time,status") fail(lineno, "expected header 'time,status', got '" + s + "'");
      saw_header = true;
      continue;
    }
    std::size_t comma = s.find(',');
    if (comma == std::string::npos) fail(lineno, "expected 'time,status' row, got '" + s + "'");
    double t = parse_time(strip(s.substr(0, comma)), lineno);
    std::string st = strip(s.substr(comma + 1));
    if (st != "0" && st != "1") fail(lineno, "status must be 0 or 1, got '" + st + "'");
    out.records.push_back({t, st == "1"});
  }
  if (!saw_header) throw std::runtime_error("line 1: missing header 'time,status'");
  return out;
}

CensoredSample parse_raw(std::istream& in) {
  CensoredSample out;
  g_unit = "token";
  std::string tok;
  std::size_t tokno = 0;
  while (in >> tok) {
    ++tokno;
    bool censored = !tok.empty() && tok.back() == '+';
    if (censored) tok.pop_back();
    if (tok.empty()) fail(tokno, "empty value before '+'");
    out.records.push_back({parse_time(tok, tokno), !censored});
  }
  return out;
}

namespace {
CensoredSample load(const std::string& path, CensoredSample (*parse)(std::istream&)) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error(path + ": cannot open");
  try {
    return parse(f);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}
} // namespace

CensoredSample load_csv(const std::string& path) { return load(path, parse_csv); }
CensoredSample load_raw(const std::string& path) { return load(path, parse_raw); }

} // namespace epfamily
