#include "doctest.h"

#include "epfamily/data.hpp"

#include <sstream>
#include <stdexcept>
#include <string>

using namespace epfamily;

namespace {
std::string data_path(const char* name) {
  return std::string(EPFAMILY_DATA_DIR) + "/" + name;
}

std::string thrown_message(void (*fn)(const std::string&), const std::string& text) {
  try {
    fn(text);
  } catch (const std::runtime_error& e) {
    return e.what();
  }
  return "";
}

void run_csv(const std::string& text) {
  std::istringstream in(text);
  parse_csv(in);
}

void run_raw(const std::string& text) {
  std::istringstream in(text);
  parse_raw(in);
}
} // namespace

TEST_CASE("csv happy path") {
  std::istringstream in("time,status\n1.5,1\n2,0\n0,1\n");
  CensoredSample s = parse_csv(in);
  REQUIRE(s.size() == 3);
  CHECK(s.records[0].time == 1.5);
  CHECK(s.records[0].event);
  CHECK_FALSE(s.records[1].event);
  CHECK(s.records[2].time == 0.0);
  CHECK(s.n_events() == 2);
  CHECK(s.n_censored() == 1);
}

TEST_CASE("csv error reporting carries line numbers") {
  CHECK(thrown_message(run_csv, "nope\n1,1\n").find("line 1") != std::string::npos);
  CHECK(thrown_message(run_csv, "time,status\n1,1\nx,1\n").find("line 3") != std::string::npos);
  CHECK(thrown_message(run_csv, "time,status\n-2,1\n").find("line 2") != std::string::npos);
  CHECK(thrown_message(run_csv, "time,status\n1,2\n").find("line 2") != std::string::npos);
  CHECK(thrown_message(run_csv, "time,status\n1\n").find("line 2") != std::string::npos);
  CHECK(thrown_message(run_csv, "time,status\ninf,1\n").find("line 2") != std::string::npos);
  CHECK_THROWS_AS(run_csv(""), std::runtime_error);
}

TEST_CASE("csv tolerates blank lines and whitespace") {
  std::istringstream in("time,status\n\n 1.5 , 1 \n\n2,0\n");
  CensoredSample s = parse_csv(in);
  REQUIRE(s.size() == 2);
  CHECK(s.records[0].time == 1.5);
  CHECK(s.records[0].event);
}

TEST_CASE("raw mode parses trailing plus as censoring") {
  std::istringstream in("3 7+ 2.5\n1+ 4\n");
  CensoredSample s = parse_raw(in);
  REQUIRE(s.size() == 5);
  CHECK(s.records[0].event);
  CHECK_FALSE(s.records[1].event);
  CHECK(s.records[1].time == 7.0);
  CHECK(s.records[2].time == 2.5);
  CHECK_FALSE(s.records[3].event);
  CHECK(s.n_censored() == 2);
}

TEST_CASE("raw mode errors are token-numbered") {
  CHECK(thrown_message(run_raw, "1 2 x 4\n").find("3") != std::string::npos);
  CHECK(thrown_message(run_raw, "1 -2\n").find("2") != std::string::npos);
  CHECK(thrown_message(run_raw, "5 6++\n").find("2") != std::string::npos);
}

TEST_CASE("raw mode accepts empty input as an empty sample") {
  // rejecting an empty dataset is the caller's policy, not the parser's
  std::istringstream in("  \n \n");
  CHECK(parse_raw(in).size() == 0);
}

TEST_CASE("bundled dataset loads in both forms and they agree") {
  CensoredSample csv = load_csv(data_path("aircraft.csv"));
  CensoredSample raw = load_raw(data_path("aircraft_raw.txt"));
  REQUIRE(csv.size() == 131);
  REQUIRE(raw.size() == 131);
  CHECK(csv.n_events() == 120);
  CHECK(csv.n_censored() == 11);
  for (std::size_t i = 0; i < csv.size(); ++i) {
    CHECK(csv.records[i].time == raw.records[i].time);
    CHECK(csv.records[i].event == raw.records[i].event);
  }
  CHECK(csv.records[0].time == 36.0);
  CHECK(csv.records[130].time == 115.0);
  CHECK_FALSE(csv.records[130].event);
}

TEST_CASE("missing file is reported with the path") {
  try {
    load_csv("/nonexistent/zzz.csv");
    FAIL("expected a throw");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("zzz.csv") != std::string::npos);
  }
}
