#pragma once

#include <optional>
#include <string>
#include <vector>

#include "alc/padic.hpp"

namespace alc {

// Job files are sectioned key-value text:
//
//   [run]
//   seed = 7
//
//   [job small]
//   command = solve
//   p = 7
//   N = 2
//   n = 1
//   q = 2
//
// Matrices are row-major whitespace-separated entries. Over a cyclotomic field
// an entry is a bracketed coefficient list on powers of zeta, e.g. [1,1] for
// 1 + zeta. `q` gives one metric used for every i; `q1`, ..., `qn` give a tuple.
// '#' starts a comment.

struct JobConfig {
  std::string name;
  std::string command;
  int line = 0;  // line of the section header
  i64 p = 0;
  std::vector<i64> primes;  // mixed-trace: p p'
  int N = 2;
  int n = 0;
  int m = 1;  // cyclotomic conductor, 1 for Q
  int factor = 0;
  std::vector<int> gauge;  // a_1, ..., a_n with a_1 = 1
  // metric i, entry (row-major), coefficients on powers of zeta
  std::vector<std::vector<std::vector<i64>>> q;
  std::optional<i64> d, d1, d2;
  std::vector<i64> grid;          // conformal horizontality grid
  std::vector<int> dims;          // etale-check: n values for D(1, ..., 1)
  std::string engine = "auto";    // symbolic | pointwise | auto
  int points = 50;
  std::optional<u64> seed;

  bool cyclotomic() const { return m > 1; }
  std::vector<std::vector<i64>> integer_metrics() const;
};

struct RunConfig {
  std::optional<u64> seed;
  std::optional<std::string> report;
  std::vector<JobConfig> jobs;
};

// Throws ConfigError with "<source>:<line>: <field>: <message>".
RunConfig parse_config(const std::string& text, const std::string& source = "config");
RunConfig load_config(const std::string& path);

const std::vector<std::string>& known_commands();

}  // namespace alc
