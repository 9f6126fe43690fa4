#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace zetaburst::cli {

enum ExitCode : int { kOk = 0, kDomainError = 2, kResourceError = 3 };

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct BenchRecord {
  std::string task;
  long digits = 0;  // decimal digits, or the index n for exact-number tasks
  std::string algorithm;
  double seconds = 0.0;
  std::int64_t terms = 0;
  long peak_prec = 0;
  std::string digest;  // leading 32 digits and radius exponent
  std::string error;   // empty on success
};

struct ScalingRow {
  std::string task;
  std::string algorithm;
  long d1 = 0;
  long d2 = 0;
  double exponent = 0.0;  // log(t2/t1) / log(d2/d1)
};

struct BenchTable {
  std::vector<BenchRecord> records;
  std::vector<ScalingRow> scaling;
};

/// Runs every (task, digits, algorithm) cell of a spec such as
///   {"tasks": [{"task": "zeta-half", "digits": [1000, 3162],
///               "algorithms": ["afe", "em"]},
///              {"task": "bernoulli", "n": [1000], "algorithms": ["afe"]}]}
/// Cell failures are recorded and the suite continues.
BenchTable bench_suite(const std::string& spec_json, bool parallel = false);

/// Runs a single cell.
BenchRecord run_cell(const std::string& task, long digits, const std::string& algorithm);

std::string to_csv(const BenchTable& t);
std::string to_json(const BenchTable& t);
std::string to_text(const BenchTable& t);

/// Working precision in bits for a number of decimal digits.
long digits_to_bits(long digits);

}  // namespace zetaburst::cli
