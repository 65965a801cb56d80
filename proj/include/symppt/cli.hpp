#pragma once

// Command-line surface: table1, spectrum, scan, qudit-check, witness.
// Exit codes: 0 success, 1 argument error, 2 numerical failure or check
// violation. Floats are printed with 12 significant digits and exact
// rationals as "num/den".

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "symppt/combx.hpp"
#include "symppt/witness.hpp"

namespace symppt::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 2;

inline constexpr double kQuditCheckTolerance = 1e-8;
inline constexpr double kSpectrumCheckTolerance = 1e-10;

enum class Format { Csv, Json };
enum class SpectrumMode { Analytic, Numeric, Both };

struct RunConfig {
  std::optional<int> n;
  std::optional<int> k;
  int d = 2;
  int nmax = 10;
  std::optional<std::string> p;
  std::string p_from = "0";
  std::string p_to = "1";
  int steps = 101;
  std::optional<std::string> witness;
  std::optional<std::string> witness_file;
  SpectrumMode mode = SpectrumMode::Both;
  Format format = Format::Csv;
  std::optional<std::string> out;
  GridSize grid;
  bool validate = false;
  bool threshold = false;
};

struct CommandOutput {
  int exit_code = kExitOk;
  std::string text;
};

// Thrown for invalid argument combinations; mapped to exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string format_double(double v);
// Accepts "0.96774", "30/31" or "1".
ExactRational parse_probability(const std::string& text);
GridSize parse_grid(const std::string& text);

// Reference values of the truncated-moment threshold, N = 4..10, kept as
// published; they are not recomputed.
std::optional<std::string> p_ent_reference(int n);

CommandOutput cmd_table1(const RunConfig& cfg);
CommandOutput cmd_spectrum(const RunConfig& cfg);
CommandOutput cmd_scan(const RunConfig& cfg);
CommandOutput cmd_qudit_check(const RunConfig& cfg);
CommandOutput cmd_witness(const RunConfig& cfg);

// Parses argv (args[0] is the program name), runs the command and writes
// its output to `out` (or --out PATH). Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace symppt::cli
