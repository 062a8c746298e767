#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "framelab/disk.hpp"
#include "framelab/hardy.hpp"
#include "framelab/io.hpp"
#include "framelab/types.hpp"

namespace framelab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitExpectation = 2;

/// Bad command line or config file. Always maps to exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double parse_real(const std::string& token);
std::vector<double> parse_real_list(const std::string& text);

/// "0.3", "-2e-3", "0.3+0.4i", "0.5-1e-2i", "-0.2i", "i".
cplx parse_complex(const std::string& token);
/// Comma or semicolon separated complex tokens.
std::vector<cplx> parse_complex_list(const std::string& text);
std::string format_complex(cplx z);

/// "re,im:mult,re,im:mult,..." with ":mult" optional (default 1).
std::vector<BlaschkeZero> parse_zeros(const std::string& text);

/// Coefficients a,b,c,d of (az + b)/(cz + d).
LinearFractionalMap parse_symbol(const std::string& text);

/// one | kernel:p | bn:p,c | poly:c0,c1,...
RationalWeight parse_weight_kind(const std::string& text);

/// "name:arg" -> {name, arg}; no colon gives an empty arg.
std::pair<std::string, std::string> split_kind(const std::string& text);
std::size_t parse_count(const std::string& token, const std::string& what);

/// Strict config file. `known` answers whether a key (underscores read as
/// dashes) names an option of the subcommand; unknown keys are rejected with
/// file:line diagnostics. Returns command-line tokens equivalent to the file,
/// plus the "experiment" field when present.
struct ConfigArgs {
  std::vector<std::string> tokens;
  std::optional<std::string> experiment;
};

nlohmann::json read_config_file(const std::string& path, std::string* raw_out = nullptr);
ConfigArgs config_to_args(const std::string& path,
                          const std::function<bool(const std::string&)>& known,
                          const std::function<bool(const std::string&)>& is_flag);
/// 1-based line of the first `"key":` in the raw text, 0 when not found.
std::size_t key_line(const std::string& raw, const std::string& key);

struct Output {
  std::string command;
  nlohmann::json parameters = nlohmann::json::object();
  std::optional<std::uint64_t> seed;
  nlohmann::json report = nlohmann::json::object();
  io::Table table;
  bool verdict = true;
};

/// json: {"meta", "report", "rows"}; csv: '#' metadata lines then the table.
void write_output(const Output& out, const std::string& format, std::ostream& os);

}  // namespace framelab::cli
