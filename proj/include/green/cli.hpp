#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "green/envelope.hpp"
#include "green/ideal.hpp"
#include "green/models.hpp"

namespace green::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kParseError = 2,
  kNoOracle = 3,
  kVacuous = 4,
  kUnwritable = 5,
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct IdealFile {
  ideal::IdealSpec spec;
  std::optional<models::ModelTag> hint;
};

// {"domain": {"kind", "dim"}, "generators": [[{"c": [re, im], "e": [...]}, ...], ...], "model"?}
IdealFile parse_ideal_file(const std::string& text);
IdealFile load_ideal_file(const std::string& path);
std::string serialize_ideal_file(const IdealFile& f);

// Comma-separated "re+imi" tokens, e.g. "0.5,0.25-0.1i,0.3i".
Point parse_point(const std::string& text);
std::string format_complex(Complex z);

// Closed-form model for the file: the pattern match, reconciled with the hint.
// Throws ParseError when the hint contradicts the generators.
std::optional<models::ModelId> resolve_model(const IdealFile& f);

struct CommandResult {
  int exit_code = kOk;
  std::string out;
  std::string err;
};

CommandResult cmd_eval(const IdealFile& f, const Point& x, bool envelope_fallback,
                       const envelope::EnvelopeOptions& opt);

CommandResult cmd_envelope(const IdealFile& f, const Point& x, const envelope::EnvelopeOptions& opt);

struct VerifyConfig {
  std::string suite = "all";  // membership | product | pullback | lelong | all
  std::uint64_t seed = 0;
  std::optional<std::vector<std::uint32_t>> map;
  double inject_offset = 0.0;  // added to the oracle before checking
  std::optional<std::string> out_path;
};

CommandResult cmd_verify(const IdealFile& f, const VerifyConfig& cfg);

// One axis per coordinate: "lo:hi:count[@phase]" (moduli on a linspace with a
// fixed argument) or a fixed complex value.
struct GridAxis {
  std::vector<Complex> values;
};
std::vector<GridAxis> parse_grid_spec(const std::string& text);

CommandResult cmd_grid(const IdealFile& f, const std::vector<GridAxis>& grid, const std::string& out_path,
                       const envelope::EnvelopeOptions& fallback);

// CSV text for the grid (also used by cmd_grid).
std::string grid_csv(const IdealFile& f, const std::vector<GridAxis>& grid,
                     const envelope::EnvelopeOptions& fallback);

CommandResult cmd_reduce(const IdealFile& f, std::size_t k, std::size_t trials, std::uint64_t seed);

// Full command-line entry point.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace green::cli
