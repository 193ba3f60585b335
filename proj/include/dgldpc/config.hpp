#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dgldpc/ensemble.hpp"
#include "dgldpc/error.hpp"
#include "dgldpc/gf2/code.hpp"

// Ensemble description files, JSON schema version 1:
//
//   {
//     "schema": 1,
//     "name": "...",                      optional
//     "vn": [ {"code": {...}, "lambda": 0.5}, ... ],
//     "cn": [ {"code": {...}, "rho": 1.0}, ... ],
//     "reference": {"design_rate": r, "cv_product": c, "alpha_star": a}
//   }                                     reference is optional
//
// with code objects {"kind": "repetition", "q": 3},
// {"kind": "spc", "q": 7, "form": "cyclic"}, {"kind": "hamming74"} or
// {"kind": "explicit", "rows": ["1100", "0011"]}.
namespace dgldpc::config {

inline constexpr int kSchemaVersion = 1;

// Syntax or schema error; line and column are 1-based and 0 when the
// position is unknown (schema errors carry a JSON pointer instead).
class ConfigError : public ValidationError {
 public:
  ConfigError(const std::string& message, std::string source, int line,
              int column, std::string pointer = {});

  const std::string& source() const { return source_; }
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& pointer() const { return pointer_; }

 private:
  std::string source_;
  int line_;
  int column_;
  std::string pointer_;
};

struct CodeSpec {
  std::string kind;  // repetition, spc, hamming74, explicit
  int q = 0;
  gf2::SpcForm form = gf2::SpcForm::systematic;
  std::vector<std::string> rows;

  friend bool operator==(const CodeSpec&, const CodeSpec&) = default;
};

gf2::BinaryLinearCode build_code(const CodeSpec& spec);

// Best-effort inverse of build_code: named kinds when the generator matches
// one exactly, explicit rows otherwise.
CodeSpec describe_code(const gf2::BinaryLinearCode& code);

// Command-line form: "repetition 3", "spc 7 cyclic", "hamming74",
// "explicit 1100 0011".
CodeSpec parse_code_words(const std::vector<std::string>& words);

struct Reference {
  std::optional<double> design_rate;
  std::optional<double> cv_product;
  std::optional<double> alpha_star;
};

struct Entry {
  CodeSpec code;
  double fraction = 0.0;
};

struct EnsembleConfig {
  std::string name;
  std::vector<Entry> vn;
  std::vector<Entry> cn;
  Reference reference;
};

EnsembleConfig parse_config(std::string_view text,
                            const std::string& source = "<input>");
EnsembleConfig load_config(const std::filesystem::path& path);

Ensemble to_ensemble(const EnsembleConfig& config);

// Schema-v1 JSON for an ensemble, raw fractions at full precision.
std::string emit_config(const Ensemble& ensemble, const std::string& name = {},
                        const Reference& reference = {});

}  // namespace dgldpc::config
