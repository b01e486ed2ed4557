#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fqav/abelian_variety.hpp"
#include "fqav/error.hpp"
#include "fqav/group_action.hpp"

namespace fqav {

inline constexpr int kSchemaVersion = 1;

// Input rejected before any mathematics runs. `code` is one of "syntax",
// "schema", "not-endomorphism", "bad-rational", "not-finite-order".
// `field` is a JSON pointer; `line` is set for syntax errors.
class InputError : public MathError {
 public:
  InputError(std::string code, std::string field, std::optional<std::size_t> line,
             const std::string& message)
      : MathError(message), code_(std::move(code)), field_(std::move(field)), line_(line) {}

  const std::string& code() const { return code_; }
  const std::string& field() const { return field_; }
  std::optional<std::size_t> line() const { return line_; }

 private:
  std::string code_;
  std::string field_;
  std::optional<std::size_t> line_;
};

struct ActionInput {
  std::vector<EllipticFactor> factors;
  std::vector<AffineAutomorphism> generators;
  std::size_t group_cap = kDefaultGroupCap;

  AbelianVarietyModel variety() const { return AbelianVarietyModel(factors); }
  friend bool operator==(const ActionInput&, const ActionInput&) = default;
};

// Generic factors without a label get "_<index>", so unlabeled curves are
// pairwise non-isogenous.
ActionInput parse_input(std::string_view text);
// Canonical JSON for the input; parse_input(serialize_input(x)) == x.
std::string serialize_input(const ActionInput& input);

enum class Command { Validate, Classify, Ramification, ReidTai, Decompose, Report };
enum class Format { Json, Markdown };

std::optional<Command> parse_command(std::string_view name);
std::string to_string(Command cmd);

struct CommandOptions {
  std::optional<std::size_t> cap;      // overrides options.group_cap
  std::optional<unsigned> conductor;   // cyclotomic field override for ages
  Format format = Format::Json;
};

struct CommandResult {
  int exit_code = 0;        // 0 ok, 1 input error, 2 certificate failure
  std::string document;     // empty unless exit_code == 0
  std::string diagnostics;
};

CommandResult run_command(Command cmd, std::string_view input_text,
                          const CommandOptions& options = {});

// Parses a JSON report and prints it back in the canonical layout.
std::string reserialize_report(std::string_view json_text);

}  // namespace fqav
