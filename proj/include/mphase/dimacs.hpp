#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mphase/formula.hpp"

namespace mphase {

struct ParseDiagnostic {
  enum class Kind {
    BadHeader,
    LiteralOutOfRange,
    MissingTerminator,
    UnexpectedToken,
    EmptyFile
  };

  std::size_t line = 1;    // 1-based
  std::size_t column = 1;  // 1-based
  Kind kind = Kind::UnexpectedToken;
  std::string message;

  std::string to_string() const;
};

std::string_view kind_name(ParseDiagnostic::Kind kind);

class ParseResult {
 public:
  ParseResult(Formula f) : value_(std::move(f)) {}
  ParseResult(ParseDiagnostic d) : value_(std::move(d)) {}

  bool ok() const { return std::holds_alternative<Formula>(value_); }
  explicit operator bool() const { return ok(); }

  const Formula& formula() const& { return std::get<Formula>(value_); }
  Formula&& formula() && { return std::get<Formula>(std::move(value_)); }
  const ParseDiagnostic& diagnostic() const {
    return std::get<ParseDiagnostic>(value_);
  }

 private:
  std::variant<Formula, ParseDiagnostic> value_;
};

/// Reads DIMACS CNF. Never throws on malformed input.
ParseResult parse_dimacs(std::string_view text);

/// Reads a file from disk; an unreadable file yields an EmptyFile diagnostic.
ParseResult read_dimacs_file(const std::string& path);

/// Serializes the normalized pre-extraction clause set.
std::string write_dimacs(const Formula& f);

struct SolverVerdict {
  enum class Status { Sat, Unsat, Unknown };

  Status status = Status::Unknown;
  std::optional<std::vector<bool>> model;  // present iff Sat

  static SolverVerdict sat(std::vector<bool> model) {
    return {Status::Sat, std::move(model)};
  }
  static SolverVerdict unsat() { return {Status::Unsat, std::nullopt}; }
  static SolverVerdict unknown() { return {Status::Unknown, std::nullopt}; }

  bool is_sat() const { return status == Status::Sat; }
  bool is_unsat() const { return status == Status::Unsat; }
  bool is_unknown() const { return status == Status::Unknown; }
};

std::string_view status_name(SolverVerdict::Status s);

/// SAT-competition output: `s ...` line, then `v` lines when satisfiable.
std::string emit_verdict(const SolverVerdict& verdict);

/// 10 for Sat, 20 for Unsat, 0 otherwise.
int exit_code(const SolverVerdict& verdict);

}  // namespace mphase
