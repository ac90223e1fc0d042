#include "mphase/dimacs.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace mphase {

std::string_view kind_name(ParseDiagnostic::Kind kind) {
  switch (kind) {
    case ParseDiagnostic::Kind::BadHeader:
      return "BadHeader";
    case ParseDiagnostic::Kind::LiteralOutOfRange:
      return "LiteralOutOfRange";
    case ParseDiagnostic::Kind::MissingTerminator:
      return "MissingTerminator";
    case ParseDiagnostic::Kind::UnexpectedToken:
      return "UnexpectedToken";
    case ParseDiagnostic::Kind::EmptyFile:
      return "EmptyFile";
  }
  return "?";
}

std::string ParseDiagnostic::to_string() const {
  std::ostringstream os;
  os << line << ':' << column << ": " << kind_name(kind) << ": " << message;
  return os.str();
}

namespace {

struct Token {
  std::string_view text;
  std::size_t line;
  std::size_t column;
};

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f';
}

std::vector<Token> split_line(std::string_view line, std::size_t line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    if (i >= line.size()) break;
    std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    out.push_back({line.substr(start, i - start), line_no, start + 1});
  }
  return out;
}

std::optional<long long> to_integer(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  long long value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    return std::nullopt;
  return value;
}

// Bounds the occurrence-list allocation for hostile headers.
constexpr long long kMaxVariables = 1LL << 25;

ParseDiagnostic diag(const Token& t, ParseDiagnostic::Kind kind,
                     std::string message) {
  return ParseDiagnostic{t.line, t.column, kind, std::move(message)};
}

}  // namespace

ParseResult parse_dimacs(std::string_view text) {
  using Kind = ParseDiagnostic::Kind;

  bool have_header = false;
  long long num_vars = 0;
  long long declared_clauses = 0;
  std::vector<std::vector<Lit>> clauses;
  std::vector<Lit> current;
  std::optional<Token> clause_start;
  std::optional<Token> last_token;
  std::size_t line_no = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    ++line_no;
    pos = eol + 1;

    auto tokens = split_line(line, line_no);
    if (tokens.empty()) continue;
    const Token& first = tokens.front();

    if (first.text.front() == 'c') continue;
    // SATLIB files end with a `%` sentinel.
    if (first.text.front() == '%') break;

    if (first.text == "p") {
      if (have_header)
        return diag(first, Kind::BadHeader, "duplicate problem line");
      if (tokens.size() != 4 || tokens[1].text != "cnf")
        return diag(first, Kind::BadHeader, "expected 'p cnf <vars> <clauses>'");
      auto v = to_integer(tokens[2].text);
      auto c = to_integer(tokens[3].text);
      if (!v || *v < 0 || *v > kMaxVariables)
        return diag(tokens[2], Kind::BadHeader, "invalid variable count");
      if (!c || *c < 0)
        return diag(tokens[3], Kind::BadHeader, "invalid clause count");
      have_header = true;
      num_vars = *v;
      declared_clauses = *c;
      continue;
    }

    for (const Token& t : tokens) {
      last_token = t;
      if (!have_header)
        return diag(t, Kind::BadHeader, "clause data before problem line");
      auto value = to_integer(t.text);
      if (!value)
        return diag(t, Kind::UnexpectedToken,
                    "expected integer literal, got '" + std::string(t.text) +
                        "'");
      if (*value == 0) {
        clauses.push_back(std::move(current));
        current.clear();
        clause_start.reset();
        continue;
      }
      if (*value > num_vars || *value < -num_vars)
        return diag(t, Kind::LiteralOutOfRange,
                    "literal " + std::string(t.text) + " exceeds " +
                        std::to_string(num_vars) + " variables");
      if (!clause_start) clause_start = t;
      current.push_back(Lit::from_dimacs(static_cast<int>(*value)));
    }
  }

  if (!have_header) {
    return ParseDiagnostic{1, 1, Kind::EmptyFile,
                           last_token ? "missing problem line"
                                      : "no problem line in input"};
  }
  if (!current.empty()) {
    const Token& t = last_token ? *last_token : *clause_start;
    return diag(t, Kind::MissingTerminator,
                "last clause is not terminated by 0");
  }

  Formula f = Formula::from_clauses(static_cast<std::size_t>(num_vars),
                                    std::move(clauses));
  const std::size_t actual = f.raw_counts().clauses + f.tautologies_dropped() +
                             (f.trivially_unsat() ? 1 : 0);
  if (static_cast<long long>(actual) != declared_clauses) {
    f.warnings.push_back("header declares " + std::to_string(declared_clauses) +
                         " clauses, found " + std::to_string(actual));
  }
  return f;
}

ParseResult read_dimacs_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return ParseDiagnostic{1, 1, ParseDiagnostic::Kind::EmptyFile,
                           "cannot open '" + path + "'"};
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_dimacs(buf.str());
}

std::string write_dimacs(const Formula& f) {
  std::ostringstream os;
  const std::size_t n = f.original().size() + (f.trivially_unsat() ? 1 : 0);
  os << "p cnf " << f.num_vars() << ' ' << n << '\n';
  for (const Clause& c : f.original()) {
    for (Lit l : c.lits) os << l.to_dimacs() << ' ';
    os << "0\n";
  }
  if (f.trivially_unsat()) os << "0\n";
  return os.str();
}

std::string_view status_name(SolverVerdict::Status s) {
  switch (s) {
    case SolverVerdict::Status::Sat:
      return "SATISFIABLE";
    case SolverVerdict::Status::Unsat:
      return "UNSATISFIABLE";
    case SolverVerdict::Status::Unknown:
      return "UNKNOWN";
  }
  return "UNKNOWN";
}

std::string emit_verdict(const SolverVerdict& verdict) {
  std::string out = "s ";
  out += status_name(verdict.status);
  out += '\n';
  if (!verdict.is_sat() || !verdict.model) return out;

  constexpr std::size_t kPerLine = 20;
  const auto& model = *verdict.model;
  std::string line = "v";
  std::size_t on_line = 0;
  for (std::size_t v = 0; v < model.size(); ++v) {
    if (on_line == kPerLine) {
      out += line + '\n';
      line = "v";
      on_line = 0;
    }
    const long long lit = static_cast<long long>(v) + 1;
    line += ' ';
    line += std::to_string(model[v] ? lit : -lit);
    ++on_line;
  }
  out += line + " 0\n";
  return out;
}

int exit_code(const SolverVerdict& verdict) {
  switch (verdict.status) {
    case SolverVerdict::Status::Sat:
      return 10;
    case SolverVerdict::Status::Unsat:
      return 20;
    case SolverVerdict::Status::Unknown:
      return 0;
  }
  return 0;
}

}  // namespace mphase
