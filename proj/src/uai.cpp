#include "persist/uai.hpp"

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace persist {
namespace {

struct Token {
  std::string text;
  int line = 0;
};

class TokenStream {
 public:
  explicit TokenStream(std::string_view text) {
    int line = 1;
    std::string current;
    int start = 1;
    for (char c : text) {
      if (std::isspace(static_cast<unsigned char>(c))) {
        if (!current.empty()) tokens_.push_back({std::move(current), start});
        current.clear();
        if (c == '\n') ++line;
      } else {
        if (current.empty()) start = line;
        current.push_back(c);
      }
    }
    if (!current.empty()) tokens_.push_back({std::move(current), start});
    last_line_ = line;
  }

  bool done() const { return pos_ >= tokens_.size(); }

  const Token& next(const std::string& what) {
    if (done()) fail(last_line_, "unexpected end of input, expected " + what);
    return tokens_[pos_++];
  }

  long next_int(const std::string& what) {
    const Token& t = next(what);
    char* end = nullptr;
    errno = 0;
    const long value = std::strtol(t.text.c_str(), &end, 10);
    if (*end != '\0' || errno != 0) fail(t.line, "expected an integer for " + what + ", got '" + t.text + "'");
    return value;
  }

  double next_double(const std::string& what) {
    const Token& t = next(what);
    char* end = nullptr;
    const double value = std::strtod(t.text.c_str(), &end);
    if (*end != '\0') fail(t.line, "expected a number for " + what + ", got '" + t.text + "'");
    return value;
  }

  int line() const { return done() ? last_line_ : tokens_[pos_].line; }

  [[noreturn]] static void fail(int line, const std::string& message) {
    throw ParseError("line " + std::to_string(line) + ": " + message);
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int last_line_ = 1;
};

}  // namespace

GraphicalModel parse_uai(std::string_view text, UaiValues values) {
  TokenStream in(text);
  const Token& header = in.next("the MARKOV preamble");
  if (header.text != "MARKOV") TokenStream::fail(header.line, "expected MARKOV, got '" + header.text + "'");

  const int header_line = in.line();
  const long n = in.next_int("the variable count");
  if (n < 0) TokenStream::fail(header_line, "negative variable count");
  std::vector<int> counts;
  for (long v = 0; v < n; ++v) {
    const int line = in.line();
    const long k = in.next_int("a cardinality");
    if (k < 1) TokenStream::fail(line, "cardinality must be positive");
    counts.push_back(static_cast<int>(k));
  }

  const int factor_line = in.line();
  const long num_factors = in.next_int("the factor count");
  if (num_factors < 0) TokenStream::fail(factor_line, "negative factor count");
  std::vector<std::vector<NodeId>> scopes;
  for (long f = 0; f < num_factors; ++f) {
    const int line = in.line();
    const long arity = in.next_int("a scope size");
    if (arity < 1) TokenStream::fail(line, "factor " + std::to_string(f) + " has an empty scope");
    std::vector<NodeId> scope;
    for (long i = 0; i < arity; ++i) {
      const int var_line = in.line();
      const long v = in.next_int("a scope variable");
      if (v < 0 || v >= n) {
        TokenStream::fail(var_line, "factor " + std::to_string(f) + " scope index " + std::to_string(v) + " out of range");
      }
      for (NodeId seen : scope) {
        if (seen == v) TokenStream::fail(var_line, "factor " + std::to_string(f) + " repeats variable " + std::to_string(v));
      }
      scope.push_back(static_cast<NodeId>(v));
    }
    scopes.push_back(std::move(scope));
  }

  GraphicalModel model(counts);
  for (long f = 0; f < num_factors; ++f) {
    const auto& scope = scopes[static_cast<std::size_t>(f)];
    long expected = 1;
    for (NodeId v : scope) expected *= counts[static_cast<std::size_t>(v)];
    const std::string label = "factor " + std::to_string(f);
    if (in.done()) {
      TokenStream::fail(in.line(), label + ": table missing");
    }
    const int line = in.line();
    const long size = in.next_int(label + " table size");
    if (size != expected) {
      TokenStream::fail(line, label + ": table has " + std::to_string(size) + " entries, expected " +
                                  std::to_string(expected));
    }
    Eigen::VectorXd table(size);
    for (long i = 0; i < size; ++i) {
      if (in.done()) {
        TokenStream::fail(in.line(), label + ": truncated table, got " + std::to_string(i) + " of " +
                                         std::to_string(size) + " entries");
      }
      const int entry_line = in.line();
      double value = in.next_double(label + " table entry");
      if (values == UaiValues::Probability) {
        if (value < 0.0) TokenStream::fail(entry_line, label + ": negative probability");
        value = value == 0.0 ? kZeroProbabilityCost : -std::log(value);
      }
      if (!std::isfinite(value)) TokenStream::fail(entry_line, label + ": non-finite table entry");
      table[i] = value;
    }
    model.add_factor(scope, std::move(table));
  }
  if (!in.done()) TokenStream::fail(in.line(), "unexpected trailing content");
  return model;
}

GraphicalModel read_uai_file(const std::string& path, UaiValues values) {
  std::ifstream file(path);
  if (!file) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return parse_uai(buffer.str(), values);
}

std::string write_uai(const GraphicalModel& model) {
  std::ostringstream out;
  out << "MARKOV\n" << model.num_nodes() << "\n";
  for (int v = 0; v < model.num_nodes(); ++v) out << (v ? " " : "") << model.num_labels(v);
  out << "\n" << model.num_factors() << "\n";
  for (const Factor& f : model.factors()) {
    out << f.arity();
    for (NodeId v : f.scope) out << " " << v;
    out << "\n";
  }
  char buffer[32];
  for (const Factor& f : model.factors()) {
    out << "\n" << f.table.size() << "\n";
    for (Eigen::Index i = 0; i < f.table.size(); ++i) {
      std::snprintf(buffer, sizeof buffer, "%.17g", f.table[i]);
      out << (i ? " " : "") << buffer;
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace persist
