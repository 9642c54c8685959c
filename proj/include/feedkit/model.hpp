#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "feedkit/feedback.hpp"
#include "feedkit/rfu.hpp"
#include "feedkit/spec.hpp"
#include "feedkit/sts.hpp"

namespace feedkit {

struct Diagnostic {
  enum class Severity { Error, Warning };
  Severity severity = Severity::Error;
  int line = 0, col = 0;
  std::string code;  // machine-readable, e.g. "syntax", "unknown-name"
  std::string message;
};

std::string diagnostic_text(const Diagnostic& d);

/// A parsed and elaborated model file: named domains, components (relations,
/// transformers, stateful systems), feedback declarations and composition
/// results. Components share one namespace.
class Model {
 public:
  enum class Kind { RfuComponent, SpecComponent, StsComponent, Feedback };

  std::optional<Kind> kind_of(const std::string& name) const;
  std::vector<std::string> names(Kind k) const;

  const Rfu& rfu(const std::string& name) const;
  const Spec& spec(const std::string& name) const;
  const Sts& sts(const std::string& name) const;
  const FeedbackShape& feedback(const std::string& name) const;
  const WireRef* domain(const std::string& name) const;

  /// Canonical re-print of the model; parsing it yields the same model and
  /// the same text again.
  const std::string& print() const { return printed_; }

 private:
  friend class Elaborator;
  std::map<std::string, Rfu> rfus_;
  std::map<std::string, Spec> specs_;
  std::map<std::string, Sts> stss_;
  std::map<std::string, FeedbackShape> feedbacks_;
  std::map<std::string, WireRef> domains_;
  std::string printed_;
};

struct ParseResult {
  std::optional<Model> model;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return model.has_value(); }
};

/// Parses a model file. Never throws on user input: all syntax and type
/// errors are reported as diagnostics with source locations.
ParseResult parse_model(std::string_view text);

}  // namespace feedkit
