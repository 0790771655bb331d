#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace reify::prompt {

enum class DiagnosticCode {
  kNoListFound,
  kEmptyList,
  kLowConfidence,
  kDuplicatesDropped,
  kAllDuplicates,
  kSubtaskFailed,
};

std::string_view to_string(DiagnosticCode code);

struct Diagnostic {
  DiagnosticCode code;
  std::string message;
  // the object or field the diagnostic concerns, if any
  std::string subject;

  bool operator==(const Diagnostic&) const = default;
};

bool has_diagnostic(const std::vector<Diagnostic>& diagnostics, DiagnosticCode code);

template <class T>
struct Parsed {
  T value;
  std::vector<Diagnostic> diagnostics;

  bool has(DiagnosticCode code) const { return has_diagnostic(diagnostics, code); }
};

}  // namespace reify::prompt
