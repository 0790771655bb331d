#include "reify/prompt/diagnostic.hpp"

#include <algorithm>

namespace reify::prompt {

std::string_view to_string(DiagnosticCode code) {
  switch (code) {
    case DiagnosticCode::kNoListFound: return "NoListFound";
    case DiagnosticCode::kEmptyList: return "EmptyList";
    case DiagnosticCode::kLowConfidence: return "LowConfidence";
    case DiagnosticCode::kDuplicatesDropped: return "DuplicatesDropped";
    case DiagnosticCode::kAllDuplicates: return "AllDuplicates";
    case DiagnosticCode::kSubtaskFailed: return "SubtaskFailed";
  }
  return "Unknown";
}

bool has_diagnostic(const std::vector<Diagnostic>& diagnostics, DiagnosticCode code) {
  return std::any_of(diagnostics.begin(), diagnostics.end(), [code](const Diagnostic& d) { return d.code == code; });
}

}  // namespace reify::prompt
