#pragma once

// Machine-readable record of every approximation step: dropped terms,
// assumption rules fired, cancellation checks. Pipelines append entries;
// reports serialize them.

#include <string>
#include <vector>

#include "gmoment/op_expr.hpp"

namespace gmoment {

struct AuditEntry {
  std::string stage;
  std::string note;
  std::size_t term_count = 0;
  std::string detail;  // serialized dropped terms, empty for pure notes
};

class Audit {
 public:
  void drop(const std::string& stage, const std::string& note, const OpExpr& dropped);
  void note(const std::string& stage, const std::string& note);
  const std::vector<AuditEntry>& entries() const { return entries_; }

 private:
  std::vector<AuditEntry> entries_;
};

}  // namespace gmoment
