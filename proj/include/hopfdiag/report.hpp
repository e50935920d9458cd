#pragma once

#include <string>
#include <vector>

namespace hopfdiag {

struct ReportItem {
  std::string id;
  std::string status;
  bool ok = false;
  std::string detail;
  double ms = 0.0;
};

// Suite outcome in matching human- and machine-readable forms. The text
// form is byte-stable for fixed inputs unless timings are requested.
struct Report {
  std::string suite;
  std::vector<ReportItem> items;

  bool ok() const {
    for (const auto& i : items)
      if (!i.ok) return false;
    return true;
  }
  int count_ok() const {
    int n = 0;
    for (const auto& i : items) n += i.ok ? 1 : 0;
    return n;
  }
  std::string text(bool timings = false) const;
  std::string json(bool timings = false) const;
};

}  // namespace hopfdiag
