#pragma once

#include "solab/chart.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace solab {

// A named constant carried by a certificate, with the defining formula string
// and how the number was obtained: "formula" (evaluated from the recorded
// expression), "measured" (quadrature or sup over samples), or "input".
struct ReportConstant {
  std::string name;
  double value = 0.0;
  std::string formula;
  std::string provenance = "formula";
};

// Uniform certificate record. pass reflects lhs <= rhs exactly as computed
// whenever the hypotheses hold; a violated hypothesis forces pass = false and
// explains itself in hypothesis_status.
struct EstimateReport {
  std::string name;
  std::string surface;
  std::vector<std::pair<std::string, double>> params;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
  std::string hypothesis_status = "ok";
  std::vector<ReportConstant> constants;
  std::vector<std::pair<std::string, Vec>> series;  // plot-ready traces
  std::string notes;
  bool certificate = true;  // false for measurement-only reports
  std::optional<unsigned> seed;

  void set_param(const std::string& key, double value);
  double param(const std::string& key) const;  // NaN when absent
  void add_constant(const std::string& name, double value, const std::string& formula,
                    const std::string& provenance = "formula");
  const ReportConstant* find_constant(const std::string& name) const;
  // pass from the arithmetic and the hypothesis state together
  void finalize() { pass = (lhs <= rhs) && hypothesis_status == "ok"; }
};

}  // namespace solab
