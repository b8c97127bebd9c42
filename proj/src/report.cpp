#include "solab/report.hpp"

#include <limits>

namespace solab {

void EstimateReport::set_param(const std::string& key, double value) {
  for (auto& kv : params) {
    if (kv.first == key) {
      kv.second = value;
      return;
    }
  }
  params.emplace_back(key, value);
}

double EstimateReport::param(const std::string& key) const {
  for (const auto& kv : params)
    if (kv.first == key) return kv.second;
  return std::numeric_limits<double>::quiet_NaN();
}

void EstimateReport::add_constant(const std::string& name, double value,
                                  const std::string& formula, const std::string& provenance) {
  for (auto& c : constants) {
    if (c.name == name) {
      c.value = value;
      c.formula = formula;
      c.provenance = provenance;
      return;
    }
  }
  ReportConstant c;
  c.name = name;
  c.value = value;
  c.formula = formula;
  c.provenance = provenance;
  constants.push_back(c);
}

const ReportConstant* EstimateReport::find_constant(const std::string& name) const {
  for (const auto& c : constants)
    if (c.name == name) return &c;
  return nullptr;
}

}  // namespace solab
