#pragma once

#include "solab/estimates.hpp"
#include "solab/gaussian.hpp"
#include "solab/geometry.hpp"
#include "solab/report.hpp"
#include "solab/stability.hpp"
#include "solab/surface.hpp"
#include "solab/translators.hpp"

#include <string>

namespace solab {

// Schema-tagged JSON (surface.v1, functional.v1, spectrum.v1, estimate.v1).
// Serialization is timestamp-free and key-ordered so identical inputs yield
// byte-identical bytes.

std::string surface_to_json(const SampledHypersurface& s);
SampledHypersurface surface_from_json(const std::string& text);

std::string functional_to_json(const std::string& name, const FunctionalValue& v,
                               const std::vector<std::pair<std::string, double>>& params,
                               int pass = -1 /* -1 none, 0 fail, 1 pass */);

std::string spectrum_to_json(const SpectralResult& r,
                             const StabilityVerdict* verdict = nullptr,
                             std::optional<unsigned> seed = std::nullopt);

std::string estimate_to_json(const EstimateReport& r);

// ---- CSV ----

std::string fields_to_csv(const SampledHypersurface& s, const GeometryFields& g,
                          const Vec* residual = nullptr);
std::string profile_to_csv(const translators::BowlProfile& p);
std::string trace_to_csv(const MeanValueTrace& t);
std::string reports_to_csv(const std::vector<EstimateReport>& reports);

// generic JSON <-> CSV conversion for the report schemas (flat columns)
std::string report_json_to_csv(const std::string& json_text);

}  // namespace solab
