#pragma once

#include <string>

#include <json.hpp>

#include "smalelab/deform.hpp"
#include "smalelab/experiments.hpp"
#include "smalelab/polynomial.hpp"
#include "smalelab/rootfind.hpp"
#include "smalelab/search.hpp"
#include "smalelab/smale.hpp"
#include "smalelab/surface.hpp"

namespace smalelab {

using json = nlohmann::json;

// Complex numbers are always 2-element arrays [re, im].
json to_json(Cplx z);
Cplx complex_from_json(const json& j);

// Polynomial documents: {"coeffs": [[re,im],...]} ascending degree, or
// {"roots": [[re,im],...], "leading": [re,im], "include_origin": bool}.
// Exactly one of coeffs/roots must be present.
json to_json(const Polynomial& p);
Polynomial polynomial_from_json(const json& doc);

json to_json(const RootFindReport& report);
json to_json(const std::vector<RootCluster>& clusters);
json to_json(const CriticalPointRecord& record);
json to_json(const RhoReport& report);
json to_json(const ClassCheck& check);

json to_json(const PathSpec& path);
PathSpec path_from_json(const json& doc);

// Family documents: {"poly": <polynomial document>, then either
// "moving_root_index"/"anchor_index" (indices into the lexicographically
// sorted nonzero roots / critical points) or "moving_root"/"anchor"
// ([re,im], matched to the nearest candidate)}.
json to_json(const VariationFamily& fam);
VariationFamily family_from_json(const json& doc);

json to_json(const TraceSample& sample);
json to_json(const ContinuationTrace& trace);
ContinuationTrace trace_from_json(const json& doc);

json to_json(const SheetInfo& sheet);
json to_json(const SurfaceAtlas& atlas);

json to_json(const DeformationStep& step);
json to_json(const SaturationReport& report);
SaturationReport saturation_from_json(const json& doc);

json to_json(const std::vector<BlowupProbeRow>& table);

json to_json(const SearchConfig& config);
json to_json(const SearchResult& result);
SearchResult search_result_from_json(const json& doc);

json to_json(const ExperimentSummary& summary);
ExperimentSummary experiment_from_json(const json& doc);

}  // namespace smalelab
