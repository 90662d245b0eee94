#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "rigidlab/bounds.hpp"
#include "rigidlab/linalg.hpp"
#include "rigidlab/optimizer.hpp"

namespace rigidlab {

using Json = nlohmann::json;  // std::map-backed, so keys are emitted sorted

Json to_json(const BoundReport& r);
Json to_json(const std::vector<BoundReport>& reports);
Json to_json(const EstimateResult& r);
Json to_json(const Vector& v);
Json to_json(const Matrix& m);  // array of rows

/// `checked=<N> failed=<M>` over non-skipped reports.
std::string summary_line(const std::vector<BoundReport>& reports);

}  // namespace rigidlab
