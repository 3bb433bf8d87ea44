#pragma once

// JSON encodings shared by the CLI and the Python module.
//
//   state:   {"dim": d, "matrix": [[[re, im], ...], ...]}         (row-major)
//   channel: {"dim_in": d, "dim_out": d, "kraus": [matrix, ...]}

#include <filesystem>
#include <string_view>

#include "json.hpp"

#include "coherence/channels.hpp"
#include "coherence/measures.hpp"
#include "coherence/power.hpp"

namespace coherence {

using Json = nlohmann::json;

Json matrix_to_json(const ComplexMatrix& m);
/// `field` prefixes error messages, e.g. "kraus[1]".
ComplexMatrix matrix_from_json(const Json& j, std::string_view field);

Json state_to_json(const DensityMatrix& rho);
/// Throws ParseError for structural problems and InvalidStateError when the
/// matrix is not a density matrix.
DensityMatrix state_from_json(const Json& j);

Json channel_to_json(const KrausChannel& ch);
KrausChannel channel_from_json(const Json& j);

/// Parses the file as JSON; a missing or truncated file raises ParseError.
Json read_json_file(const std::filesystem::path& path);

Json to_json(const ClassificationReport& report);
Json to_json(const DecompositionSearchResult& result);
Json to_json(const PowerEstimate& estimate);
Json to_json(const SuperadditivityReport& report);

}  // namespace coherence
