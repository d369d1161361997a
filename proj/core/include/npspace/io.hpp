#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "npspace/level_table.hpp"
#include "npspace/linmap.hpp"
#include "npspace/npnorm.hpp"
#include "npspace/opspace.hpp"
#include "npspace/oracle.hpp"

namespace npspace::io {

using nlohmann::json;

/// Shortest decimal that round-trips; "inf" for +infinity. Locale independent.
std::string format_double(double v);
/// Fixed 17 significant digits, '.' decimal point; used by CSV writers.
std::string format_double17(double v);

// Space file: { "label", "ambient_dim", "basis": [ d x d arrays of [re, im] ] }.
json space_to_json(const OperatorSpace& space);
SpacePtr space_from_json(const json& j);

// Map file: { "label", "domain", "codomain", "action": [ [[re, im], ...], ... ] }.
// "domain"/"codomain" are inline space objects, paths (relative to base_dir)
// or "catalog:<name>" space names (M1, M2, M3, C, D2, D3).
json map_to_json(const LinearMapRep& phi);
MapPtr map_from_json(const json& j, const std::filesystem::path& base_dir = {});

/// "catalog:<name>" or a path to a map file. Throws ParseError.
MapPtr load_map(std::string_view spec);
SpacePtr load_space(std::string_view spec);
json read_json_file(const std::filesystem::path& path);

/// Witness dump: { "level", "coords": n x n x k of [re, im], "value" }.
json witness_to_json(const SpaceElement& x, double value);
SpaceElement witness_from_json(const json& j, const SpacePtr& space);

json bracket_to_json(const NormBracket& b);
json table_to_json(const LevelNormTable& table);
/// Header `n,lo,hi,lo_source,hi_source`.
std::string table_to_csv(const LevelNormTable& table);

/// { "p", "lo", "hi", "verdict", "K", "tail": [lo, hi], "closed_form" };
/// an infinite hi is written as null.
json np_result_to_json(const NpResult& r);
json index_to_json(const IndexEstimate& e);
json axiom_report_to_json(const AxiomReport& r);
json cross_report_to_json(const CrossReport& r);
json inclusion_to_json(const InclusionReport& r);

}  // namespace npspace::io
