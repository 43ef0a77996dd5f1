#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "cosetiq/algebra.hpp"
#include "cosetiq/generic.hpp"

namespace cosetiq {

uint64_t fnv1a64(std::string_view data);
std::string fnv1a64_hex(std::string_view data);

// All big integers serialized as decimal strings; rationals as reduced
// fraction strings.
nlohmann::json decomposition_to_json(const CosetDecomposition& dec);

nlohmann::json structure_to_json(const StructureTable& t);
StructureTable structure_from_json(const nlohmann::json& j);

nlohmann::json poly_table_to_json(const PolyTable& t);
PolyTable poly_table_from_json(const nlohmann::json& j);

// Generic-algebra artifact: constants as coefficient lists (lowest degree
// first) plus a sample-provenance block of (n, route, table hash).
nlohmann::json interpolation_to_json(const InterpolationResult& res,
                                     const std::vector<StructureTable>& samples_for_hash);

nlohmann::json relation_report_to_json(const RelationReport& rep);
nlohmann::json m_report_to_json(const MReport& rep);
nlohmann::json filtration_report_to_json(const FiltrationReport& rep);
nlohmann::json semisimplicity_to_json(const SemisimplicityReport& rep);

// Cached artifact files: {"kind", "meta": {tool, version, recipes,
// payload_hash}, "payload"}.  Byte-identical for identical payloads.
void write_artifact(const std::string& path, const std::string& kind,
                    const nlohmann::json& payload);
struct ArtifactReadResult {
    bool found = false;
    bool hash_ok = false;
    nlohmann::json payload;
};
ArtifactReadResult read_artifact(const std::string& path, const std::string& kind);

}  // namespace cosetiq
