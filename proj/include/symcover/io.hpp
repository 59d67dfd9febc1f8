#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "symcover/group.hpp"
#include "symcover/level_sp.hpp"
#include "symcover/moves.hpp"
#include "symcover/orbits.hpp"

namespace symcover {

inline constexpr int kSchemaVersion = 1;

std::uint64_t stable_hash(std::string_view bytes);
std::string hex64(std::uint64_t value);

/// { "name", "order", "elements", "table" } or { "degree", "permutation_generators" }
/// with 1-based one-line images.
FiniteGroup group_from_json(const nlohmann::json& doc);

/// "preset:<spec>", "file:<path>" or a bare path to a group JSON file.
FiniteGroup load_group(const std::string& source);

/// [{ "name", "outputs": { slot: word }, "gprime"? }]
std::vector<WordMap> word_maps_from_json(const nlohmann::json& doc);

/// "default", "braid-only" or "file:<path>"; file moves are validated and
/// registered on top of the default set.
MoveSet load_moveset(const std::string& source, const ValidationBattery& battery = {});

nlohmann::json group_info_json(const FiniteGroup& group);
nlohmann::json signatures_json(const std::vector<Signature>& signatures);
nlohmann::json vector_json(const GeneratingVector& v);

/// The classification report; byte-stable for identical inputs.
nlohmann::json report_json(const FiniteGroup& group, const ClassificationReport& report,
                           const std::optional<LevelCoverData>& level = std::nullopt);

/// Header "gprime,vectors,orbits,exact".
std::string stability_csv(const std::vector<StabilityRow>& rows);

std::vector<std::vector<std::int64_t>> matrix_from_json(const nlohmann::json& doc);

}  // namespace symcover
