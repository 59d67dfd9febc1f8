#include "symcover/io.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <fstream>
#include <set>
#include <sstream>

#include "symcover/error.hpp"

namespace symcover {

using nlohmann::json;

namespace {

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

}  // namespace

std::uint64_t stable_hash(std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

FiniteGroup group_from_json(const json& doc) {
  try {
    if (doc.contains("degree")) {
      const int degree = doc.at("degree").get<int>();
      std::vector<Permutation> gens;
      for (const auto& images : doc.value("permutation_generators", json::array())) {
        Permutation p;
        for (const auto& v : images) p.push_back(v.get<int>() - 1);
        gens.push_back(std::move(p));
      }
      FiniteGroup g = group_from_permutations(degree, gens);
      g.set_name(doc.value("name", "permutation group"));
      return g;
    }
    const int order = doc.at("order").get<int>();
    auto table = doc.at("table").get<std::vector<std::vector<int>>>();
    std::vector<std::string> labels;
    if (doc.contains("elements")) {
      for (const auto& e : doc.at("elements")) labels.push_back(e.is_string() ? e.get<std::string>() : e.dump());
    }
    FiniteGroup g = group_from_table(order, std::move(table), std::move(labels));
    g.set_name(doc.value("name", "table group"));
    return g;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("group JSON: ") + e.what());
  }
}

FiniteGroup load_group(const std::string& source) {
  if (source.rfind("preset:", 0) == 0) return preset_group(source.substr(7));
  const std::string path = source.rfind("file:", 0) == 0 ? source.substr(5) : source;
  return group_from_json(read_json_file(path));
}

std::vector<WordMap> word_maps_from_json(const json& doc) {
  if (!doc.is_array()) throw Error(ErrorCode::ParseError, "move-set file must hold a JSON array");
  std::vector<WordMap> maps;
  try {
    for (const auto& entry : doc) {
      WordMap map;
      map.name = entry.at("name").get<std::string>();
      std::set<Slot> seen;
      for (const auto& [slot_text, word_text] : entry.at("outputs").items()) {
        const Slot slot = parse_slot(slot_text);
        if (!seen.insert(slot).second) throw Error(ErrorCode::ParseError, "duplicate output slot " + slot_text);
        map.outputs.emplace_back(slot, parse_word(word_text.get<std::string>()));
      }
      if (entry.contains("gprime")) map.gprime = entry.at("gprime").get<int>();
      maps.push_back(std::move(map));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("move-set JSON: ") + e.what());
  }
  return maps;
}

MoveSet load_moveset(const std::string& source, const ValidationBattery& battery) {
  if (source == "default") return MoveSet::standard();
  if (source == "braid-only") return MoveSet::braid_only();
  if (source.rfind("file:", 0) == 0) {
    MoveSet moves = MoveSet::standard();
    for (const auto& map : word_maps_from_json(read_json_file(source.substr(5))))
      moves = register_move(moves, map, battery);
    return moves;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown move set '" + source + "' (default, braid-only or file:<path>)");
}

json group_info_json(const FiniteGroup& group) {
  std::map<std::string, int> histogram;
  for (int x = 0; x < group.order(); ++x) ++histogram[std::to_string(group.element_order(ElementId(x)))];
  auto sizes = group.class_sizes();
  std::sort(sizes.begin(), sizes.end());
  return json{{"name", group.name()},
              {"order", group.order()},
              {"abelian", group.is_abelian()},
              {"element_orders", histogram},
              {"class_sizes", sizes},
              {"hash", hex64(group.canonical_hash())}};
}

json signatures_json(const std::vector<Signature>& signatures) {
  json rows = json::array();
  for (const auto& sig : signatures) {
    json row{{"gprime", sig.gprime}, {"orders", sig.branch_orders}, {"d", sig.branch_count()}};
    try {
      row["dimension"] = dimension(sig);
    } catch (const Error&) {
      row["dimension"] = nullptr;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_json(const GeneratingVector& v) {
  json entries = json::array();
  for (ElementId e : v.entries) entries.push_back(e);
  return entries;
}

json report_json(const FiniteGroup& group, const ClassificationReport& report,
                 const std::optional<LevelCoverData>& level) {
  json level_json;
  if (level) {
    level_json = json{{"m", level->level},
                      {"m_valid", level->m_valid},
                      {"ambient_order", level->ambient_order.str()}};
    if (!level->note.empty()) level_json["note"] = level->note;
  }
  json signatures = json::array();
  for (const auto& s : report.signatures) {
    json orbits = json::array();
    for (const auto& o : s.orbits) {
      json labels = json::array();
      for (ElementId e : o.representative.entries) labels.push_back(group.label(e));
      json record{{"size", o.size},
                   {"representative", vector_json(o.representative)},
                   {"labels", labels},
                   {"exact", o.completeness == Completeness::Exact}};
      if (o.coarse_class) record["coarse_class"] = *o.coarse_class;
      if (level) record["level"] = level_json;
      orbits.push_back(std::move(record));
    }
    json entry{{"gprime", s.signature.gprime},
               {"orders", s.signature.branch_orders},
               {"dimension", s.dimension},
               {"vectors", s.vector_count()},
               {"orbits", orbits},
               {"exact", s.completeness == Completeness::Exact},
               {"completeness", completeness_name(s.completeness)}};
    if (s.status != SignatureStatus::Complete) {
      entry["partial"] = true;
      entry["diagnostic"] = s.diagnostic;
      entry.erase("vectors");
    }
    if (s.coarse_count) entry["coarse_orbits"] = *s.coarse_count;
    signatures.push_back(std::move(entry));
  }
  json doc{{"schema_version", kSchemaVersion},
           {"group", {{"name", report.group_name}, {"order", report.group_order}, {"hash", hex64(report.group_hash)}}},
           {"genus", report.genus},
           {"moveset", report.moveset_tag},
           {"moveset_fingerprint", hex64(stable_hash(report.moveset_fingerprint))},
           {"signatures", signatures},
           {"total", report.total},
           {"exact", report.exact},
           {"complete", report.complete}};
  if (report.coarse_total) doc["coarse_total"] = *report.coarse_total;
  if (level) doc["level"] = level_json;
  return doc;
}

std::string stability_csv(const std::vector<StabilityRow>& rows) {
  std::ostringstream out;
  out << "gprime,vectors,orbits,exact\n";
  for (const auto& r : rows) out << r.gprime << ',' << r.vectors << ',' << r.orbits << ',' << (r.exact ? "true" : "false") << '\n';
  return out.str();
}

std::vector<std::vector<std::int64_t>> matrix_from_json(const json& doc) {
  try {
    return doc.get<std::vector<std::vector<std::int64_t>>>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("matrix JSON: ") + e.what());
  }
}

}  // namespace symcover
