#include "symcover/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "symcover/cache.hpp"
#include "symcover/error.hpp"
#include "symcover/io.hpp"
#include "symcover/level_sp.hpp"
#include "symcover/orbits.hpp"

namespace symcover {

namespace {

using nlohmann::json;

struct Flags {
  std::string group;
  int genus = 0;
  std::string signature;
  std::string moveset = "default";
  bool coarse_aut = false;
  int jobs = 1;
  std::optional<std::uint64_t> limit_vectors;
  std::uint64_t orbit_budget = 1u << 24;
  std::string format;
  std::string cache_dir;
  bool no_cache = false;
  std::optional<std::uint64_t> seed;
  std::optional<int> level;
  std::string vector;
  std::string orders;
  int gprime_min = 0;
  int gprime_max = 0;
  std::string matrix;
};

std::string join(const std::vector<int>& values, const char* sep) {
  std::string out;
  for (std::size_t k = 0; k < values.size(); ++k) out += (k ? sep : "") + std::to_string(values[k]);
  return out;
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    if (token.find_first_not_of(' ') == std::string::npos) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(token, &used));
      while (used < token.size() && token[used] == ' ') ++used;
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, std::string("bad integer '") + token + "' in " + what);
    }
  }
  return out;
}

Signature signature_for(const FiniteGroup& group, const std::string& text) {
  auto [gprime, orders] = parse_signature(text);
  Signature sig{gprime, orders, group.order(), 0};
  try {
    sig.genus = rh_genus(group.order(), gprime, orders).genus;
  } catch (const Error&) {
    sig.genus = 0;  // the vector enumeration does not depend on g
  }
  return sig;
}

ClassifyOptions classify_options(const Flags& f) {
  ClassifyOptions options;
  options.coarse_aut = f.coarse_aut;
  options.jobs = f.jobs;
  options.limit_vectors = f.limit_vectors;
  options.orbit_budget = f.orbit_budget;
  return options;
}

ValidationBattery battery_for(const Flags& f) {
  ValidationBattery battery;
  battery.seed = f.seed;
  return battery;
}

std::optional<ResultCache> open_cache(const Flags& f, const Environment& env) {
  if (f.no_cache) return std::nullopt;
  std::string root = f.cache_dir;
  if (root.empty()) {
    const auto it = env.find("SYMCOVER_CACHE");
    if (it != env.end()) root = it->second;
  }
  if (root.empty()) return std::nullopt;
  return ResultCache(root);
}

std::string classify_table(const ClassificationReport& report) {
  std::ostringstream out;
  out << "group " << report.group_name << " (order " << report.group_order << "), genus " << report.genus
      << ", moves " << report.moveset_tag << '\n';
  for (const auto& s : report.signatures) {
    out << "  (" << format_signature(s.signature) << ")  dim " << s.dimension;
    if (s.status != SignatureStatus::Complete) {
      out << "  partial: " << s.diagnostic << '\n';
      continue;
    }
    out << "  vectors " << s.vector_count() << "  orbits " << s.orbits.size() << "  "
        << completeness_name(s.completeness);
    if (s.coarse_count) out << "  aut-classes " << *s.coarse_count;
    out << '\n';
  }
  out << "total " << report.total << (report.exact ? " (exact)" : " (upper bound)");
  if (report.coarse_total) out << ", aut-classes " << *report.coarse_total;
  out << '\n';
  return out.str();
}

std::string signatures_output(const std::vector<Signature>& sigs, const std::string& format) {
  if (format == "csv" || format == "table") {
    std::ostringstream out;
    out << "gprime,orders,d,dimension\n";
    const auto rows = signatures_json(sigs);
    for (std::size_t k = 0; k < sigs.size(); ++k)
      out << sigs[k].gprime << ',' << join(sigs[k].branch_orders, " ") << ',' << sigs[k].branch_count() << ','
          << rows[k]["dimension"].dump() << '\n';
    return out.str();
  }
  return signatures_json(sigs).dump(2) + "\n";
}

// Runs a cached computation: the key names every input that shapes the output.
std::string cached(const std::optional<ResultCache>& cache, const std::string& key, CommandResult& result,
                   const std::function<std::string()>& compute) {
  if (cache) {
    std::string warning;
    if (auto hit = cache->lookup(key, &warning)) {
      result.cache_hit = true;
      return *hit;
    }
    if (!warning.empty()) result.err += "warning: " + warning + "\n";
  }
  std::string payload = compute();
  if (cache) cache->store(key, payload);
  return payload;
}

}  // namespace

CommandResult run_command(const std::vector<std::string>& args, const Environment& env) {
  CommandResult result;
  Flags f;
  CLI::App app{"symcover: components of moduli of curves with a finite group action"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  auto add_group = [&](CLI::App* cmd) {
    cmd->add_option("--group", f.group, "preset:<spec>, file:<path> or a path to a group JSON file")->required();
  };
  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", f.format, "json, csv or table")
        ->check(CLI::IsMember({"json", "csv", "table"}));
  };
  auto add_moves = [&](CLI::App* cmd) {
    cmd->add_option("--moveset", f.moveset, "default, braid-only or file:<path>");
    cmd->add_option("--seed", f.seed, "seed for randomized move-validation samples");
  };
  auto add_limits = [&](CLI::App* cmd) {
    cmd->add_option("--limit-vectors", f.limit_vectors, "cap on enumerated vectors")->check(CLI::PositiveNumber);
    cmd->add_option("--orbit-budget", f.orbit_budget, "cap on visited states")->check(CLI::PositiveNumber);
  };
  auto add_cache = [&](CLI::App* cmd) {
    cmd->add_option("--cache-dir", f.cache_dir, "result cache root (overrides SYMCOVER_CACHE)");
    cmd->add_flag("--no-cache", f.no_cache, "skip the result cache");
  };

  auto* group_cmd = app.add_subcommand("group", "finite group utilities")->require_subcommand(1);
  auto* group_info = group_cmd->add_subcommand("info", "order, element-order histogram, class sizes");
  add_group(group_info);
  add_format(group_info);

  auto* sigs = app.add_subcommand("signatures", "Riemann-Hurwitz signatures for a group and genus");
  add_group(sigs);
  sigs->add_option("--genus", f.genus)->required()->check(CLI::Range(2, 1000000));
  add_format(sigs);

  auto* vectors_cmd = app.add_subcommand("vectors", "generating vectors")->require_subcommand(1);
  auto* vec_count = vectors_cmd->add_subcommand("count", "count generating vectors of a signature");
  auto* vec_list = vectors_cmd->add_subcommand("list", "list generating vectors of a signature");
  for (auto* cmd : {vec_count, vec_list}) {
    add_group(cmd);
    cmd->add_option("--signature", f.signature, "g';m1,m2,...")->required();
    cmd->add_option("--limit-vectors", f.limit_vectors, "cap on enumerated vectors")->check(CLI::PositiveNumber);
    add_format(cmd);
  }

  auto* orbit_cmd = app.add_subcommand("orbit", "orbit of one generating vector");
  add_group(orbit_cmd);
  orbit_cmd->add_option("--signature", f.signature, "g';m1,m2,...")->required();
  orbit_cmd->add_option("--vector", f.vector, "comma-separated element ids a1,b1,...,c_d")->required();
  add_moves(orbit_cmd);
  orbit_cmd->add_option("--orbit-budget", f.orbit_budget, "cap on visited states")->check(CLI::PositiveNumber);

  auto* classify_cmd = app.add_subcommand("classify", "components of M_g(G) as orbits of generating vectors");
  add_group(classify_cmd);
  classify_cmd->add_option("--genus", f.genus)->required()->check(CLI::Range(2, 1000000));
  add_moves(classify_cmd);
  classify_cmd->add_flag("--coarse-aut", f.coarse_aut, "also merge orbits related by automorphisms of G");
  classify_cmd->add_option("--jobs", f.jobs, "worker threads")->check(CLI::Range(1, 1024));
  classify_cmd->add_option("--level", f.level, "attach level-m cover data")->check(CLI::Range(2, 1000000));
  add_limits(classify_cmd);
  add_format(classify_cmd);
  add_cache(classify_cmd);

  auto* stability_cmd = app.add_subcommand("stability", "orbit counts of (g'; orders) across a range of g'");
  add_group(stability_cmd);
  stability_cmd->add_option("--orders", f.orders, "branch orders, e.g. 2,2 (empty for free actions)")->required();
  stability_cmd->add_option("--gprime-min", f.gprime_min)->required()->check(CLI::NonNegativeNumber);
  stability_cmd->add_option("--gprime-max", f.gprime_max)->required()->check(CLI::NonNegativeNumber);
  add_moves(stability_cmd);
  stability_cmd->add_option("--jobs", f.jobs, "worker threads")->check(CLI::Range(1, 1024));
  add_limits(stability_cmd);
  add_format(stability_cmd);
  add_cache(stability_cmd);

  auto* sp_cmd = app.add_subcommand("sp", "symplectic groups over Z/m")->require_subcommand(1);
  auto* sp_order_cmd = sp_cmd->add_subcommand("order", "|Sp_2g(Z/m)|");
  sp_order_cmd->add_option("--genus", f.genus)->required()->check(CLI::Range(1, 1000));
  sp_order_cmd->add_option("--level", f.level)->required()->check(CLI::Range(2, 1000000));
  auto* sp_check_cmd = sp_cmd->add_subcommand("check", "test a matrix for M^T J M = J (mod m)");
  sp_check_cmd->add_option("--matrix", f.matrix, "JSON file holding an array of rows")->required();
  sp_check_cmd->add_option("--level", f.level)->required()->check(CLI::Range(2, 1000000));

  auto* cache_cmd = app.add_subcommand("cache", "result cache maintenance")->require_subcommand(1);
  auto* cache_purge = cache_cmd->add_subcommand("purge", "delete every cache entry");
  add_cache(cache_purge);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    result.out = app.help();
    return result;
  } catch (const CLI::CallForAllHelp&) {
    result.out = app.help("", CLI::AppFormatMode::All);
    return result;
  } catch (const CLI::ParseError& e) {
    result.exit_code = 2;
    result.err = std::string("usage error: ") + e.what() + "\n";
    return result;
  }

  if (f.format.empty()) f.format = stability_cmd->parsed() ? "csv" : "json";

  try {
    std::ostringstream out;
    if (group_info->parsed()) {
      const auto group = load_group(f.group);
      const auto info = group_info_json(group);
      if (f.format == "json") {
        out << info.dump(2) << '\n';
      } else {
        out << "order " << group.order() << '\n' << "element orders";
        for (const auto& [k, v] : info["element_orders"].items()) out << ' ' << k << ':' << v.get<int>();
        out << "\nclass sizes " << join(info["class_sizes"].get<std::vector<int>>(), " ") << '\n';
      }
    } else if (sigs->parsed()) {
      const auto group = load_group(f.group);
      out << signatures_output(enumerate_signatures(group, f.genus), f.format);
    } else if (vec_count->parsed() || vec_list->parsed()) {
      const auto group = load_group(f.group);
      const Signature sig = signature_for(group, f.signature);
      const EnumerationOptions options{f.limit_vectors};
      if (vec_count->parsed()) {
        const auto count = count_vectors(group, sig, options);
        if (f.format == "json")
          out << json{{"signature", format_signature(sig)}, {"vectors", count}}.dump(2) << '\n';
        else
          out << count << '\n';
      } else {
        json rows = json::array();
        enumerate_vectors(
            group, shape_of(sig),
            [&](const GeneratingVector& v) {
              if (f.format == "json")
                rows.push_back(vector_json(v));
              else
                out << format_vector(group, v) << '\n';
              return true;
            },
            options);
        if (f.format == "json") out << rows.dump() << '\n';
      }
    } else if (orbit_cmd->parsed()) {
      const auto group = load_group(f.group);
      const Signature sig = signature_for(group, f.signature);
      GeneratingVector v{sig.gprime, {}};
      for (int id : parse_int_list(f.vector, "--vector")) {
        if (id < 0 || id >= group.order()) throw Error(ErrorCode::InvalidArgument, "element id " + std::to_string(id) + " out of range");
        v.entries.push_back(static_cast<ElementId>(id));
      }
      bool valid = false;
      std::string diagnostic;
      for (const auto& shape : arrangements(sig)) {
        const auto check = vector_validate(group, shape, v);
        if (check.ok()) valid = true;
        if (diagnostic.empty() || check.failure != VectorDiagnostics::Failure::Order) diagnostic = check.message;
        if (valid) break;
      }
      if (!valid) throw Error(ErrorCode::InvalidArgument, "not a generating vector: " + diagnostic);
      const auto moves = load_moveset(f.moveset, battery_for(f));
      const auto orbit = orbit_of(group, v, moves, f.orbit_budget);
      out << json{{"signature", format_signature(sig)},
                  {"moveset", moves.tag()},
                  {"size", orbit.canonical_size},
                  {"states", orbit.members.size()},
                  {"representative", vector_json(orbit.representative)}}
                 .dump(2)
          << '\n';
    } else if (classify_cmd->parsed()) {
      const auto group = load_group(f.group);
      const auto moves = load_moveset(f.moveset, battery_for(f));
      const auto cache = open_cache(f, env);
      const std::string key = "classify|v" + std::to_string(kSchemaVersion) + "|" + group.name() + "|" +
                              group.canonical_form() + "|g=" + std::to_string(f.genus) + "|" + moves.fingerprint() +
                              "|coarse=" + std::to_string(f.coarse_aut) + "|limit=" +
                              (f.limit_vectors ? std::to_string(*f.limit_vectors) : "-") +
                              "|budget=" + std::to_string(f.orbit_budget) +
                              "|level=" + (f.level ? std::to_string(*f.level) : "-") + "|format=" + f.format;
      bool complete = true;
      const std::string payload = cached(cache, key, result, [&] {
        const auto report = classify(group, f.genus, moves, classify_options(f));
        result.err += "classified in " + std::to_string(report.seconds) + " s\n";
        std::optional<LevelCoverData> level;
        if (f.level) level = level_cover_data(f.genus, *f.level);
        if (f.format == "table") return classify_table(report);
        return report_json(group, report, level).dump(2) + "\n";
      });
      if (f.format != "table") complete = json::parse(payload).value("complete", true);
      out << payload;
      if (!complete) {
        result.out = out.str();
        result.err += "error: classification incomplete (limit or budget exceeded)\n";
        result.exit_code = 1;
        return result;
      }
    } else if (stability_cmd->parsed()) {
      const auto group = load_group(f.group);
      const auto moves = load_moveset(f.moveset, battery_for(f));
      const auto orders = parse_int_list(f.orders, "--orders");
      const auto cache = open_cache(f, env);
      std::vector<int> sorted_orders = orders;
      std::sort(sorted_orders.begin(), sorted_orders.end());
      const std::string key = "stability|v" + std::to_string(kSchemaVersion) + "|" + group.name() + "|" +
                              group.canonical_form() + "|orders=" + join(sorted_orders, ",") + "|range=" +
                              std::to_string(f.gprime_min) + ".." + std::to_string(f.gprime_max) + "|" +
                              moves.fingerprint() + "|limit=" +
                              (f.limit_vectors ? std::to_string(*f.limit_vectors) : "-") +
                              "|budget=" + std::to_string(f.orbit_budget) + "|format=" + f.format;
      out << cached(cache, key, result, [&] {
        const auto rows = stability_scan(group, orders, f.gprime_min, f.gprime_max, moves, classify_options(f));
        if (f.format != "json") return stability_csv(rows);
        json doc = json::array();
        for (const auto& r : rows)
          doc.push_back({{"gprime", r.gprime}, {"genus", r.genus}, {"vectors", r.vectors}, {"orbits", r.orbits}, {"exact", r.exact}});
        return doc.dump(2) + "\n";
      });
    } else if (sp_order_cmd->parsed()) {
      out << sp_order(f.genus, *f.level).str() << '\n';
    } else if (sp_check_cmd->parsed()) {
      std::ifstream in(f.matrix);
      if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + f.matrix);
      json doc;
      try {
        doc = json::parse(in);
      } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, f.matrix + ": " + e.what());
      }
      const ModMatrix m(matrix_from_json(doc), *f.level);
      if (m.size() % 2) throw Error(ErrorCode::DimensionMismatch, "matrix size must be even");
      const bool ok = is_symplectic(m, SpParams{m.size() / 2, *f.level});
      out << json{{"genus", m.size() / 2}, {"level", *f.level}, {"symplectic", ok}}.dump() << '\n';
    } else if (cache_purge->parsed()) {
      const auto cache = open_cache(f, env);
      if (!cache) throw Error(ErrorCode::InvalidArgument, "no cache directory: pass --cache-dir or set SYMCOVER_CACHE");
      out << cache->purge() << " entries removed\n";
    }
    result.out = out.str();
  } catch (const Error& e) {
    result.exit_code = 1;
    result.err += std::string("error: ") + e.what() + "\n";
  }
  return result;
}

}  // namespace symcover
