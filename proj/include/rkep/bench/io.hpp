#pragma once

// Instance files. The .kep text format is a header "nPairs nNDDs nArcs"
// followed by one "src dst" line per arc, 0-based, pairs first. The JSON
// form is {"pairs": n, "ndds": m, "arcs": [[i, j], ...]}.

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "rkep/graph.hpp"

namespace rkep {

enum class InstanceFormat { Kep, Json };

namespace detail {

inline bool read_int(std::istream& in, long& v) {
  std::string tok;
  if (!(in >> tok)) return false;
  std::size_t used = 0;
  try {
    v = std::stol(tok, &used);
  } catch (const std::exception&) {
    throw Error("expected an integer, got '" + tok + "'");
  }
  if (used != tok.size()) throw Error("expected an integer, got '" + tok + "'");
  return true;
}

inline CompatibilityGraph parse_kep(const std::string& text) {
  std::istringstream in(text);
  long pairs = 0, ndds = 0, arcs = 0;
  if (!read_int(in, pairs) || !read_int(in, ndds) || !read_int(in, arcs))
    throw Error("malformed header: expected 'nPairs nNDDs nArcs'");
  if (pairs < 0 || ndds < 0 || arcs < 0) throw Error("malformed header: negative count");
  std::vector<Arc> list;
  list.reserve(arcs);
  for (long k = 0; k < arcs; ++k) {
    long src = 0, dst = 0;
    if (!read_int(in, src) || !read_int(in, dst))
      throw Error("expected " + std::to_string(arcs) + " arcs, found " + std::to_string(k));
    list.push_back({static_cast<Vertex>(src), static_cast<Vertex>(dst)});
  }
  std::string extra;
  if (in >> extra) throw Error("unexpected trailing content '" + extra + "'");
  return CompatibilityGraph(static_cast<int>(pairs), static_cast<int>(ndds), std::move(list));
}

inline CompatibilityGraph parse_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed JSON instance: ") + e.what());
  }
  try {
    const int pairs = j.at("pairs").get<int>();
    const int ndds = j.at("ndds").get<int>();
    std::vector<Arc> arcs;
    for (const auto& a : j.at("arcs")) {
      if (!a.is_array() || a.size() != 2) throw Error("each arc must be a [src, dst] pair");
      arcs.push_back({a[0].get<int>(), a[1].get<int>()});
    }
    return CompatibilityGraph(pairs, ndds, std::move(arcs));
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed JSON instance: ") + e.what());
  }
}

}  // namespace detail

/// Detects the format from the first non-blank character.
inline CompatibilityGraph parse_instance(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{' ? detail::parse_json(text) : detail::parse_kep(text);
  }
  throw Error("empty instance text");
}

inline std::string render_instance(const CompatibilityGraph& g, InstanceFormat format = InstanceFormat::Kep) {
  if (format == InstanceFormat::Json) {
    nlohmann::json arcs = nlohmann::json::array();
    for (const Arc& a : g.arcs()) arcs.push_back({a.src, a.dst});
    return nlohmann::json{{"pairs", g.num_pairs()}, {"ndds", g.num_ndds()}, {"arcs", arcs}}.dump() + "\n";
  }
  std::ostringstream out;
  out << g.num_pairs() << ' ' << g.num_ndds() << ' ' << g.arcs().size() << '\n';
  for (const Arc& a : g.arcs()) out << a.src << ' ' << a.dst << '\n';
  return out.str();
}

inline InstanceFormat format_for_path(const std::string& path) {
  return path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0 ? InstanceFormat::Json
                                                                             : InstanceFormat::Kep;
}

inline CompatibilityGraph read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open instance file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_instance(buf.str());
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

inline void write_instance_file(const std::string& path, const CompatibilityGraph& g) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write instance file '" + path + "'");
  out << render_instance(g, format_for_path(path));
  if (!out) throw Error("failed writing '" + path + "'");
}

}  // namespace rkep
