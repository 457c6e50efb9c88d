#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "asymlab/common.hpp"
#include "asymlab/permgroup.hpp"
#include "asymlab/structures.hpp"

namespace asymlab::io {

using json = nlohmann::ordered_json;

using Structure = std::variant<LatinSquare, Sts, OneFactorization>;

inline json to_json(const LatinSquare& s) { return {{"kind", "latin"}, {"n", s.order()}, {"grid", s.rows()}}; }

inline json to_json(const Sts& t) {
  json blocks = json::array();
  for (const auto& b : t.blocks()) blocks.push_back({b[0], b[1], b[2]});
  return {{"kind", "sts"}, {"n", t.points()}, {"blocks", std::move(blocks)}};
}

inline json to_json(const OneFactorization& f) {
  json factors = json::array();
  for (const auto& m : f.factors()) {
    json edges = json::array();
    for (auto [a, b] : m) edges.push_back({a, b});
    factors.push_back(std::move(edges));
  }
  return {{"kind", "of"}, {"n", f.points()}, {"factors", std::move(factors)}};
}

inline json to_json(const Structure& s) {
  return std::visit([](const auto& x) { return to_json(x); }, s);
}

namespace detail {

template <class T>
T get(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(Errc::parse_error, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(Errc::parse_error, std::string("field '") + key + "': " + e.what());
  }
}

}  // namespace detail

inline Structure structure_from_json(const json& j) {
  const auto kind = detail::get<std::string>(j, "kind");
  const int n = detail::get<int>(j, "n");
  if (kind == "latin") return validate_latin(n, detail::get<std::vector<std::vector<int>>>(j, "grid"));
  if (kind == "sts") return validate_sts(n, detail::get<std::vector<std::vector<int>>>(j, "blocks"));
  if (kind == "of" || kind == "ep") {
    auto raw = detail::get<std::vector<std::vector<std::vector<int>>>>(j, "factors");
    std::vector<Matching> factors;
    for (const auto& m : raw) {
      Matching mm;
      for (const auto& e : m) {
        if (e.size() != 2) throw Error(Errc::parse_error, "edge must have two endpoints");
        mm.emplace_back(e[0], e[1]);
      }
      factors.push_back(std::move(mm));
    }
    return validate_one_factorization(n, factors);
  }
  throw Error(Errc::parse_error, "unknown kind '" + kind + "'");
}

/// Plain-text Latin square: n lines of n integers.
inline LatinSquare latin_from_text(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::vector<int>> rows;
  for (std::string line; std::getline(in, line);) {
    std::istringstream ls(line);
    std::vector<int> row;
    std::string tok;
    while (ls >> tok) {
      try {
        std::size_t used = 0;
        row.push_back(std::stoi(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::logic_error&) {
        throw Error(Errc::parse_error, "bad integer '" + tok + "'");
      }
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return validate_latin(static_cast<int>(rows.size()), rows);
}

inline std::string latin_to_text(const LatinSquare& s) {
  std::string out;
  for (int i = 0; i < s.order(); ++i) {
    for (int j = 0; j < s.order(); ++j) {
      if (j) out += ' ';
      out += std::to_string(s.at(i, j));
    }
    out += '\n';
  }
  return out;
}

/// Structure from file contents: JSON if it starts with '{', else a
/// plain-text Latin square.
inline Structure structure_from_string(const std::string& text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw Error(Errc::parse_error, e.what());
    }
    return structure_from_json(j);
  }
  return latin_from_text(text);
}

inline ZeroOneMatrix matrix_from_text(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  const int n = static_cast<int>(lines.size());
  ZeroOneMatrix m(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(lines[i].size()) != n)
      throw Error(Errc::parse_error, "matrix row " + std::to_string(i) + " has length " + std::to_string(lines[i].size()) + ", expected " + std::to_string(n));
    for (int j = 0; j < n; ++j) {
      char c = lines[i][j];
      if (c != '0' && c != '1') throw Error(Errc::parse_error, std::string("matrix entry '") + c + "' is not 0 or 1");
      m.set(i, j, c == '1');
    }
  }
  return m;
}

inline std::string matrix_to_text(const ZeroOneMatrix& m) {
  std::string out;
  for (int i = 0; i < m.dim(); ++i) {
    for (int j = 0; j < m.dim(); ++j) out += m.at(i, j) ? '1' : '0';
    out += '\n';
  }
  return out;
}

inline PointPermutation point_perm_from_text(const std::string& text) {
  std::istringstream in(text);
  std::vector<int> img;
  std::string tok;
  while (in >> tok) {
    try {
      std::size_t used = 0;
      img.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::logic_error&) {
      throw Error(Errc::parse_error, "bad integer '" + tok + "'");
    }
  }
  return PointPermutation(std::move(img));
}

inline std::string point_perm_to_text(const PointPermutation& p) {
  std::string out;
  for (int i = 0; i < p.degree(); ++i) {
    if (i) out += ' ';
    out += std::to_string(p(i));
  }
  return out + '\n';
}

inline json to_json(const TriplePermutation& g) {
  return {{"sigma", g.sigma_word()}, {"fr", g.map(kRow)}, {"fc", g.map(kCol)}, {"fe", g.map(kEntry)}};
}

inline TriplePermutation triple_perm_from_json(const json& j) {
  return TriplePermutation::from_word(detail::get<std::string>(j, "sigma"),
                                      {detail::get<std::vector<int>>(j, "fr"), detail::get<std::vector<int>>(j, "fc"), detail::get<std::vector<int>>(j, "fe")});
}

inline json to_json(const Graph& g) {
  json edges = json::array();
  for (auto [a, b] : g.edges()) edges.push_back({a, b});
  return {{"v", g.vertices()}, {"edges", std::move(edges)}};
}

inline Graph graph_from_json(const json& j) {
  const int v = detail::get<int>(j, "v");
  if (v < 0) throw Error(Errc::out_of_range, "negative vertex count");
  Graph g(v);
  for (const auto& e : detail::get<std::vector<std::vector<int>>>(j, "edges")) {
    if (e.size() != 2) throw Error(Errc::parse_error, "edge must have two endpoints");
    g.add_edge(e[0], e[1]);
  }
  return g;
}

inline json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::parse_error, e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::not_found, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace asymlab::io
