#pragma once

#include <cstdio>
#include <string>

#include "asymlab/asymmetry.hpp"
#include "asymlab/io.hpp"
#include "asymlab/srg.hpp"

namespace asymlab::io {

enum class Format { json, csv };

inline Format parse_format(const std::string& s) {
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  throw Error(Errc::parse_error, "unknown format '" + s + "'");
}

// 12 significant digits; enough for the small rational bound values
inline std::string fmt_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

/// "order:count" pairs joined by ';', ascending order; empty when no rows.
inline std::string histogram_field(const std::map<BigInt, BigInt>& h) {
  std::string out;
  for (const auto& [order, count] : h) {
    if (!out.empty()) out += ';';
    out += order.str() + ':' + count.str();
  }
  return out;
}

inline json to_json(const AsymmetryReport& r) {
  json hist = json::object();
  for (const auto& [order, count] : r.aut_order_histogram) hist[order.str()] = count.str();
  return {{"kind", kind_name(r.kind)},
          {"n", r.n},
          {"total", r.total.str()},
          {"nontrivial", r.with_nontrivial_aut.str()},
          {"proportion_num", numerator(r.proportion).str()},
          {"proportion_den", denominator(r.proportion).str()},
          {"classes", r.classes.str()},
          {"histogram", std::move(hist)}};
}

inline json to_json(const FixStats& s) {
  json bounds = json::object();
  for (const auto& [name, v] : s.bound_values) bounds[name] = fmt_real(static_cast<double>(v.value()));
  json j = {{"kind", kind_name(s.kind)}, {"n", s.n}};
  j["fixed_points"] = s.fixed_points ? json(*s.fixed_points) : json(nullptr);
  j["fixed_objects"] = s.fixed_objects;
  j["total_objects"] = s.total_objects;
  j["orbit_count"] = s.orbit_count;
  j["bounds"] = std::move(bounds);
  return j;
}

inline json to_json(const SrgParams& p) { return {{"v", p.v}, {"k", p.k}, {"lambda", p.lambda}, {"mu", p.mu}}; }

// CSV: one header line, one data line. Columns are fixed per report type.

inline std::string to_csv(const AsymmetryReport& r) {
  return "kind,n,total,nontrivial,proportion_num,proportion_den,histogram\n" + kind_name(r.kind) + ',' + std::to_string(r.n) + ',' +
         r.total.str() + ',' + r.with_nontrivial_aut.str() + ',' + numerator(r.proportion).str() + ',' + denominator(r.proportion).str() + ',' +
         histogram_field(r.aut_order_histogram) + '\n';
}

inline std::string to_csv(const FixStats& s) {
  std::string bounds;
  for (const auto& [name, v] : s.bound_values) {
    if (!bounds.empty()) bounds += ';';
    bounds += name + '=' + fmt_real(static_cast<double>(v.value()));
  }
  return "kind,n,fixed_points,fixed_objects,total_objects,orbit_count,bounds\n" + kind_name(s.kind) + ',' + std::to_string(s.n) + ',' +
         (s.fixed_points ? std::to_string(*s.fixed_points) : std::string()) + ',' + std::to_string(s.fixed_objects) + ',' +
         std::to_string(s.total_objects) + ',' + std::to_string(s.orbit_count) + ',' + bounds + '\n';
}

inline std::string to_csv(const SrgParams& p) {
  return "v,k,lambda,mu\n" + std::to_string(p.v) + ',' + std::to_string(p.k) + ',' + std::to_string(p.lambda) + ',' + std::to_string(p.mu) + '\n';
}

template <class Report>
std::string write_report(const Report& r, Format f) {
  return f == Format::csv ? to_csv(r) : to_json(r).dump() + '\n';
}

}  // namespace asymlab::io
