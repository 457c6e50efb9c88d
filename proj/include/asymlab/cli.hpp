#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "asymlab/asymmetry.hpp"
#include "asymlab/enumerate.hpp"
#include "asymlab/io.hpp"
#include "asymlab/permanent.hpp"
#include "asymlab/report.hpp"
#include "asymlab/srg.hpp"

namespace asymlab::cli {

inline constexpr const char* kVersion = "0.3.0";

using io::json;

/// On-disk count cache. Entries that fail to parse or carry another
/// version are treated as missing.
class CountCache {
 public:
  explicit CountCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  static std::filesystem::path default_dir(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("ASYMLAB_CACHE"); env && *env) return env;
    return ".asymlab-cache";
  }

  std::optional<BigInt> get(Kind kind, int n, bool reduced) const {
    std::ifstream in(path(kind, n, reduced));
    if (!in) return std::nullopt;
    try {
      json j = json::parse(in);
      if (j.at("version") != kVersion) return std::nullopt;
      return BigInt(j.at("count").get<std::string>());
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }

  void put(Kind kind, int n, bool reduced, const BigInt& count) const {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) return;  // advisory only
    const auto final_path = path(kind, n, reduced);
    const auto tmp = final_path.string() + ".tmp";
    {
      std::ofstream out(tmp);
      if (!out) return;
      json j = {{"version", kVersion}, {"kind", kind_name(kind)}, {"n", n}, {"reduced", reduced}, {"count", count.str()}};
      out << j.dump() << '\n';
    }
    std::filesystem::rename(tmp, final_path, ec);
  }

 private:
  std::filesystem::path path(Kind kind, int n, bool reduced) const {
    return dir_ / (kind_name(kind) + "-" + std::to_string(n) + (reduced ? "-reduced" : "") + ".json");
  }
  std::filesystem::path dir_;
};

struct Flags {
  std::string kind;
  int n = 0;
  std::optional<double> eps;
  int jobs = 1;
  bool count_only = false;
  bool reduced_only = false;
  double budget = 0;
  std::string cache_dir;
  bool no_cache = false;
  std::string format = "json";
  std::vector<std::string> files;
  std::string construct;
  int size = 3;
  int max_n = 30;
};

namespace detail {

inline json generators_json(const AutReport& r, const io::Structure& s) {
  json gens = json::array();
  if (const auto* sq = std::get_if<LatinSquare>(&s)) {
    for (const auto& g : r.generators) gens.push_back(io::to_json(TriplePermutation::from_points(g, sq->order())));
  } else {
    for (const auto& g : r.generators) gens.push_back(g);
  }
  return gens;
}

inline AutReport structure_aut(const io::Structure& s) {
  return std::visit(
      [](const auto& x) -> AutReport {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, LatinSquare>) return aut_order_latin(x);
        else if constexpr (std::is_same_v<T, Sts>) return aut_order_sts(x);
        else return aut_order_of(x);
      },
      s);
}

inline int structure_order(const io::Structure& s) {
  return std::visit(
      [](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, LatinSquare>) return x.order();
        else return x.points();
      },
      s);
}

inline std::string structure_kind(const io::Structure& s) { return s.index() == 0 ? "latin" : s.index() == 1 ? "sts" : "of"; }

inline void need_files(const Flags& f, std::size_t k, const char* what) {
  if (f.files.size() != k) throw CLI::ValidationError(what);
}

inline std::string csv_line(std::initializer_list<std::string> cells) {
  std::string out;
  for (const auto& c : cells) {
    if (!out.empty()) out += ',';
    out += c;
  }
  return out + '\n';
}

}  // namespace detail

inline void cmd_enumerate(const Flags& f, std::ostream& out) {
  const Kind kind = parse_kind(f.kind);
  if (f.reduced_only && kind != Kind::latin) throw Error(Errc::kind_mismatch, "--reduced-only applies to latin only");
  EnumOptions opt;
  opt.jobs = f.jobs;
  opt.reduced_only = f.reduced_only;
  opt.budget_seconds = f.budget;
  if (!f.count_only) {
    // one structure per line, in enumeration order regardless of --jobs
    opt.jobs = 1;
    auto emit = [&](const auto& x) { out << io::to_json(x).dump() << '\n'; };
    switch (kind) {
      case Kind::latin: enumerate_latin(f.n, emit, opt); break;
      case Kind::sts: enumerate_sts(f.n, emit, opt); break;
      case Kind::of: enumerate_one_factorizations(f.n, emit, opt); break;
    }
    return;
  }
  opt.count_only = true;
  CountCache cache(CountCache::default_dir(f.cache_dir));
  std::optional<BigInt> count;
  if (!f.no_cache) count = cache.get(kind, f.n, f.reduced_only);
  if (!count) {
    switch (kind) {
      case Kind::latin: count = enumerate_latin(f.n, [](const LatinSquare&) {}, opt); break;
      case Kind::sts: count = enumerate_sts(f.n, [](const Sts&) {}, opt); break;
      case Kind::of: count = enumerate_one_factorizations(f.n, [](const OneFactorization&) {}, opt); break;
    }
    if (!f.no_cache) cache.put(kind, f.n, f.reduced_only, *count);
  }
  if (io::parse_format(f.format) == io::Format::csv) {
    out << "kind,n,reduced,count\n" << detail::csv_line({kind_name(kind), std::to_string(f.n), f.reduced_only ? "1" : "0", count->str()});
    return;
  }
  json j = {{"kind", kind_name(kind)}, {"n", f.n}};
  if (f.reduced_only) j["reduced"] = true;
  j["count"] = count->str();
  out << j.dump() << '\n';
}

inline void cmd_aut(const Flags& f, std::ostream& out) {
  detail::need_files(f, 1, "aut takes one structure file");
  io::Structure s = io::structure_from_string(io::read_file(f.files[0]));
  AutReport r = detail::structure_aut(s);
  if (io::parse_format(f.format) == io::Format::csv) {
    out << "kind,n,order,trivial\n" << detail::csv_line({detail::structure_kind(s), std::to_string(detail::structure_order(s)), r.order.str(), r.is_trivial ? "1" : "0"});
    return;
  }
  json j = {{"kind", detail::structure_kind(s)}, {"n", detail::structure_order(s)}, {"order", r.order.str()}, {"is_trivial", r.is_trivial}};
  j["generators"] = detail::generators_json(r, s);
  out << j.dump() << '\n';
}

inline void cmd_fixed(const Flags& f, std::ostream& out) {
  const auto fmt = io::parse_format(f.format);
  if (f.files.size() == 1) {
    // count of labeled squares admitting a triple permutation
    if (f.n <= 0) throw CLI::ValidationError("fixed with one file needs --n and a triple permutation");
    TriplePermutation g = io::triple_perm_from_json(io::parse_json(io::read_file(f.files[0])));
    BigInt c = count_fixed_latin(g, f.n);
    const int r = latin_fixed_position_bound(g);
    const double bound_log = latin_fixed_square_bound(f.n, r).log_double();
    if (fmt == io::Format::csv) {
      out << "n,count,r,bound_log\n" << detail::csv_line({std::to_string(f.n), c.str(), std::to_string(r), io::fmt_real(bound_log)});
      return;
    }
    out << json{{"n", f.n}, {"count", c.str()}, {"r", r}, {"bound_log", bound_log}}.dump() << '\n';
    return;
  }
  detail::need_files(f, 2, "fixed takes a structure or graph file and a permutation file");
  const std::string first = io::read_file(f.files[0]);
  const std::string second = io::read_file(f.files[1]);
  auto first_char = first.find_first_not_of(" \t\r\n");
  if (first_char != std::string::npos && first[first_char] == '{') {
    json j = io::parse_json(first);
    if (j.contains("v") && j.contains("edges")) {
      Graph g = io::graph_from_json(j);
      BigInt c = count_fixed_one_factors(g, io::point_perm_from_text(second));
      const int k = g.regular_degree();
      const double bound_log = static_cast<double>(Real(g.vertices()) / 4 * log(Real(8) * exp(Real(1)) * k));
      if (fmt == io::Format::csv) {
        out << "v,k,fixed_one_factors,bound_log\n" << detail::csv_line({std::to_string(g.vertices()), std::to_string(k), c.str(), io::fmt_real(bound_log)});
        return;
      }
      out << json{{"v", g.vertices()}, {"k", k}, {"fixed_one_factors", c.str()}, {"bound_log", bound_log}}.dump() << '\n';
      return;
    }
  }
  io::Structure s = io::structure_from_string(first);
  FixStats st;
  if (const auto* sq = std::get_if<LatinSquare>(&s)) {
    st = latin_fix_stats(io::triple_perm_from_json(io::parse_json(second)), *sq);
  } else if (const auto* t = std::get_if<Sts>(&s)) {
    st = sts_fix_stats(io::point_perm_from_text(second), *t);
  } else {
    st = ep_fix_stats(io::point_perm_from_text(second), std::get<OneFactorization>(s));
  }
  out << io::write_report(st, fmt);
}

inline void cmd_permanent(const Flags& f, std::ostream& out) {
  detail::need_files(f, 1, "permanent takes one matrix file");
  ZeroOneMatrix m = io::matrix_from_text(io::read_file(f.files[0]));
  PermanentOptions opt;
  opt.jobs = f.jobs;
  opt.max_n = f.max_n;
  BigInt p = permanent_exact(m, opt);
  const int k = m.regular_sum();
  std::optional<double> lower;
  if (k > 0) lower = bang_friedland_lower(m.dim(), k).log_double();
  if (io::parse_format(f.format) == io::Format::csv) {
    out << "n,permanent,k,lower_log\n"
        << detail::csv_line({std::to_string(m.dim()), p.str(), k >= 0 ? std::to_string(k) : "", lower ? io::fmt_real(*lower) : ""});
    return;
  }
  json j = {{"n", m.dim()}, {"permanent", p.str()}};
  j["k"] = k >= 0 ? json(k) : json(nullptr);
  j["lower_log"] = lower ? json(*lower) : json(nullptr);
  out << j.dump() << '\n';
}

inline void cmd_bounds(const Flags& f, std::ostream& out) {
  const Kind kind = parse_kind(f.kind);
  const auto [lo, up] = bound_pair(kind);
  const double eps = f.eps.value_or(0.1);
  const double lower = bound_eval(lo, f.n, eps).log_double();
  const double upper = bound_eval(up, f.n, eps).log_double();
  if (io::parse_format(f.format) == io::Format::csv) {
    out << "kind,n,eps,lower_log,aut_upper_log\n"
        << detail::csv_line({kind_name(kind), std::to_string(f.n), kind == Kind::latin ? "" : io::fmt_real(eps), io::fmt_real(lower), io::fmt_real(upper)});
    return;
  }
  json j = {{"kind", kind_name(kind)}, {"n", f.n}};
  j["eps"] = kind == Kind::latin ? json(nullptr) : json(eps);
  j["lower_log"] = lower;
  j["aut_upper_log"] = upper;
  out << j.dump() << '\n';
}

inline void cmd_crossover(const Flags& f, std::ostream& out) {
  const Kind kind = parse_kind(f.kind);
  const double eps = f.eps.value_or(0.1);
  const int n0 = crossover_order(kind, eps);
  if (io::parse_format(f.format) == io::Format::csv) {
    out << "kind,eps,n0\n" << detail::csv_line({kind_name(kind), kind == Kind::latin ? "" : io::fmt_real(eps), std::to_string(n0)});
    return;
  }
  json j = {{"kind", kind_name(kind)}};
  j["eps"] = kind == Kind::latin ? json(nullptr) : json(eps);
  j["n0"] = n0;
  out << j.dump() << '\n';
}

inline void cmd_report(const Flags& f, std::ostream& out) {
  out << io::write_report(asymmetry_report(parse_kind(f.kind), f.n, f.jobs), io::parse_format(f.format));
}

inline void cmd_srg(const Flags& f, std::ostream& out) {
  Graph g;
  std::optional<std::variant<LatinSquare, Sts>> source;
  if (!f.construct.empty()) {
    if (!f.files.empty()) throw CLI::ValidationError("srg takes a file or --construct, not both");
    if (f.construct == "triangular") g = classical_graph(ClassicalKind::triangular, f.n);
    else if (f.construct == "lattice") g = classical_graph(ClassicalKind::square_lattice, f.n);
    else if (f.construct == "multipartite") g = complete_multipartite(f.n, f.size);
    else throw CLI::ValidationError("--construct must be triangular, lattice or multipartite");
  } else {
    detail::need_files(f, 1, "srg takes one graph or structure file");
    const std::string text = io::read_file(f.files[0]);
    json j;
    bool is_graph = false;
    if (auto c = text.find_first_not_of(" \t\r\n"); c != std::string::npos && text[c] == '{') {
      j = io::parse_json(text);
      is_graph = j.contains("v") && j.contains("edges");
    }
    if (is_graph) {
      g = io::graph_from_json(j);
    } else {
      io::Structure s = io::structure_from_string(text);
      if (const auto* sq = std::get_if<LatinSquare>(&s)) {
        g = latin_square_graph(*sq);
        source = *sq;
      } else if (const auto* t = std::get_if<Sts>(&s)) {
        g = steiner_graph(*t);
        source = *t;
      } else {
        throw Error(Errc::kind_mismatch, "srg accepts Latin squares and Steiner triple systems");
      }
    }
  }
  SrgParams p = srg_params(g);
  if (io::parse_format(f.format) == io::Format::csv) {
    out << io::to_csv(p);
    return;
  }
  json j = io::to_json(p);
  j["least_eigenvalue"] = least_eigenvalue(g);
  j["closed_form_root"] = srg_least_root(p);
  if (source) {
    AutComparison c = aut_comparison(*source, g);
    j["aut_comparison"] = {{"graph_aut_order", c.graph_aut_order.str()}, {"structure_aut_order", c.structure_aut_order.str()}, {"induced_equal", c.induced_equal}};
  }
  out << j.dump() << '\n';
}

/// Full command line. Exit 0 on success, 1 on a domain error (one JSON
/// line on err), 2 on a usage error.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact enumeration, automorphism groups and bound checks for Latin squares, Steiner triple systems and 1-factorizations", "asymlab"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Flags f;

  auto kind_opt = [&](CLI::App* s) { return s->add_option("--kind", f.kind, "latin, sts or of (alias ep)")->required()->check(CLI::IsMember({"latin", "sts", "of", "ep"})); };
  auto n_opt = [&](CLI::App* s) { return s->add_option("--n", f.n, "order")->check(CLI::Range(1, 1'000'000)); };
  auto fmt_opt = [&](CLI::App* s) { s->add_option("--format", f.format, "json or csv")->check(CLI::IsMember({"json", "csv"})); };
  auto jobs_opt = [&](CLI::App* s) { s->add_option("--jobs", f.jobs, "worker threads")->check(CLI::Range(1, 1024)); };

  auto* en = app.add_subcommand("enumerate", "enumerate or count labeled structures");
  kind_opt(en);
  n_opt(en)->required();
  jobs_opt(en);
  fmt_opt(en);
  en->add_flag("--count-only", f.count_only, "print the count only");
  en->add_flag("--reduced-only", f.reduced_only, "reduced Latin squares only");
  en->add_option("--budget", f.budget, "wall-clock budget in seconds (needed for sts 13)")->check(CLI::NonNegativeNumber);
  en->add_option("--cache-dir", f.cache_dir, "count cache directory");
  en->add_flag("--no-cache", f.no_cache, "bypass the count cache");

  auto* au = app.add_subcommand("aut", "automorphism group order of a structure file");
  au->add_option("file", f.files, "structure file")->required();
  fmt_opt(au);

  auto* fx = app.add_subcommand("fixed", "fixed-structure statistics: STRUCT PERM, GRAPH PERM, or --n N TRIPLE_PERM");
  fx->add_option("files", f.files, "input files")->required();
  n_opt(fx);
  fmt_opt(fx);

  auto* pm = app.add_subcommand("permanent", "exact permanent of a 0/1 matrix file");
  pm->add_option("file", f.files, "matrix file")->required();
  pm->add_option("--max-n", f.max_n, "dimension cap")->check(CLI::Range(1, 64));
  jobs_opt(pm);
  fmt_opt(pm);

  auto* bd = app.add_subcommand("bounds", "log-domain lower and automorphism upper bounds");
  kind_opt(bd);
  n_opt(bd)->required();
  bd->add_option("--eps", f.eps, "epsilon in (0,1), default 0.1")->check(CLI::Range(0.0, 1.0));
  fmt_opt(bd);

  auto* cr = app.add_subcommand("crossover", "least order where the bounds cross for good");
  kind_opt(cr);
  cr->add_option("--eps", f.eps, "epsilon in (0,1), default 0.1")->check(CLI::Range(0.0, 1.0));
  fmt_opt(cr);

  auto* rp = app.add_subcommand("report", "asymmetry report over all labeled structures");
  kind_opt(rp);
  n_opt(rp)->required();
  jobs_opt(rp);
  fmt_opt(rp);

  auto* sg = app.add_subcommand("srg", "strong regularity, least eigenvalue and automorphism comparison");
  sg->add_option("file", f.files, "graph or structure file");
  sg->add_option("--construct", f.construct, "triangular, lattice or multipartite");
  n_opt(sg);
  sg->add_option("--size", f.size, "part size for multipartite")->check(CLI::Range(1, 1000));
  fmt_opt(sg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*en) cmd_enumerate(f, out);
    else if (*au) cmd_aut(f, out);
    else if (*fx) cmd_fixed(f, out);
    else if (*pm) cmd_permanent(f, out);
    else if (*bd) cmd_bounds(f, out);
    else if (*cr) cmd_crossover(f, out);
    else if (*rp) cmd_report(f, out);
    else if (*sg) cmd_srg(f, out);
  } catch (const CLI::ValidationError& e) {
    err << "usage: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << json{{"error", std::string(errc_name(e.code()))}, {"message", e.what()}}.dump() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << json{{"error", "Internal"}, {"message", e.what()}}.dump() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace asymlab::cli
