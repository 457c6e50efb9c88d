#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "asymlab/asymmetry.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace asymlab;

namespace {

TriplePermutation iso(int n, std::vector<int> fr, std::vector<int> fc, std::vector<int> fe, const std::string& word = "RCE") {
  (void)n;
  return TriplePermutation::from_word(word, {std::move(fr), std::move(fc), std::move(fe)});
}

std::vector<int> shift(int n, int d) {
  std::vector<int> p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[i] = (i + d) % n;
  return p;
}

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::parse_error;
}

}  // namespace

TEST(FixedCells, Examples) {
  auto z3 = cyclic_latin(3);
  EXPECT_EQ(fixed_cells(TriplePermutation::identity(3), z3), 9);
  EXPECT_EQ(fixed_cells(iso(3, identity_perm(3), identity_perm(3), identity_perm(3), "CRE"), z3), 3);
  EXPECT_EQ(fixed_cells(iso(3, shift(3, 1), identity_perm(3), shift(3, 1)), z3), 0);
  EXPECT_EQ(code_of([&] { fixed_cells(iso(3, shift(3, 1), identity_perm(3), identity_perm(3)), z3); }), Errc::not_an_automorphism);
}

TEST(LatinFixStats, BoundsHoldOnSmallSquares) {
  LatinAutCache cache;
  for (int n = 1; n <= 4; ++n)
    enumerate_latin(n, [&](const LatinSquare& s) {
      cache.for_each_automorphism(s, [&](const TriplePermutation& g) {
        FixStats st = latin_fix_stats(g, s);
        EXPECT_LE(st.fixed_objects, st.total_objects);
        EXPECT_GE(st.orbit_count, st.fixed_objects);
        if (g.moves_classes()) EXPECT_LE(st.fixed_objects, n);
      });
    });
}

TEST(LatinAutCache, AgreesWithDirectSearch) {
  LatinAutCache cache;
  for (int n = 1; n <= 4; ++n)
    enumerate_latin(n, [&](const LatinSquare& s) {
      const BigInt direct = aut_order_latin(s).order;
      EXPECT_EQ(cache.order(s), direct);
      std::set<Perm> seen;
      cache.for_each_automorphism(s, [&](const TriplePermutation& g) {
        EXPECT_TRUE(is_autoparatopism(g, s));
        seen.insert(g.to_points());
      });
      EXPECT_EQ(BigInt(seen.size()), direct);
    });
  EXPECT_EQ(cache.forms_seen(), 1u + 1u + 1u + 4u);  // reduced squares of order 1..4
}

TEST(IsotopismToReduced, GivesReducedIsotope) {
  enumerate_latin(4, [](const LatinSquare& s) {
    auto r = apply_isotopism(isotopism_to_reduced(s), s);
    EXPECT_NO_THROW(validate_latin(4, r.rows()));
    for (int i = 0; i < 4; ++i) {
      EXPECT_EQ(r.at(0, i), i);
      EXPECT_EQ(r.at(i, 0), i);
    }
  });
}

TEST(CountFixedLatin, Examples) {
  EXPECT_EQ(count_fixed_latin(TriplePermutation::identity(3), 3), 12);
  EXPECT_EQ(count_fixed_latin(iso(3, identity_perm(3), identity_perm(3), identity_perm(3), "CRE"), 3), 6);
  auto t = iso(3, shift(3, 1), shift(3, 1), shift(3, 1));
  // oracle: filter the brute-force list directly
  long long brute = 0;
  for (const auto& g : oracle::latin_squares(3)) {
    bool ok = true;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) ok = ok && g[((i + 1) % 3) * 3 + (j + 1) % 3] == (g[i * 3 + j] + 1) % 3;
    brute += ok;
  }
  EXPECT_EQ(brute, 3);
  EXPECT_EQ(count_fixed_latin(t, 3), brute);
  for (int n = 1; n <= 5; ++n) EXPECT_EQ(count_fixed_latin(TriplePermutation::identity(n), n), count_latin(n));
  EXPECT_EQ(code_of([] { count_fixed_latin(TriplePermutation::identity(6), 6); }), Errc::cap_exceeded);
}

TEST(CountFixedLatin, PositionBound) {
  EXPECT_EQ(latin_fixed_position_bound(TriplePermutation::identity(3)), 9);
  EXPECT_EQ(latin_fixed_position_bound(iso(3, identity_perm(3), identity_perm(3), identity_perm(3), "CRE")), 3);
  EXPECT_EQ(latin_fixed_position_bound(iso(3, shift(3, 1), identity_perm(3), shift(3, 1))), 0);
  EXPECT_EQ(latin_fixed_position_bound(iso(4, {1, 0, 2, 3}, {0, 1, 3, 2}, identity_perm(4))), 4);
}

TEST(StsFixStats, Examples) {
  auto fano = fano_sts();
  auto id = sts_fix_stats(PointPermutation::identity(7), fano);
  EXPECT_EQ(id.fixed_points, 7);
  EXPECT_EQ(id.fixed_objects, 7);
  EXPECT_EQ(id.orbit_count, 7);

  auto rot = sts_fix_stats(PointPermutation(shift(7, 1)), fano);
  EXPECT_EQ(rot.fixed_points, 0);
  EXPECT_EQ(rot.fixed_objects, 0);
  EXPECT_EQ(rot.orbit_count, 1);

  // (x, y) -> (x + 1, y) on AG(2,3), point 3x + y
  std::vector<int> tr(9);
  for (int p = 0; p < 9; ++p) tr[p] = 3 * ((p / 3 + 1) % 3) + p % 3;
  auto st = sts_fix_stats(PointPermutation(tr), affine_sts9());
  EXPECT_EQ(st.fixed_points, 0);
  EXPECT_EQ(st.fixed_objects, 3);
  EXPECT_EQ(st.orbit_count, 6);
  EXPECT_NEAR(static_cast<double>(st.bound_values.at("fixed_blocks_max_as_printed").value()), 3.75, 1e-12);
  EXPECT_NEAR(static_cast<double>(st.bound_values.at("block_orbits_sup").value()), 8.4375, 1e-12);

  EXPECT_EQ(code_of([&] { sts_fix_stats(PointPermutation({1, 0, 2, 3, 4, 5, 6}), fano); }), Errc::not_an_automorphism);
}

TEST(StsFixStats, PrintedFixedBlockBoundIsTooSmall) {
  // an involution of the Fano plane fixing a line pointwise fixes 3 blocks > 2.25
  auto fano = fano_sts();
  PermGroup g(7, aut_order_sts(fano).generators);
  int worst = 0;
  g.for_each([&](const Perm& p) {
    if (is_identity(p)) return;
    auto st = sts_fix_stats(PointPermutation(p), fano);
    worst = std::max(worst, st.fixed_objects);
  });
  EXPECT_EQ(worst, 3);
  EXPECT_GT(worst, static_cast<double>(sts_fixed_blocks_bound_as_printed(7)));
  EXPECT_LE(worst, static_cast<double>(sts_fixed_blocks_bound_subsystem(7)));
}

TEST(EpFixStats, Examples) {
  auto f = round_robin_one_factorization(4);
  auto id = ep_fix_stats(PointPermutation::identity(4), f);
  EXPECT_EQ(id.fixed_points, 4);
  EXPECT_EQ(id.fixed_objects, 3);
  EXPECT_EQ(id.orbit_count, 3);
  auto dbl = ep_fix_stats(PointPermutation({1, 0, 3, 2}), f);
  EXPECT_EQ(dbl.fixed_points, 0);
  EXPECT_EQ(dbl.fixed_objects, 3);
  EXPECT_EQ(dbl.orbit_count, 3);
  auto tr = ep_fix_stats(PointPermutation({1, 0, 2, 3}), f);
  EXPECT_EQ(tr.fixed_points, 2);
  EXPECT_EQ(tr.fixed_objects, 1);
  EXPECT_EQ(tr.orbit_count, 2);
}

TEST(EpFixStats, AllAutomorphismsOfK6) {
  enumerate_one_factorizations(6, [](const OneFactorization& f) {
    PermGroup g(6, aut_order_of(f).generators);
    g.for_each([&](const Perm& p) { EXPECT_NO_THROW(ep_fix_stats(PointPermutation(p), f)); });
  });
}

TEST(CountFixedOneFactors, Examples) {
  EXPECT_EQ(count_fixed_one_factors(fixtures::cycle(6), PointPermutation(shift(6, 1))), 0);
  EXPECT_EQ(count_fixed_one_factors(fixtures::cycle(6), PointPermutation(shift(6, 2))), 2);
  EXPECT_EQ(count_fixed_one_factors(fixtures::cycle(4), PointPermutation(shift(4, 2))), 2);
  EXPECT_EQ(count_fixed_one_factors(fixtures::complete(4), PointPermutation({1, 0, 3, 2})), 3);
  EXPECT_EQ(code_of([] { count_fixed_one_factors(fixtures::cycle(6), PointPermutation::identity(6)); }), Errc::has_fixed_vertex);
  EXPECT_EQ(code_of([] { count_fixed_one_factors(fixtures::cycle(6), PointPermutation({1, 0, 3, 2, 5, 4})); }), Errc::not_an_automorphism);
}

TEST(CountFixedOneFactors, MatchesFilteredMatchings) {
  // oracle: list all perfect matchings of the graph, keep the g-invariant ones
  for (const auto& [name, g] : fixtures::regular_family()) {
    if (g.vertices() > 10) continue;
    PermGroup grp(g.vertices(), colored_graph_aut(ColoredGraph(g)).generators);
    std::vector<oracle::Factor> matchings;
    for (const auto& m : oracle::perfect_matchings_of_kn(g.vertices())) {
      bool ok = true;
      for (auto [a, b] : m) ok = ok && g.adjacent(a, b);
      if (ok) matchings.push_back(m);
    }
    std::set<oracle::Factor> all(matchings.begin(), matchings.end());
    grp.for_each([&](const Perm& p) {
      PointPermutation pp(p);
      if (pp.fixed_points() > 0) return;
      long long brute = 0;
      for (const auto& m : matchings) {
        oracle::Factor img;
        for (auto [a, b] : m) img.emplace_back(p[a], p[b]);
        brute += oracle::normalize(img) == m;
      }
      EXPECT_EQ(count_fixed_one_factors(g, pp), brute) << name;
    });
  }
}

TEST(BoundEval, MatchesLongDoubleOracle) {
  const BoundKind kinds[] = {BoundKind::latin_lower, BoundKind::latin_aut_upper, BoundKind::sts_lower,
                             BoundKind::sts_aut_upper, BoundKind::ep_lower,     BoundKind::ep_aut_upper};
  for (int k = 0; k < 6; ++k)
    for (int n = 1; n <= 60; ++n) {
      const double got = bound_eval(kinds[k], n, 0.1).log_double();
      const long double want = oracle::bound(k, n, 0.1L);
      EXPECT_NEAR(got, static_cast<double>(want), 1e-9 * std::max(1.0L, std::fabs(want))) << k << " " << n;
    }
  EXPECT_NEAR(bound_eval(BoundKind::ep_aut_upper, 2).log_double(), 2.5 * std::log(2.0), 1e-12);
  EXPECT_NEAR(bound_eval(BoundKind::latin_aut_upper, 4).log_double(), std::log(6.0) + 3 * std::log(24.0) + 10 * std::log(4.0), 1e-12);
}

TEST(BoundEval, MissingEpsilon) {
  EXPECT_EQ(code_of([] { bound_eval(BoundKind::sts_lower, 9); }), Errc::missing_epsilon);
  EXPECT_EQ(code_of([] { bound_eval(BoundKind::ep_lower, 4); }), Errc::missing_epsilon);
  EXPECT_NO_THROW(bound_eval(BoundKind::sts_aut_upper, 9));
  EXPECT_EQ(code_of([] { bound_eval(BoundKind::sts_lower, 9, 1.5); }), Errc::out_of_range);
}

TEST(BoundEval, MonotoneUpperBounds) {
  for (auto kind : {BoundKind::latin_aut_upper, BoundKind::ep_aut_upper})
    for (int n = 2; n < 120; ++n) EXPECT_LT(bound_eval(kind, n), bound_eval(kind, n + 1)) << n;
}

TEST(Monotonicity, PowerFunctionPeaksAtAOverE) {
  // x ln(a/x) increases for x < a/e and decreases after, so the threshold
  // "x < ae" would be wrong
  for (double a : {1.0, 10.0, 1000.0}) {
    auto f = [a](double x) { return x * std::log(a / x); };
    const double peak = a / std::exp(1.0);
    for (double t = 0.05; t < 0.95; t += 0.05) EXPECT_LT(f(peak * t), f(peak * (t + 0.05))) << a;
    EXPECT_GT(f(peak * 1.5), f(peak * 2.0));
    EXPECT_GT(f(peak), f(a * std::exp(1.0) * 0.9));
  }
  // the orbit bound 5n^2/48 sits below a/e = n^3/6 for a = n^3 e / 6
  for (int n = 1; n <= 1000; ++n) EXPECT_LT(5.0 * n * n / 48, std::pow(n, 3) / 6.0);
}

TEST(Crossover, WindowAndMinimality) {
  struct Case {
    Kind kind;
    BoundKind lo, up;
  };
  for (auto c : {Case{Kind::latin, BoundKind::latin_lower, BoundKind::latin_aut_upper}, Case{Kind::sts, BoundKind::sts_lower, BoundKind::sts_aut_upper},
                 Case{Kind::of, BoundKind::ep_lower, BoundKind::ep_aut_upper}}) {
    const int n0 = crossover_order(c.kind, 0.1);
    const int lk = static_cast<int>(c.lo), uk = static_cast<int>(c.up);
    auto good = [&](int n) { return oracle::bound(uk, n, 0.1L) < oracle::bound(lk, n, 0.1L); };
    ASSERT_TRUE(admissible(c.kind, n0));
    for (int n = n0; n <= n0 + 50; ++n)
      if (admissible(c.kind, n)) EXPECT_TRUE(good(n)) << kind_name(c.kind) << " " << n;
    // every earlier admissible start has a failure in its window
    for (int s = 1; s < n0; ++s) {
      if (!admissible(c.kind, s)) continue;
      bool fails = false;
      for (int n = s; n <= s + 50; ++n) fails = fails || (admissible(c.kind, n) && !good(n));
      EXPECT_TRUE(fails) << kind_name(c.kind) << " " << s;
    }
  }
  EXPECT_EQ(crossover_order(Kind::latin), 232);
  EXPECT_EQ(crossover_order(Kind::sts, 0.1), 79);
  EXPECT_EQ(crossover_order(Kind::of, 0.1), 10);
  EXPECT_EQ(code_of([] { crossover_order(Kind::sts); }), Errc::missing_epsilon);
}

TEST(AsymmetryReport, Examples) {
  auto l3 = asymmetry_report(Kind::latin, 3);
  EXPECT_EQ(l3.total, 12);
  EXPECT_EQ(l3.with_nontrivial_aut, 12);
  EXPECT_EQ(l3.proportion, Rational(1));
  EXPECT_EQ(l3.aut_order_histogram, (std::map<BigInt, BigInt>{{108, 12}}));

  auto s7 = asymmetry_report(Kind::sts, 7);
  EXPECT_EQ(s7.total, 30);
  EXPECT_EQ(s7.aut_order_histogram, (std::map<BigInt, BigInt>{{168, 30}}));
  EXPECT_EQ(s7.classes, 1);

  auto f6 = asymmetry_report(Kind::of, 6);
  EXPECT_EQ(f6.total, 6);
  EXPECT_EQ(f6.with_nontrivial_aut, 6);
  EXPECT_EQ(f6.aut_order_histogram, (std::map<BigInt, BigInt>{{120, 6}}));

  auto l4 = asymmetry_report(Kind::latin, 4);
  EXPECT_EQ(l4.aut_order_histogram, (std::map<BigInt, BigInt>{{192, 432}, {576, 144}}));
  EXPECT_EQ(l4.classes, 2);
}

TEST(AsymmetryReport, WorkerCountDoesNotMatter) {
  for (int n = 1; n <= 5; ++n) {
    auto a = asymmetry_report(Kind::latin, n, 1);
    auto b = asymmetry_report(Kind::latin, n, 4);
    EXPECT_EQ(a.aut_order_histogram, b.aut_order_histogram);
    EXPECT_EQ(a.total, b.total);
  }
  EXPECT_EQ(asymmetry_report(Kind::of, 8, 1).aut_order_histogram, asymmetry_report(Kind::of, 8, 3).aut_order_histogram);
}
