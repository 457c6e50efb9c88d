#include <gtest/gtest.h>

#include <set>

#include "asymlab/structures.hpp"

using namespace asymlab;

namespace {

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

TEST(ValidateLatin, AcceptsSmallSquares) {
  EXPECT_EQ(validate_latin(1, {{0}}).order(), 1);
  auto s = validate_latin(3, {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});
  EXPECT_EQ(s.at(1, 2), 0);
  EXPECT_EQ(s.rows(), (std::vector<std::vector<int>>{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}));
}

TEST(ValidateLatin, Errors) {
  EXPECT_EQ(code_of([] { validate_latin(2, {{0, 1}, {0, 1}}); }), Errc::repeat_in_column);
  EXPECT_EQ(code_of([] { validate_latin(2, {{0, 0}, {1, 1}}); }), Errc::repeat_in_row);
  EXPECT_EQ(code_of([] { validate_latin(2, {{0, 2}, {1, 0}}); }), Errc::out_of_range);
  try {
    validate_latin(2, {{0, 1}, {0, 1}});
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("RepeatInColumn"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find('0'), std::string::npos);
  }
}

TEST(ValidateLatinRectangle, RowsAndColumns) {
  EXPECT_EQ(validate_latin_rectangle(3, {{0, 1, 2}, {1, 2, 0}}).row_count(), 2);
  EXPECT_EQ(validate_latin_rectangle(4, {}).row_count(), 0);
  EXPECT_EQ(code_of([] { validate_latin_rectangle(3, {{0, 1, 2}, {0, 2, 1}}); }), Errc::repeat_in_column);
}

TEST(ValidateSts, Examples) {
  EXPECT_EQ(validate_sts(3, {{2, 0, 1}}).blocks().size(), 1u);
  std::vector<std::vector<int>> fano;
  for (int i = 0; i < 7; ++i) fano.push_back({i, (i + 1) % 7, (i + 3) % 7});
  auto t = validate_sts(7, fano);
  EXPECT_EQ(t.blocks().size(), 7u);
  EXPECT_TRUE(std::is_sorted(t.blocks().begin(), t.blocks().end()));
  for (const auto& b : t.blocks()) EXPECT_TRUE(b[0] < b[1] && b[1] < b[2]);
  EXPECT_EQ(code_of([] { validate_sts(5, {}); }), Errc::inadmissible_order);
  EXPECT_EQ(code_of([] { validate_sts(3, {{0, 1, 1}}); }), Errc::malformed_block);
  EXPECT_EQ(code_of([] { validate_sts(3, {}); }), Errc::pair_uncovered);
  EXPECT_EQ(code_of([] { validate_sts(3, {{0, 1, 2}, {0, 1, 2}}); }), Errc::pair_covered_twice);
}

TEST(ValidateSts, CanonicalFormIsIdempotent) {
  for (const Sts& t : {fano_sts(), affine_sts9(), cyclic_sts13()}) {
    std::vector<std::vector<int>> raw;
    for (const auto& b : t.blocks()) raw.push_back({b[0], b[1], b[2]});
    EXPECT_EQ(validate_sts(t.points(), raw).blocks(), t.blocks());
  }
}

TEST(ValidateOneFactorization, Examples) {
  EXPECT_EQ(validate_one_factorization(2, {{{0, 1}}}).factors().size(), 1u);
  auto f = validate_one_factorization(4, {{{1, 2}, {0, 3}}, {{0, 1}, {2, 3}}, {{0, 2}, {1, 3}}});
  EXPECT_EQ(f.factors()[0], (Matching{{0, 1}, {2, 3}}));
  EXPECT_EQ(f.factors()[2], (Matching{{0, 3}, {1, 2}}));
  EXPECT_EQ(code_of([] { validate_one_factorization(3, {}); }), Errc::odd_order);
  EXPECT_EQ(code_of([] { validate_one_factorization(4, {{{0, 1}, {2, 3}}, {{0, 1}, {2, 3}}, {{0, 3}, {1, 2}}}); }), Errc::edge_repeated);
  EXPECT_EQ(code_of([] { validate_one_factorization(4, {{{0, 1}, {1, 2}}, {{0, 2}, {1, 3}}, {{0, 3}, {1, 2}}}); }), Errc::factor_not_perfect_matching);
  EXPECT_EQ(code_of([] { validate_one_factorization(4, {{{0, 1}, {2, 3}}, {{0, 2}, {1, 3}}}); }), Errc::edge_missing);
}

TEST(ValidateOneFactorization, EdgeRepeatedNamesEdge) {
  try {
    validate_one_factorization(4, {{{0, 1}, {2, 3}}, {{0, 1}, {2, 3}}, {{0, 3}, {1, 2}}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("0-1"), std::string::npos) << e.what();
  }
}

TEST(CellsOf, Bijections) {
  EXPECT_EQ(cells_of(cyclic_latin(1)), (std::vector<Cell>{{0, 0, 0}}));
  auto two = cells_of(validate_latin(2, {{0, 1}, {1, 0}}));
  EXPECT_EQ(two, (std::vector<Cell>{{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}}));
  for (int n = 1; n <= 7; ++n) {
    auto cells = cells_of(cyclic_latin(n));
    ASSERT_EQ(cells.size(), static_cast<std::size_t>(n * n));
    std::set<std::pair<int, int>> rc, re, ce;
    for (auto c : cells) {
      rc.insert({c.row, c.col});
      re.insert({c.row, c.entry});
      ce.insert({c.col, c.entry});
    }
    EXPECT_EQ(rc.size(), cells.size());
    EXPECT_EQ(re.size(), cells.size());
    EXPECT_EQ(ce.size(), cells.size());
  }
}

TEST(Constructions, AreValid) {
  for (int n = 1; n <= 9; ++n) EXPECT_NO_THROW(validate_latin(n, cyclic_latin(n).rows()));
  EXPECT_EQ(fano_sts().blocks().size(), 7u);
  EXPECT_EQ(affine_sts9().blocks().size(), 12u);
  EXPECT_EQ(cyclic_sts13().blocks().size(), 26u);
  for (int n = 2; n <= 12; n += 2) EXPECT_EQ(round_robin_one_factorization(n).factors().size(), static_cast<std::size_t>(n - 1));
}

TEST(ZeroOneMatrix, Sums) {
  auto j = ZeroOneMatrix::all_ones(4);
  EXPECT_EQ(j.regular_sum(), 4);
  auto m = ZeroOneMatrix::identity(3);
  m.set(0, 1, true);
  EXPECT_EQ(m.row_sum(0), 2);
  EXPECT_EQ(m.col_sum(1), 2);
  EXPECT_EQ(m.regular_sum(), -1);
  EXPECT_TRUE(m.transposed().at(1, 0));
}

TEST(PointPermutation, Validation) {
  EXPECT_THROW(PointPermutation({0, 0}), Error);
  EXPECT_THROW(PointPermutation({0, 2}), Error);
  PointPermutation p({1, 0, 2});
  EXPECT_EQ(p.fixed_points(), 1);
  EXPECT_FALSE(p.is_identity());
  EXPECT_TRUE(PointPermutation::identity(4).is_identity());
}

TEST(Graph, Basics) {
  Graph g(4);
  g.add_edge(0, 1);
  g.add_edge(1, 0);
  g.add_edge(2, 3);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_TRUE(g.adjacent(1, 0));
  EXPECT_EQ(g.regular_degree(), 1);
  EXPECT_THROW(g.add_edge(1, 1), Error);
  EXPECT_THROW(g.add_edge(0, 4), Error);
  EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 1}, {2, 3}}));
}
