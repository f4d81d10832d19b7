#include <cmath>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "braidqm/gambaudo_ghys.hpp"
#include "braidqm/reeb_extract.hpp"

using namespace braidqm;
using std::numbers::pi;

namespace {

double bump(double x, double y, double cx, double cy, double radius, double amp) {
    const double s = radius * radius - ((x - cx) * (x - cx) + (y - cy) * (y - cy));
    return s > 0.0 ? amp * s * s : 0.0;
}

} // namespace

TEST(GridFile, Parse) {
    std::istringstream ok("3 1.5\n0 0 0\n0 2 0\n0 0 0\n");
    const Grid g = parse_grid(ok);
    EXPECT_EQ(g.size, 3);
    EXPECT_DOUBLE_EQ(g.spacing(), 1.5);
    EXPECT_DOUBLE_EQ(g.at(1, 1), 2.0);
    EXPECT_DOUBLE_EQ(g.x(0), -1.5);

    std::istringstream short_rows("3 1\n0 0 0\n0 0\n");
    EXPECT_THROW(parse_grid(short_rows), InvalidInput);
    std::istringstream extra("3 1\n0 0 0\n0 0 0\n0 0 0 7\n");
    EXPECT_THROW(parse_grid(extra), InvalidInput);
    std::istringstream bad("x 1\n");
    EXPECT_THROW(parse_grid(bad), InvalidInput);
    std::istringstream tiny("2 1\n0 0 0 0\n");
    EXPECT_THROW(parse_grid(tiny), InvalidInput);
}

TEST(ReebExtract, ZeroHamiltonianIsRootOnly) {
    const Grid g = Grid::sample([](double, double) { return 0.0; }, 21, 1.0);
    const ReebTree t = reeb_from_grid(g);
    EXPECT_EQ(t.size(), 0u);
    EXPECT_EQ(gg_integral(t, sign_measure(3)), 0.0);
}

TEST(ReebExtract, RadialBumpMatchesAnalyticTree) {
    const double radius = 0.9;
    const Grid g = Grid::sample([&](double x, double y) { return bump(x, y, 0, 0, radius, 1.0); }, 241, 1.0);
    const ReebTree t = reeb_from_grid(g);
    ASSERT_EQ(t.size(), 1u);
    EXPECT_EQ(t.parent[0], t.root());
    EXPECT_EQ(t.edges[0].lo, 0.0);
    EXPECT_NEAR(t.edges[0].hi, radius * radius / 2.0, 0.01);
    const ReebTree exact = radial_tree(RadialProfile::bump(1.0, radius));
    for (double J : {0.02, 0.1, 0.2, 0.3, 0.38})
        EXPECT_NEAR(t.edges[0].hbar(J), exact.edges[0].hbar(J), 0.01) << J;
    EXPECT_NEAR(calabi(t), calabi(exact), 0.01 * std::abs(calabi(exact)));
    const double a = gg_integral(t, sign_measure(3)), b = gg_integral(exact, sign_measure(3));
    EXPECT_NEAR(a, b, 0.02 * std::abs(b));
}

TEST(ReebExtract, ErrorShrinksWithResolution) {
    const ReebTree exact = radial_tree(RadialProfile::bump(1.0, 0.8));
    double prev = 1e9;
    for (int size : {41, 81, 161}) {
        const ReebTree t = reeb_from_grid(Grid::sample([](double x, double y) { return bump(x, y, 0, 0, 0.8, 1.0); }, size, 1.0));
        const double err = std::abs(calabi(t) - calabi(exact));
        EXPECT_LT(err, prev) << size;
        prev = err;
    }
}

TEST(ReebExtract, NegativeWell) {
    const Grid g = Grid::sample([](double x, double y) { return -bump(x, y, 0, 0, 0.7, 2.0); }, 121, 1.0);
    const ReebTree t = reeb_from_grid(g);
    ASSERT_EQ(t.size(), 1u);
    EXPECT_LT(t.edges[0].hbar(0.0), 0.0);
    EXPECT_GT(calabi(t), 0.0);
}

TEST(ReebExtract, DisjointBumpsHangOffTheRoot) {
    const Grid g = Grid::sample(
        [](double x, double y) { return bump(x, y, -0.45, 0, 0.3, 1.0) + bump(x, y, 0.45, 0.1, 0.25, 2.0); }, 161, 1.0);
    const ReebTree t = reeb_from_grid(g);
    ASSERT_EQ(t.size(), 2u);
    EXPECT_EQ(t.parent[0], t.root());
    EXPECT_EQ(t.parent[1], t.root());
    std::vector<double> his{t.edges[0].hi, t.edges[1].hi};
    std::sort(his.begin(), his.end());
    EXPECT_NEAR(his[0], 0.25 * 0.25 / 2.0, 0.004);
    EXPECT_NEAR(his[1], 0.3 * 0.3 / 2.0, 0.004);
    EXPECT_TRUE(is_glued(t, 1e-12));
}

TEST(ReebExtract, OverlappingBumpsGiveASaddle) {
    const Grid g = Grid::sample(
        [](double x, double y) { return bump(x, y, -0.3, 0, 0.5, 1.0) + bump(x, y, 0.3, 0, 0.5, 1.3); }, 161, 1.0);
    const ReebTree t = reeb_from_grid(g);
    ASSERT_EQ(t.size(), 3u);
    const auto ch = t.children();
    int saddle = -1;
    for (std::size_t k = 0; k < t.size(); ++k)
        if (ch[k].size() == 2) saddle = static_cast<int>(k);
    ASSERT_GE(saddle, 0);
    EXPECT_EQ(t.parent[static_cast<std::size_t>(saddle)], t.root());
    EXPECT_EQ(ch[static_cast<std::size_t>(t.root())].size(), 1u);
    EXPECT_TRUE(is_glued(t, 1e-12));
    // saddle value: H at the origin
    const double h0 = bump(0, 0, -0.3, 0, 0.5, 1.0) + bump(0, 0, 0.3, 0, 0.5, 1.3);
    EXPECT_NEAR(t.edges[static_cast<std::size_t>(saddle)].hbar(t.edges[static_cast<std::size_t>(saddle)].lo), h0, 0.01);
}

TEST(ReebExtract, Rejections) {
    EXPECT_THROW(reeb_from_grid(Grid::sample([](double, double) { return 1.0; }, 11, 1.0)), InvalidInput);
    EXPECT_THROW(reeb_from_grid(Grid::sample([](double x, double y) { return bump(x, y, 1.05, 0, 0.1, 1.0); }, 41, 1.3)),
                 InvalidInput);
    // an annulus of support leaves an interior zero plateau
    auto ring = [](double x, double y) {
        const double r = std::hypot(x, y);
        return (r > 0.3 && r < 0.8) ? (r - 0.3) * (r - 0.3) * (0.8 - r) * (0.8 - r) : 0.0;
    };
    EXPECT_THROW(reeb_from_grid(Grid::sample(ring, 81, 1.0)), InvalidInput);
}
