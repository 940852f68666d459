#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "laxkit/matrix.hpp"

using namespace laxkit;

namespace {

Mat from_rows(std::initializer_list<std::initializer_list<int>> rows) {
  int r = static_cast<int>(rows.size());
  int c = static_cast<int>(rows.begin()->size());
  Mat m(r, c);
  int i = 0;
  for (auto& row : rows) {
    int j = 0;
    for (int v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

}  // namespace

TEST_CASE("rational text round-trip") {
  CHECK(to_string(Rational(3, 6)) == "1/2");
  CHECK(to_string(Rational(-4)) == "-4");
  CHECK(*parse_rational("-7/3") == Rational(-7, 3));
  CHECK(*parse_rational("12") == Rational(12));
  CHECK(!parse_rational("1.5").has_value());
  CHECK(!parse_rational("2/0").has_value());
  CHECK(!parse_rational("").has_value());
  CHECK(!parse_rational("1/").has_value());
}

TEST_CASE("rref and rank on a hand-reduced matrix") {
  // [[1,2,3],[2,4,6],[1,1,1]] row-reduces to [[1,0,-1],[0,1,2],[0,0,0]].
  Mat a = from_rows({{1, 2, 3}, {2, 4, 6}, {1, 1, 1}});
  Rref rr = rref(a);
  CHECK(rr.rank == 2);
  CHECK(rr.pivots == std::vector<int>{0, 1});
  CHECK(rr.r(0, 2) == Rational(-1));
  CHECK(rr.r(1, 2) == Rational(2));
  for (int j = 0; j < 3; ++j) CHECK(rr.r(2, j) == 0);
}

TEST_CASE("kernel basis solves the system") {
  Mat a = from_rows({{1, 2, 3}, {2, 4, 6}, {1, 1, 1}});
  auto ker = kernel_basis(a);
  REQUIRE(ker.size() == 1);
  CHECK(ker[0] == Vec{Rational(1), Rational(-2), Rational(1)});
  CHECK(is_zero(a.apply(ker[0])));
}

TEST_CASE("inverse against the closed 2x2 form") {
  Mat a = from_rows({{2, 1}, {7, 4}});  // det = 1
  auto inv = inverse(a);
  REQUIRE(inv.has_value());
  CHECK(*inv == from_rows({{4, -1}, {-7, 2}}));
  CHECK((a * *inv) == Mat::identity(2));
  CHECK(!inverse(from_rows({{1, 2}, {2, 4}})).has_value());
}

TEST_CASE("solve reports consistency exactly") {
  Mat a = from_rows({{1, 2}, {2, 4}});
  auto x = solve(a, Vec{Rational(3), Rational(6)});
  REQUIRE(x.has_value());
  CHECK(a.apply(*x) == Vec{Rational(3), Rational(6)});
  CHECK(!solve(a, Vec{Rational(3), Rational(7)}).has_value());
}

TEST_CASE("pseudo-inverse satisfies the four Penrose identities") {
  auto penrose = [](const Mat& a) {
    Mat p = pseudo_inverse(a);
    CHECK((a * p * a) == a);
    CHECK((p * a * p) == p);
    CHECK((a * p).transpose() == (a * p));
    CHECK((p * a).transpose() == (p * a));
  };
  penrose(from_rows({{1, -1}, {-1, 1}}));
  penrose(from_rows({{1, 2, 3}, {4, 5, 6}}));
  penrose(from_rows({{0, 0}, {0, 0}}));
  penrose(from_rows({{2}}));
}

TEST_CASE("pseudo-inverse of the symmetric difference projector pattern") {
  // [[1,-1],[-1,1]] has pinv equal to itself divided by 4.
  Mat d = from_rows({{1, -1}, {-1, 1}});
  CHECK(pseudo_inverse(d) == Rational(1, 4) * d);
}

TEST_CASE("characteristic polynomial matches the 2x2 trace/determinant form") {
  Mat a = from_rows({{3, 1}, {2, 5}});
  auto c = char_poly(a);  // x^2 - 8x + 13
  REQUIRE(c.size() == 3);
  CHECK(c[2] == 1);
  CHECK(c[1] == Rational(-8));
  CHECK(c[0] == Rational(13));
}

TEST_CASE("rational roots by deflation") {
  // (x-1)^2 (x+3/2) = x^3 - x^2/2 - 2x + 3/2
  std::vector<Rational> p{Rational(3, 2), Rational(-2), Rational(-1, 2), Rational(1)};
  auto roots = rational_roots(p);
  REQUIRE(roots.has_value());
  REQUIRE(roots->size() == 2);
  bool saw_one = false, saw_neg = false;
  for (const auto& [v, m] : *roots) {
    if (v == 1) {
      saw_one = true;
      CHECK(m == 2);
    }
    if (v == Rational(-3, 2)) {
      saw_neg = true;
      CHECK(m == 1);
    }
  }
  CHECK(saw_one);
  CHECK(saw_neg);

  // x^2 - 2 has no rational roots.
  CHECK(!rational_roots({Rational(-2), Rational(0), Rational(1)}).has_value());

  // x^3: triple zero root.
  auto z = rational_roots({Rational(0), Rational(0), Rational(0), Rational(1)});
  REQUIRE(z.has_value());
  CHECK(z->size() == 1);
  CHECK((*z)[0].first == 0);
  CHECK((*z)[0].second == 3);
}

TEST_CASE("spectral decomposition reconstructs the matrix") {
  Mat a = from_rows({{1, -1}, {-1, 1}});  // eigenvalues 0 and 2
  auto sd = spectral_decomposition(a);
  REQUIRE(sd.has_value());
  REQUIRE(sd->values.size() == 2);
  Mat sum(2, 2), recon(2, 2);
  for (std::size_t i = 0; i < sd->values.size(); ++i) {
    const Mat& p = sd->projectors[i];
    CHECK((p * p) == p);
    sum += p;
    recon += sd->values[i] * p;
  }
  CHECK(sum == Mat::identity(2));
  CHECK(recon == a);
  for (std::size_t i = 0; i < sd->values.size(); ++i)
    for (std::size_t j = 0; j < sd->values.size(); ++j)
      if (i != j) CHECK((sd->projectors[i] * sd->projectors[j]).is_zero());
}

TEST_CASE("defective matrices are rejected") {
  Mat n = from_rows({{0, 1}, {0, 0}});
  CHECK(!spectral_decomposition(n).has_value());
}

TEST_CASE("row span membership") {
  RowSpan s(3);
  CHECK(s.add(Vec{Rational(1), Rational(1), Rational(0)}));
  CHECK(s.add(Vec{Rational(0), Rational(1), Rational(1)}));
  CHECK(!s.add(Vec{Rational(1), Rational(2), Rational(1)}));  // dependent
  CHECK(s.dim() == 2);
  CHECK(s.contains(Vec{Rational(2), Rational(3), Rational(1)}));
  CHECK(!s.contains(Vec{Rational(1), Rational(0), Rational(0)}));
}
