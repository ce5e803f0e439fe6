#include <catch2/catch_amalgamated.hpp>

#include "toroidal/weyl_fock.hpp"

using namespace toroidal;

namespace {

WeylState apply_chain(const RootSystemData& sys,
                      const std::vector<std::pair<CVector, int>>& ops,
                      WeylState s) {
  for (auto it = ops.rbegin(); it != ops.rend(); ++it)
    s = weyl_apply(sys, it->first, it->second, s);
  return s;
}

}  // namespace

TEST_CASE("annihilators kill the vacuum") {
  RootSystemData sys = build_system(2, 1);
  for (int g = 0; g < sys.c_basis_count; ++g)
    for (int k = 0; k <= 4; ++k)
      CHECK(weyl_apply(sys, sys.c_basis(g), k, WeylState::vacuum()).is_zero());
}

TEST_CASE("mode pairing rule") {
  RootSystemData sys = build_system(2, 1);
  CVector e1 = sys.eps_cvector(1, false);
  CVector e1s = sys.eps_cvector(1, true);
  // e1*(0) applied to e1(-1) vacuum -> vacuum (delta_{k+l,-1} with <e1*,e1>=1)
  WeylState v = weyl_apply(sys, e1, -1, WeylState::vacuum());
  CHECK(weyl_apply(sys, e1s, 0, v) == WeylState::vacuum());
  // e1(0) applied to e1*(-1) vacuum -> -vacuum
  WeylState w = weyl_apply(sys, e1s, -1, WeylState::vacuum());
  WeylState expect;
  expect.add({}, GaussRational(-1));
  CHECK(weyl_apply(sys, e1, 0, w) == expect);
}

TEST_CASE("commutation relation in component form") {
  // [u(k), v(l)] s = <u,v> delta_{k+l,-1} s over a state suite
  RootSystemData sys = build_system(2, 1);
  std::vector<WeylState> suite;
  suite.push_back(WeylState::vacuum());
  for (int g = 0; g < sys.c_basis_count; ++g) {
    suite.push_back(weyl_apply(sys, sys.c_basis(g), -1, WeylState::vacuum()));
    suite.push_back(weyl_apply(sys, sys.c_basis(g), -2,
                               weyl_apply(sys, sys.c_basis(3), -1,
                                          WeylState::vacuum())));
  }
  std::vector<int> gens{0, 1, 3, 4, 5, 7};  // mix of plain and starred
  for (int gu : gens) {
    for (int gv : gens) {
      CVector u = sys.c_basis(gu), v = sys.c_basis(gv);
      GaussRational pairing = sys.c_pairing(u, v);
      for (int k = -4; k <= 4; ++k) {
        for (int l = -4; l <= 4; ++l) {
          for (const auto& s : suite) {
            WeylState uv = apply_chain(sys, {{u, k}, {v, l}}, s);
            WeylState vu = apply_chain(sys, {{v, l}, {u, k}}, s);
            WeylState diff;
            for (const auto& [mono, c] : uv.terms) diff.add(mono, c);
            for (const auto& [mono, c] : vu.terms) diff.add(mono, -c);
            WeylState expect;
            if (k + l == -1 && !pairing.is_zero())
              for (const auto& [mono, c] : s.terms) expect.add(mono, c * pairing);
            CHECK(diff == expect);
          }
        }
      }
    }
  }
}

TEST_CASE("creators commute") {
  RootSystemData sys = build_system(2, 1);
  CVector a = sys.c_basis(1), b = sys.c_basis(5);
  WeylState s1 = apply_chain(sys, {{a, -2}, {b, -1}}, WeylState::vacuum());
  WeylState s2 = apply_chain(sys, {{b, -1}, {a, -2}}, WeylState::vacuum());
  CHECK(s1 == s2);
}

TEST_CASE("linearity in the state") {
  RootSystemData sys = build_system(2, 1);
  CVector u = sys.beta_cvector(true);
  WeylState s;
  s.add(weyl_monomial({{1, 1}}), GaussRational(Rat(2, 3)));
  s.add(weyl_monomial({{5, 2}}), GaussRational::unit_i());
  WeylState lhs = weyl_apply(sys, u, 0, s);
  WeylState rhs;
  for (const auto& [mono, c] : s.terms) {
    WeylState one;
    one.add(mono, GaussRational(1));
    for (const auto& [m2, c2] : weyl_apply(sys, u, 0, one).terms)
      rhs.add(m2, c2 * c);
  }
  CHECK(lhs == rhs);
}

TEST_CASE("energy grading") {
  RootSystemData sys = build_system(2, 1);
  CHECK(weyl_grade(WeylState::vacuum()).at(0) == WeylState::vacuum());
  // e1(-2) e2*(-1) vacuum sits in degree 3
  WeylState s = apply_chain(
      sys, {{sys.eps_cvector(1, false), -2}, {sys.eps_cvector(2, true), -1}},
      WeylState::vacuum());
  auto graded = weyl_grade(s);
  CHECK(graded.size() == 1);
  CHECK(graded.count(3) == 1);
  // annihilator above the energy kills the state
  CHECK(weyl_apply(sys, sys.eps_cvector(1, true), 5, s).is_zero());
  // grading shift: u(k) with k >= 0 lowers energy by k+1
  WeylState t = weyl_apply(sys, sys.eps_cvector(1, true), 1, s);
  CHECK(!t.is_zero());
  for (const auto& [mono, c] : t.terms) CHECK(weyl_energy(mono) == 1);
}
