#include "doctest.h"
#include "doublesix/surface.hpp"

using namespace doublesix;

namespace {

std::vector<std::string> q_labels() {
  std::vector<std::string> out;
  for (int i = 1; i <= 6; ++i)
    for (int j = i + 1; j <= 6; ++j) out.push_back(std::to_string(i) + std::to_string(j));
  return out;
}

DivisorClass combo(const SurfaceModel& s,
                   const std::vector<std::pair<long, std::string>>& terms) {
  DivisorClass acc = s.zero_class();
  for (const auto& [c, l] : terms) acc = acc + Rat(c) * s.basis_class(l);
  return acc;
}

// the pencil class: quintics with a triple point at q13, double points at
// q14, q25, q26 and passing through q24, q35, q36, q56
DivisorClass pencil_class(const SurfaceModel& r) {
  return combo(r, {{5, "H"},
                   {-3, "E13"},
                   {-2, "E14"},
                   {-2, "E25"},
                   {-2, "E26"},
                   {-1, "E24"},
                   {-1, "E35"},
                   {-1, "E36"},
                   {-1, "E56"}});
}

}  // namespace

TEST_CASE("blow-ups of the plane") {
  auto r0 = blowup_p2(0);
  CHECK(r0.rank() == 1);
  CHECK(self_intersection(r0, r0.canonical) == 9);
  CHECK(arithmetic_genus(r0, r0.basis_class("H")) == 0);

  auto r = blowup_p2(q_labels());
  CHECK(r.rank() == 16);
  CHECK(self_intersection(r, r.canonical) == -6);
  CHECK(intersect(r, r.basis_class("H"), r.basis_class("E12")) == 0);
  CHECK(riemann_roch_chi(r, r.zero_class()) == 1);
}

TEST_CASE("pencil class arithmetic on the 15-point blow-up") {
  auto r = blowup_p2(q_labels());
  auto d = pencil_class(r);
  CHECK(self_intersection(r, d) == 0);
  CHECK(intersect(r, d, r.canonical) == -2);
  CHECK(riemann_roch_chi(r, d) == 2);
  CHECK(arithmetic_genus(r, d) == 0);

  // (D - K)^2 = 5 on the eight-point blow-up carrying the pencil's base
  // conditions (the generalized del Pezzo of the nefness argument)
  auto r8 = blowup_p2(std::vector<std::string>{"13", "14", "24", "25", "26", "35", "36", "56"});
  auto d8 = pencil_class(r8);
  CHECK(self_intersection(r8, d8) == 0);
  CHECK(intersect(r8, d8, r8.canonical) == -2);
  CHECK(self_intersection(r8, d8 - r8.canonical) == 5);
  CHECK(riemann_roch_chi(r8, d8) == 2);
}

TEST_CASE("fiber-component classes have chi 1 and genus 0") {
  auto r = blowup_p2(q_labels());
  // the line through q13 and q25
  auto phi5 = combo(r, {{1, "H"}, {-1, "E13"}, {-1, "E25"}});
  CHECK(self_intersection(r, phi5) == -1);
  CHECK(intersect(r, phi5, r.canonical) == -1);
  CHECK(riemann_roch_chi(r, phi5) == 1);
  CHECK(arithmetic_genus(r, phi5) == 0);
  auto d = pencil_class(r);
  auto rest = d - phi5;
  CHECK(self_intersection(r, rest) == -1);
  CHECK(intersect(r, rest, r.canonical) == -1);
}

TEST_CASE("double cover of the 15-point blow-up") {
  auto r = blowup_p2(q_labels());
  // L'_i = H - sum_{j != i} E_ij
  std::vector<DivisorClass> branch;
  for (int i = 1; i <= 6; ++i) {
    DivisorClass l = r.basis_class("H");
    for (int j = 1; j <= 6; ++j) {
      if (j == i) continue;
      std::string lab = i < j ? std::to_string(i) + std::to_string(j)
                              : std::to_string(j) + std::to_string(i);
      l = l - r.basis_class("E" + lab);
    }
    branch.push_back(l);
  }
  for (const auto& b : branch) CHECK(self_intersection(r, b) == -4);

  auto dc = double_cover_model(r, branch);
  CHECK(dc.z.rank() == 16);
  CHECK(dc.z.chi_o == 2);
  CHECK(make_lattice(dc.z.gram).is_even());
  auto sig = signature_q(dc.z.gram);
  CHECK(sig.positive == 1);
  CHECK(sig.negative == 15);
  CHECK(sig.zero == 0);

  auto t = dc.pullback(r.basis_class("H"));
  CHECK(t.is_integral());
  CHECK(self_intersection(dc.z, t) == 2);
  auto g12 = dc.pullback(r.basis_class("E12"));
  CHECK(self_intersection(dc.z, g12) == -2);

  // Delta_i = half pullback of the branch classes
  std::vector<DivisorClass> delta;
  for (const auto& b : branch) delta.push_back(dc.from_extended(vec_scale(Rat(1, 2), b.coords)));
  for (int i = 0; i < 6; ++i) {
    CHECK(delta[i].is_integral());
    CHECK(self_intersection(dc.z, delta[i]) == -2);
    for (int j = i + 1; j < 6; ++j) CHECK(intersect(dc.z, delta[i], delta[j]) == 0);
  }
  // Delta_i meets G_ij once, G_jk (i not in {j,k}) not at all
  CHECK(intersect(dc.z, delta[0], g12) == 1);
  auto g34 = dc.pullback(r.basis_class("E34"));
  CHECK(intersect(dc.z, delta[0], g34) == 0);

  // Serre symmetry at the numerical level on the K3 model
  auto a = t - Rat(3) * delta[2];
  CHECK(riemann_roch_chi(dc.z, a) == riemann_roch_chi(dc.z, dc.z.zero_class() - a));

  // branch violations are reported
  std::vector<DivisorClass> bad = branch;
  bad[0] = r.basis_class("H");  // meets the others
  CHECK_THROWS_AS(double_cover_model(r, bad), Error);

  // disjoint but odd total sum
  auto r6 = blowup_p2(6);
  std::vector<DivisorClass> odd;
  for (int i = 1; i <= 6; ++i) odd.push_back(r6.basis_class("E" + std::to_string(i)));
  try {
    double_cover_model(r6, odd);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code == Errc::BranchNotEven);
  }

  // coordinate dimension mismatches are rejected
  CHECK_THROWS_AS(intersect(r, r.basis_class("H"), r6.basis_class("H")), Error);
}

TEST_CASE("contraction of an exceptional curve") {
  auto r = blowup_p2(2);
  auto e2 = r.basis_class("E2");
  auto c = contract(r, e2);
  CHECK(c.model.rank() == 2);
  // the contracted model is the one-point blow-up: K^2 = 8
  CHECK(self_intersection(c.model, c.model.canonical) == 8);
  CHECK(c.model.chi_o == 1);

  // push-forward keeps intersection numbers up to the (C.e)(C'.e) correction
  auto h = r.basis_class("H");
  auto e1 = r.basis_class("E1");
  auto ph = push_class(c, r, h);
  auto pe1 = push_class(c, r, e1);
  CHECK(intersect(c.model, ph, ph) == 1);
  CHECK(intersect(c.model, pe1, pe1) == -1);
  CHECK(intersect(c.model, ph, pe1) == 0);

  // structural identity: contract(blowup(15), E15) has the gram of
  // blowup(14) in the pushed basis
  auto big = blowup_p2(15);
  auto c15 = contract(big, big.basis_class("E15"));
  auto small = blowup_p2(14);
  std::vector<DivisorClass> pushed;
  pushed.push_back(push_class(c15, big, big.basis_class("H")));
  for (int i = 1; i <= 14; ++i)
    pushed.push_back(push_class(c15, big, big.basis_class("E" + std::to_string(i))));
  for (size_t i = 0; i < pushed.size(); ++i)
    for (size_t j = 0; j < pushed.size(); ++j)
      CHECK(intersect(c15.model, pushed[i], pushed[j]) ==
            small.gram(static_cast<int>(i), static_cast<int>(j)));
}

TEST_CASE("round trip on the class lattice") {
  // G_old(a, b) = G_new(push a, push b) - (a.e)(b.e)
  auto r = blowup_p2(3);
  auto e = r.basis_class("E3");
  auto c = contract(r, e);
  Rng rng(9);
  for (int t = 0; t < 20; ++t) {
    QVec av, bv;
    for (int i = 0; i < 4; ++i) {
      av.push_back(Rat(rng.range(-5, 5)));
      bv.push_back(Rat(rng.range(-5, 5)));
    }
    DivisorClass a{av}, b{bv};
    Rat lhs = intersect(r, a, b);
    Rat rhs = intersect(c.model, push_class(c, r, a), push_class(c, r, b)) -
              intersect(r, a, e) * intersect(r, b, e);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("contract rejects non-exceptional classes") {
  auto r = blowup_p2(2);
  CHECK_THROWS_AS(contract(r, r.basis_class("H")), Error);
  auto half = Rat(1, 2) * r.basis_class("E1");
  CHECK_THROWS_AS(contract(r, half), Error);
}
