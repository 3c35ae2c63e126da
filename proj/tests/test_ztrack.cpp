#include "doctest.h"
#include "doublesix/ztrack.hpp"

using namespace doublesix;

namespace {

LineArrangement kummer_example() {
  return tangent_circle_arrangement({Rat(0), Rat(1), Rat(-1), Rat(2), Rat(1, 2), Rat(3)});
}

LineArrangement generic_example() {
  Rng rng(404);
  return random_arrangement(rng);
}

}  // namespace

TEST_CASE("the pencil decomposes through the special quintic on R") {
  auto r = fifteen_point_blowup();
  auto d = pencil_class(r);
  // L'1 + L'2 + L'3 + C' + E34 + 2 E23 + 2 E12 + E15 + E16 = D
  auto lhs = line_transform_class(r, 1) + line_transform_class(r, 2) +
             line_transform_class(r, 3) + conic_transform_class(r, false) +
             r.basis_class("E34") + Rat(2) * r.basis_class("E23") +
             Rat(2) * r.basis_class("E12") + r.basis_class("E15") + r.basis_class("E16");
  CHECK(lhs == d);
  // Kummer variant: C' drops by E34 and the fiber picks it up doubly
  auto lhs_k = line_transform_class(r, 1) + line_transform_class(r, 2) +
               line_transform_class(r, 3) + conic_transform_class(r, true) +
               Rat(2) * r.basis_class("E34") + Rat(2) * r.basis_class("E23") +
               Rat(2) * r.basis_class("E12") + r.basis_class("E15") + r.basis_class("E16");
  CHECK(lhs_k == d);
}

TEST_CASE("building Z from a generic arrangement") {
  auto arr = generic_example();
  auto z = build_z(arr);
  CHECK(!z.kummer);
  CHECK(z.surface().rank() == 16);
  const auto& s = z.surface();
  CHECK(self_intersection(s, z.cls("T")) == 2);
  CHECK(self_intersection(s, z.cls("G12")) == -2);
  CHECK(self_intersection(s, z.cls("Delta1")) == -2);
  CHECK(intersect(s, z.cls("Delta1"), z.cls("G12")) == 1);
  CHECK(intersect(s, z.cls("Delta1"), z.cls("G23")) == 0);
  CHECK(intersect(s, z.cls("Delta1"), z.cls("Delta2")) == 0);
  for (int i = 1; i <= 6; ++i) {
    auto y = z.cls("Y" + std::to_string(i));
    CHECK(self_intersection(s, y) == -2);
    CHECK(intersect(s, y, z.cls("Y" + std::to_string(i) + "'")) == 2);
  }
}

TEST_CASE("building Z from a Kummer arrangement") {
  auto arr = kummer_example();
  auto z = build_z(arr);
  CHECK(z.kummer);
  CHECK(z.surface().rank() == 17);
  const auto& s = z.surface();
  CHECK(self_intersection(s, z.cls("Gamma1")) == -2);
  CHECK(self_intersection(s, z.cls("Gamma2")) == -2);
  CHECK(intersect(s, z.cls("Gamma1"), z.cls("Gamma2")) == 0);
  // Gamma1 + Gamma2 is the pullback of the conic transform
  auto r = fifteen_point_blowup();
  auto pulled = z.cover.pullback(conic_transform_class(r, true));
  CHECK(z.cls("Gamma1") + z.cls("Gamma2") == pulled);
  auto sig = signature_q(s.gram);
  CHECK(sig.positive == 1);
  CHECK(sig.negative == 16);
}

TEST_CASE("fibration on Z: non-Kummer") {
  auto z = build_z(generic_example());
  auto fb = fibration_z(z);
  CHECK(fb.sections == std::vector<std::string>{"Delta5", "Delta6"});
  CHECK(fb.multisections.front() == std::pair<std::string, int>{"Delta4", 2});
  REQUIRE(!fb.inventory.empty());
  CHECK(fb.inventory[0].type == KodairaType{KodairaType::Instar, 4});
  int i2 = 0, i1 = 0;
  for (const auto& e : fb.inventory) {
    if (e.type == KodairaType{KodairaType::In, 2}) ++i2;
    if (e.type == KodairaType{KodairaType::In, 1}) {
      ++i1;
      CHECK(e.inferred);
    }
  }
  CHECK(i2 == 6);
  CHECK(i1 == 2);
  CHECK(fb.euler_total == 24);
}

TEST_CASE("fibration on Z: Kummer") {
  auto z = build_z(kummer_example());
  auto fb = fibration_z(z);
  CHECK(fb.inventory[0].type == KodairaType{KodairaType::Instar, 5});
  int i1 = 0;
  for (const auto& e : fb.inventory)
    if (e.type == KodairaType{KodairaType::In, 1}) ++i1;
  CHECK(i1 == 1);
}

TEST_CASE("involution certificate: non-Kummer") {
  auto z = build_z(generic_example());
  auto fb = fibration_z(z);
  auto cert = vgs_certificate_z(z, fb);
  CHECK(cert.pass);
  CHECK(cert.failure.empty());
  CHECK(self_intersection(z.surface(), cert.s2w) == -4);
  CHECK(cert.order == 2);
  CHECK(cert.display_matched);
  CHECK(ade_to_string(cert.wroot_type) == "A1+A1+A1+A1+A1+A1+D8");
  // the witness exactly reproduces 2 Delta6^w over the root-span basis
  IVec twice = vec_scale(Int(2), to_ivec(cert.s2w));
  CHECK(vec_mul(cert.witness, cert.wroot_basis) == twice);
}

TEST_CASE("the section group is Z/2 on both kinds of surface") {
  for (bool kummer : {false, true}) {
    auto arr = kummer ? kummer_example() : generic_example();
    auto z = build_z(arr);
    // discriminant of the saturated lattice: 2^6 up to sign
    CHECK(abs(bareiss_det(z.surface().gram)) == 64);
    auto fb = fibration_z(z);
    auto cd = detail::fiber_section_complement(z.surface(), fb.fiber, z.cls("Delta5"));
    auto mw = quotient_group(cd.w, cd.wroot);
    REQUIRE(mw.torsion.invariant_factors.size() == 1);
    CHECK(mw.torsion.invariant_factors[0] == 2);
    CHECK(mw.free_rank == 0);
  }
}

TEST_CASE("involution certificate: Kummer") {
  auto z = build_z(kummer_example());
  auto fb = fibration_z(z);
  auto cert = vgs_certificate_z(z, fb);
  CHECK(cert.pass);
  CHECK(cert.order == 2);
  CHECK(ade_to_string(cert.wroot_type) == "A1+A1+A1+A1+A1+A1+D9");
  IVec twice = vec_scale(Int(2), to_ivec(cert.s2w));
  CHECK(vec_mul(cert.witness, cert.wroot_basis) == twice);
}

TEST_CASE("nikulin transform to W") {
  auto t = nikulin_transform_z(false);
  CHECK(t.w.size() == 19);
  CHECK(t.inventory[0].type == KodairaType{KodairaType::Instar, 8});
  int i2 = 0, i1 = 0;
  for (const auto& e : t.inventory) {
    if (e.type == KodairaType{KodairaType::In, 2}) ++i2;
    if (e.type == KodairaType{KodairaType::In, 1}) ++i1;
  }
  CHECK(i2 == 2);
  CHECK(i1 == 6);

  auto tk = nikulin_transform_z(true);
  CHECK(tk.w.size() == 19);
  CHECK(tk.inventory[0].type == KodairaType{KodairaType::Instar, 10});
  i2 = i1 = 0;
  for (const auto& e : tk.inventory) {
    if (e.type == KodairaType{KodairaType::In, 2}) ++i2;
    if (e.type == KodairaType{KodairaType::In, 1}) ++i1;
  }
  CHECK(i2 == 1);
  CHECK(i1 == 6);
}

TEST_CASE("polarization certificates on W") {
  auto t = nikulin_transform_z(false);
  auto cert = polarization_certificate_w(t, false);
  CHECK(cert.pass);
  CHECK(cert.verdict == "H+E7+E7");
  CHECK(is_hyperbolic_plane(cert.h_gram));

  auto tk = nikulin_transform_z(true);
  auto certk = polarization_certificate_w(tk, true);
  CHECK(certk.pass);
  CHECK(certk.verdict == "H+E8+E7");

  // the perturbation control must fail
  CHECK(polarization_negative_control(false));
  CHECK(polarization_negative_control(true));
}

TEST_CASE("full pipeline runs on both kinds of arrangement") {
  auto res = run_z_pipeline(generic_example(), false);
  CHECK(!res.kummer);
  CHECK(res.vgs.pass);
  CHECK(res.polarization.pass);
  CHECK(res.z_named_graph.size() == 9 + 3 + 12);

  auto resk = run_z_pipeline(kummer_example(), false);
  CHECK(resk.kummer);
  CHECK(resk.vgs.pass);
  CHECK(resk.polarization.verdict == "H+E8+E7");
  CHECK(resk.z_named_graph.size() == 10 + 3 + 12);
}

TEST_CASE("pipeline with the full genericity gate") {
  auto res = run_z_pipeline(generic_example(), true);
  CHECK(res.genericity.generic);
}
