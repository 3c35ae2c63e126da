#include "doctest.h"
#include "doublesix/xrecovery.hpp"

using namespace doublesix;

TEST_CASE("the two canonical models") {
  auto x = build_x(false);
  CHECK(x.diagram.size() == 19);
  for (const auto& n : x.diagram.nodes) CHECK(n.self_int == -2);
  CHECK(x.ns_rank == 16);
  auto sig = signature_q(x.ns_gram);
  CHECK(sig.positive == 1);
  CHECK(sig.negative == 15);

  auto xs = build_x(true);
  CHECK(xs.diagram.size() == 19);
  CHECK(xs.ns_rank == 17);
  auto sigs = signature_q(xs.ns_gram);
  CHECK(sigs.positive == 1);
  CHECK(sigs.negative == 16);
}

TEST_CASE("standard fibrations") {
  auto x = build_x(false);
  auto fb = standard_fibration(x);
  CHECK(fb.inventory[0].type == KodairaType{KodairaType::IIIstar, 0});
  CHECK(fb.inventory[1].type == KodairaType{KodairaType::IIIstar, 0});
  CHECK(x_pair(x, fb.fiber, fb.fiber) == 0);
  CHECK(x_pair(x, fb.fiber, x.combo({{1, "S"}})) == 1);

  auto xs = build_x(true);
  auto fbs = standard_fibration(xs);
  CHECK(fbs.inventory[0].type == KodairaType{KodairaType::IIstar, 0});
  CHECK(fbs.inventory[1].type == KodairaType{KodairaType::IIIstar, 0});
}

TEST_CASE("alternate fibrations") {
  auto x = build_x(false);
  auto fb = alternate_fibration(x);
  CHECK(fb.inventory[0].type == KodairaType{KodairaType::Instar, 8});
  CHECK(fb.sections == std::vector<std::string>{"a2", "b2"});
  int i2 = 0, i1 = 0;
  for (const auto& e : fb.inventory) {
    if (e.type == KodairaType{KodairaType::In, 2}) ++i2;
    if (e.type == KodairaType{KodairaType::In, 1}) ++i1;
  }
  CHECK(i2 == 2);
  CHECK(i1 == 6);

  auto xs = build_x(true);
  auto fbs = alternate_fibration(xs);
  CHECK(fbs.inventory[0].type == KodairaType{KodairaType::Instar, 10});
  CHECK(fbs.sections == std::vector<std::string>{"a1", "b2"});
  i2 = i1 = 0;
  for (const auto& e : fbs.inventory) {
    if (e.type == KodairaType{KodairaType::In, 2}) ++i2;
    if (e.type == KodairaType{KodairaType::In, 1}) ++i1;
  }
  CHECK(i2 == 1);
  CHECK(i1 == 6);
}

TEST_CASE("membership chain certificate") {
  auto x = build_x(false);
  auto cert = vgs_certificate_x(x);
  CHECK(cert.pass);
  CHECK(cert.order == 2);
  CHECK(cert.negative_control_failed);
  REQUIRE(cert.steps.size() == 7);
  CHECK(cert.steps.front().name == "ll1");
  CHECK(cert.steps.back().name == "2S2-2S1-4F");
  for (const auto& st : cert.steps)
    CHECK(vec_mul(st.witness, cert.wroot_basis_ns) == st.vector_ns);

  auto xs = build_x(true);
  auto certs = vgs_certificate_x(xs);
  CHECK(certs.pass);
  CHECK(certs.order == 2);
  CHECK(certs.negative_control_failed);
  for (const auto& st : certs.steps)
    CHECK(vec_mul(st.witness, certs.wroot_basis_ns) == st.vector_ns);
}

TEST_CASE("multisection records") {
  auto x = build_x(false);
  auto [q, k] = multisections(x);
  CHECK(q.degree == 2);
  CHECK(k.degree == 4);
  CHECK(q.self_int == 2);
  CHECK(k.self_int == 4);
  CHECK(q.ramification_total == 6);
  CHECK(q.meets.at("a5") == 1);
  CHECK(q.meets.at("b5") == 1);
  CHECK(k.meets.at("S") == 2);
  CHECK(q.meets.at("b1") == 1);
  CHECK(k.meets.at("b1") == 2);

  auto xs = build_x(true);
  auto [qs, ks] = multisections(xs);
  CHECK(qs.degree == 2);
  CHECK(ks.degree == 4);
  CHECK(ks.self_int == 2);
  CHECK(qs.meets.at("c") == 1);
  CHECK(qs.meets.at("b1") == 1);
  CHECK(ks.meets.at("c") == 2);
  CHECK(ks.meets.at("b1") == 2);
}

TEST_CASE("nikulin transform to the double sextic") {
  auto y = nikulin_transform_x(build_x(false));
  CHECK(y.diagram.size() == 24);
  CHECK(y.inventory[0].type == KodairaType{KodairaType::Instar, 4});
  CHECK(y.sections == std::vector<std::string>{"at2", "Qt"});
  int i2 = 0, i1 = 0;
  for (const auto& e : y.inventory) {
    if (e.type == KodairaType{KodairaType::In, 2}) ++i2;
    if (e.type == KodairaType{KodairaType::In, 1}) ++i1;
  }
  CHECK(i2 == 6);
  CHECK(i1 == 2);
  CHECK(y.diagram.edge(y.idx("U7"), y.idx("St")) == 1);
  CHECK(y.diagram.edge(y.idx("U8"), y.idx("St")) == 1);
  CHECK(y.diagram.edge(y.idx("Kt"), y.idx("U7")) == 1);
  CHECK(y.diagram.edge(y.idx("Kt"), y.idx("St")) == 0);
  CHECK(y.diagram.edge(y.idx("at2"), y.idx("at3")) == 1);
  CHECK(y.diagram.edge(y.idx("Qt"), y.idx("at5")) == 1);
  CHECK(y.diagram.edge(y.idx("U1"), y.idx("V1")) == 2);
  CHECK(y.diagram.edge(y.idx("V1"), y.idx("at2")) == 1);
  CHECK(y.diagram.edge(y.idx("U1"), y.idx("Qt")) == 1);
  CHECK(y.diagram.edge(y.idx("V1"), y.idx("Qt")) == 0);
  CHECK(y.diagram.edge(y.idx("Kt"), y.idx("U1")) == 1);
  CHECK(y.diagram.edge(y.idx("Kt"), y.idx("V1")) == 1);

  auto ys = nikulin_transform_x(build_x(true));
  CHECK(ys.diagram.size() == 25);
  CHECK(ys.inventory[0].type == KodairaType{KodairaType::Instar, 5});
  CHECK(ys.sections == std::vector<std::string>{"st", "Qt"});
  i2 = i1 = 0;
  for (const auto& e : ys.inventory) {
    if (e.type == KodairaType{KodairaType::In, 2}) ++i2;
    if (e.type == KodairaType{KodairaType::In, 1}) ++i1;
  }
  CHECK(i2 == 6);
  CHECK(i1 == 1);
  CHECK(ys.diagram.edge(ys.idx("Kt"), ys.idx("at9")) == 1);
  CHECK(ys.diagram.edge(ys.idx("U7"), ys.idx("at9")) == 1);
  CHECK(ys.diagram.edge(ys.idx("Kt"), ys.idx("U7")) == 0);
  CHECK(ys.diagram.edge(ys.idx("st"), ys.idx("at2")) == 1);
}

TEST_CASE("the Y diagram from X matches the Z-side double sextic") {
  auto y = nikulin_transform_x(build_x(false));
  Rng rng(71);
  auto res = run_z_pipeline(random_arrangement(rng), false);
  CHECK(res.z_named_graph.size() == 24);
  auto iso = is_isomorphic(y.diagram, res.z_named_graph);
  CHECK(iso.has_value());

  auto ys = nikulin_transform_x(build_x(true));
  auto resk = run_z_pipeline(
      tangent_circle_arrangement({Rat(0), Rat(1), Rat(-1), Rat(2), Rat(1, 2), Rat(3)}), false);
  CHECK(resk.z_named_graph.size() == 25);
  auto isok = is_isomorphic(ys.diagram, resk.z_named_graph);
  CHECK(isok.has_value());
}

TEST_CASE("X alternate diagrams match the W diagrams") {
  auto x = build_x(false);
  auto w = nikulin_transform_z(false);
  auto iso = is_isomorphic(x.diagram, w.w);
  CHECK(iso.has_value());

  auto xs = build_x(true);
  auto wk = nikulin_transform_z(true);
  auto isok = is_isomorphic(xs.diagram, wk.w);
  CHECK(isok.has_value());

  CHECK(!is_isomorphic(x.diagram, wk.w).has_value());
  CHECK(!is_isomorphic(xs.diagram, w.w).has_value());
}

TEST_CASE("quotient model of Y") {
  auto r = quotient_model(nikulin_transform_x(build_x(false)));
  CHECK(r.diagram.size() == 24);
  for (auto l : {"Kt", "St", "at7", "at4", "at2", "Qt"})
    CHECK(r.diagram.nodes[r.diagram.index_of(l)].self_int == -4);
  for (auto l : {"at8", "at6", "at5", "at3", "U1", "U7", "V3"})
    CHECK(r.diagram.nodes[r.diagram.index_of(l)].self_int == -1);
  CHECK(self_intersection(r.model, r.model.canonical) == -6);
  CHECK(intersect(r.model, r.cls("F"), r.cls("at2")) == 1);
  CHECK(intersect(r.model, r.cls("F"), r.cls("Qt")) == 1);
  CHECK(intersect(r.model, r.cls("F"), r.cls("Kt")) == 2);
  CHECK(intersect(r.model, r.cls("U1"), r.cls("V1")) == 1);
  CHECK(r.cls("V4") == r.cls("F") - r.cls("U4"));

  auto rs = quotient_model(nikulin_transform_x(build_x(true)));
  CHECK(rs.diagram.size() == 24);
  for (auto l : {"Kt", "Qt", "st", "at8", "at6", "at3"})
    CHECK(rs.diagram.nodes[rs.diagram.index_of(l)].self_int == -4);
  CHECK(rs.diagram.nodes[rs.diagram.index_of("U78")].self_int == -2);
  CHECK(self_intersection(rs.model, rs.model.canonical) == -6);
}

TEST_CASE("blow-down recovery: generic case") {
  auto r = quotient_model(nikulin_transform_x(build_x(false)));
  auto cert = blow_down_recovery(r);
  CHECK(cert.pass);
  INFO(cert.failure);
  CHECK(cert.dictionary_isometry);
  CHECK(cert.f0_certified);
  CHECK(cert.p2_certified);
  CHECK(cert.printed_table_matched);
  CHECK(cert.printed_h_basis_matched);
  CHECK(!cert.conic_through_q34);
  CHECK(cert.e_table.size() == 15);
  CHECK(is_hyperbolic_plane(cert.f0_gram));
  CHECK(cert.sequence.size() == 14);
}

TEST_CASE("blow-down recovery: special case") {
  auto r = quotient_model(nikulin_transform_x(build_x(true)));
  auto cert = blow_down_recovery(r);
  CHECK(cert.pass);
  INFO(cert.failure);
  CHECK(cert.dictionary_isometry);
  CHECK(cert.f0_certified);
  CHECK(cert.p2_certified);
  CHECK(cert.conic_through_q34);
  CHECK(cert.tangent_conic_witness);
  // the simple entries of the exceptional table: single diagram curves
  CHECK(cert.e_table.at("E15") == r.cls("at2"));
  CHECK(cert.e_table.at("E16") == r.cls("at4"));
  CHECK(cert.e_table.at("E12") == r.cls("at5"));
  CHECK(cert.e_table.at("E23") == r.cls("at7"));
  CHECK(cert.e_table.at("E34") == r.cls("at9"));
  CHECK(cert.e_table.at("E46") == r.cls("U6"));
  CHECK(cert.e_table.at("E45") == r.cls("V1"));
}

TEST_CASE("whole X pipelines") {
  auto a = run_x_pipeline(false);
  CHECK(a.vgs.pass);
  CHECK(a.recovery.pass);
  auto b = run_x_pipeline(true);
  CHECK(b.vgs.pass);
  CHECK(b.recovery.pass);
}
