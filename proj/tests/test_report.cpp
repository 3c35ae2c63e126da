#include "doctest.h"
#include "doublesix/report.hpp"

using namespace doublesix;

namespace {

std::array<ProjTriple, 6> kummer_coeffs() {
  auto arr = tangent_circle_arrangement({Rat(0), Rat(1), Rat(-1), Rat(2), Rat(1, 2), Rat(3)});
  std::array<ProjTriple, 6> out;
  for (int i = 0; i < 6; ++i) out[i] = arr.lines[i].c;
  return out;
}

std::array<ProjTriple, 6> generic_coeffs() {
  Rng rng(404);
  auto arr = random_arrangement(rng);
  std::array<ProjTriple, 6> out;
  for (int i = 0; i < 6; ++i) out[i] = arr.lines[i].c;
  return out;
}

}  // namespace

TEST_CASE("analyze reports are deterministic and pass on good input") {
  auto res1 = analyze_report(generic_coeffs());
  auto res2 = analyze_report(generic_coeffs());
  CHECK(res1.exit_code == 0);
  CHECK(res1.doc.dump(2) == res2.doc.dump(2));
  CHECK(res1.doc["kummer"] == false);
  // all verdicts pass
  for (const auto& v : res1.doc["verdicts"]) CHECK(v["pass"].get<bool>());
  // fibration inventory leads with the I4* fiber
  CHECK(res1.doc["fibration_z"][0]["type"] == "I4*");
}

TEST_CASE("analyze on a kummer arrangement") {
  auto res = analyze_report(kummer_coeffs());
  CHECK(res.exit_code == 0);
  CHECK(res.doc["kummer"] == true);
  CHECK(res.doc["fibration_z"][0]["type"] == "I5*");
  bool found = false;
  for (const auto& c : res.doc["certificates"])
    if (c["name"] == "polarization_w") {
      found = true;
      CHECK(c["data"]["verdict"] == "H+E8+E7");
    }
  CHECK(found);
}

TEST_CASE("analyze rejects degenerate input with exit 1") {
  std::array<ProjTriple, 6> bad{{{Rat(1), Rat(0), Rat(0)},
                                 {Rat(0), Rat(1), Rat(0)},
                                 {Rat(1), Rat(1), Rat(0)},
                                 {Rat(0), Rat(0), Rat(1)},
                                 {Rat(1), Rat(0), Rat(1)},
                                 {Rat(0), Rat(1), Rat(1)}}};
  auto res = analyze_report(bad);
  CHECK(res.exit_code == 1);
  CHECK(!res.doc["verdicts"][0]["pass"].get<bool>());
}

TEST_CASE("xside reports") {
  auto res = xside_report(false);
  CHECK(res.exit_code == 0);
  CHECK(res.doc["alternate_inventory"][0]["type"] == "I8*");
  auto ress = xside_report(true);
  CHECK(ress.exit_code == 0);
  CHECK(ress.doc["alternate_inventory"][0]["type"] == "I10*");
  CHECK(ress.doc.dump() == xside_report(true).doc.dump());
}

TEST_CASE("match reports print an isomorphism") {
  auto res = match_report(generic_coeffs());
  CHECK(res.exit_code == 0);
  CHECK(res.doc["x_model"] == "non-special");
  CHECK(res.doc["isomorphism"].size() == 19);

  auto resk = match_report(kummer_coeffs());
  CHECK(resk.exit_code == 0);
  CHECK(resk.doc["x_model"] == "special");
  CHECK(resk.doc["isomorphism"].size() == 19);
}

TEST_CASE("text rendering is stable") {
  auto res = match_report(generic_coeffs());
  auto text = render_text(res.doc);
  CHECK(text.find("doublesix match") != std::string::npos);
  CHECK(text.find("[PASS] diagram_isomorphism") != std::string::npos);
  CHECK(render_text(res.doc) == text);
}
