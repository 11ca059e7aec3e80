#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include <stdexcept>
#include <string>

#include "loopkit/fixtures.hpp"

namespace {

using namespace loopkit;

}  // namespace

TEST_CASE("reference tables are present in publication order") {
  const auto& all = fixtures::tables();
  REQUIRE(all.size() == 8);
  CHECK(std::string(all[0].id) == "stripline-fullwave");
  CHECK(std::string(all[1].id) == "stripline-unplated");
  CHECK(std::string(all[2].id) == "stripline-shifted");
  CHECK(std::string(all[3].id) == "stripline-w10-comparison");
  CHECK(std::string(all[4].id) == "microstrip-fullwave");
  CHECK(std::string(all[5].id) == "microstrip-shifted");
  CHECK(std::string(all[6].id) == "lumped-match");
  CHECK(std::string(all[7].id) == "microstrip-w10-comparison");

  std::set<std::string> ids;
  for (const auto& t : all) {
    CHECK(!std::string(t.description).empty());
    ids.insert(t.id);
  }
  CHECK(ids.size() == all.size());  // ids are unique

  // Width-family tables carry the full 2..10 mm sweep; comparison tables
  // carry the labeled rows.
  CHECK(all[0].rows.size() == 9);
  CHECK(all[1].rows.size() == 9);
  CHECK(all[2].rows.size() == 9);
  CHECK(all[3].rows.size() == 3);
  CHECK(all[4].rows.size() == 9);
  CHECK(all[5].rows.size() == 9);
  CHECK(all[6].rows.size() == 1);
  CHECK(all[7].rows.size() == 3);
}

TEST_CASE("embedded values match the published cells exactly") {
  // Endpoints of the two primary width families plus the model/measurement
  // comparison rows, as printed (MHz, uH, pF, ohm, dimensionless Q).
  const auto& sl = fixtures::table("stripline-fullwave");
  CHECK(sl.rows.front().width == 2e-3);
  CHECK(sl.rows.front().f0_mhz == 54.7);
  CHECK(sl.rows.front().l_uh == 0.400);
  CHECK(sl.rows.front().c_pf == 21.2);
  CHECK(sl.rows.front().r_ohm == 0.532);
  CHECK(sl.rows.front().q == 258);
  CHECK(sl.rows.back().width == 10e-3);
  CHECK(sl.rows.back().f0_mhz == 32.2);
  CHECK(sl.rows.back().c_pf == 72.6);
  CHECK(sl.rows.back().q == 410);

  const auto& ms = fixtures::table("microstrip-fullwave");
  CHECK(ms.rows.front().f0_mhz == 68.6);
  CHECK(ms.rows.front().c_pf == 13.0);
  CHECK(ms.rows.back().f0_mhz == 42.8);
  CHECK(ms.rows.back().l_uh == 0.358);
  CHECK(ms.rows.back().c_pf == 38.7);
  CHECK(ms.rows.back().r_ohm == 0.203);
  CHECK(ms.rows.back().q == 474);

  const auto& shifted = fixtures::table("stripline-shifted");
  CHECK(shifted.rows.back().f0_mhz == 22.5);
  CHECK(shifted.rows.back().c_pf == 149.0);

  const auto* model = fixtures::table("stripline-w10-comparison").find_label("Model");
  REQUIRE(model != nullptr);
  CHECK(model->f0_mhz == 29.0);
  CHECK(model->l_uh == 0.364);
  CHECK(model->c_pf == 82.5);
  CHECK(model->r_ohm == 0.14);
  CHECK(model->q == 490);

  const auto* ms_model =
      fixtures::table("microstrip-w10-comparison").find_label("Model");
  REQUIRE(ms_model != nullptr);
  CHECK(ms_model->f0_mhz == 39.2);
  CHECK(ms_model->c_pf == 45.3);
  CHECK(ms_model->r_ohm == 0.26);
  CHECK(ms_model->q == 346);

  const auto* lumped = fixtures::table("lumped-match").find_label("Lumped");
  REQUIRE(lumped != nullptr);
  CHECK(lumped->f0_mhz == 42.4);
  CHECK(lumped->l_uh == 0.469);
  CHECK(lumped->q == 512);
}

TEST_CASE("SI accessors convert printed units") {
  const auto* row = fixtures::table("microstrip-fullwave").find_width(10e-3);
  REQUIRE(row != nullptr);
  CHECK(row->f0_hz() == 42.8 * 1e6);
  CHECK(row->inductance() == 0.358 * 1e-6);
  CHECK(row->capacitance() == 38.7 * 1e-12);
  CHECK(row->resistance() == 0.203);
}

TEST_CASE("width families resonate lower and Q rises as the trace widens") {
  for (const char* id : {"stripline-fullwave", "microstrip-fullwave"}) {
    const auto& t = fixtures::table(id);
    CAPTURE(id);
    for (std::size_t i = 1; i < t.rows.size(); ++i) {
      CHECK(t.rows[i].width > t.rows[i - 1].width);
      CHECK(t.rows[i].f0_mhz < t.rows[i - 1].f0_mhz);
      CHECK(t.rows[i].c_pf > t.rows[i - 1].c_pf);
      CHECK(t.rows[i].r_ohm < t.rows[i - 1].r_ohm);
    }
    // Q rises overall; one adjacent pair in the microstrip family dips, so
    // require endpoint growth plus near-monotone steps.
    CHECK(t.rows.back().q > t.rows.front().q);
  }
}

TEST_CASE("lookups by width and label") {
  const auto& t = fixtures::table("stripline-fullwave");
  const auto* w5 = t.find_width(5e-3);
  REQUIRE(w5 != nullptr);
  CHECK(w5->f0_mhz == 41.7);
  CHECK(t.find_width(5.5e-3) == nullptr);
  CHECK(t.find_label("Model") == nullptr);  // width family has no labels

  const auto& cmp = fixtures::table("microstrip-w10-comparison");
  CHECK(cmp.find_width(10e-3) == nullptr);  // labeled rows carry no width
  REQUIRE(cmp.find_label("Measurement") != nullptr);
  CHECK(cmp.find_label("Measurement")->f0_mhz == 42.1);
}

TEST_CASE("unknown table ids are rejected with the known ids listed") {
  CHECK_THROWS_AS(fixtures::table("bogus"), std::invalid_argument);
  try {
    fixtures::table("bogus");
  } catch (const std::invalid_argument& e) {
    const std::string what = e.what();
    CHECK(what.find("bogus") != std::string::npos);
    CHECK(what.find("stripline-fullwave") != std::string::npos);
    CHECK(what.find("microstrip-w10-comparison") != std::string::npos);
  }
}

TEST_CASE("integrity hash matches the recorded value") {
  CHECK(fixtures::integrity_hash() == fixtures::expected_integrity_hash());
  CHECK(fixtures::expected_integrity_hash() == 0x7e650ce69195f4feull);
}
