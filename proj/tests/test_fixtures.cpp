#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "tomo/fixtures.hpp"

using namespace tomo;

namespace {

const FixtureSet& fixture() {
  static const FixtureSet fix = load_fixtures(default_fixture_dir());
  return fix;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

}  // namespace

TEST_SUITE("fixtures") {

TEST_CASE("tables load with the documented shapes") {
  const FixtureSet& fix = fixture();
  REQUIRE(fix.A.size() == 5);
  for (char letter : kProtocolLetters) {
    const int rows = fixture_rows(letter);
    CHECK(fix.A.at(letter).rows() == rows);
    CHECK(fix.A.at(letter).cols() == 16);
    CHECK(fix.b.at(letter).rows() == rows);
    CHECK(fix.b.at(letter).cols() == kStateCount);
    CHECK(fix.reconstructed.at(letter).size() == kStateCount);
  }
  CHECK(fix.variance.size() == 2);
  CHECK(fix.variance.at('O').rows() == 16);
  CHECK(fix.variance.at('O').cols() == kStateCount);
  CHECK(fix.variance.at('P').rows() == 16);
  CHECK(fix.variance.at('P').cols() == kStateCount);
  CHECK(fix.R_table.rows() == kStateCount);
  CHECK(fix.R_table.cols() == 5);
  CHECK(fix.T_table.rows() == kStateCount);
  CHECK(fix.T_table.cols() == 3);
  CHECK(fix.states.size() == kStateCount);
  REQUIRE(fix.state_labels.size() == kStateCount);
  CHECK(fix.state_labels.front() == "psi_1");
  CHECK(fix.state_labels.back() == "psi_17");

  CHECK(fixture_rows('O') == 16);
  CHECK(fixture_rows('M') == 20);
  CHECK(fixture_rows('S') == 36);
  CHECK(fixture_rows('P') == 16);
  CHECK(fixture_rows('J') == 16);
  CHECK(fixture_prefactor('O') == 1.0);
  CHECK(fixture_prefactor('P') == 1.0);
  CHECK(fixture_prefactor('S') == 0.25);
  CHECK(fixture_prefactor('M') == 0.25);
  CHECK(fixture_prefactor('J') == 0.25);
  CHECK_THROWS(fixture_rows('X'));
  CHECK_THROWS(load_fixtures("/nonexistent/dir"));
}

TEST_CASE("worked-example entries read back verbatim") {
  const FixtureSet& fix = fixture();
  // First count of the 36-row table for the first state.
  CHECK(fix.b.at('S')(0, 0) == 2727.0);
  // Radius row for the first state across all five protocols.
  CHECK(fix.R_table(0, 0) == 0.0983);
  CHECK(fix.R_table(0, 1) == 0.1475);
  CHECK(fix.R_table(0, 2) == 0.2183);
  CHECK(fix.R_table(0, 3) == 0.2407);
  CHECK(fix.R_table(0, 4) == 0.5712);
  // Pairwise-distance row for the first state.
  CHECK(fix.T_table(0, 0) == 0.1415);
  CHECK(fix.T_table(0, 1) == 0.1004);
  CHECK(fix.T_table(0, 2) == 0.1203);
  // Diagonal of one printed reconstruction.
  const DensityMatrix& rho = fixture_density(fix, 'J', 3);
  CHECK(rho(0, 0) == Complex(0.5221, 0.0));
  CHECK(rho(1, 1) == Complex(0.0213, 0.0));
  CHECK(rho(2, 2) == Complex(0.0112, 0.0));
  CHECK(rho(3, 3) == Complex(0.4454, 0.0));
}

TEST_CASE("spot anchors match the committed tables") {
  const FixtureSet& fix = fixture();
  // A_O: printed integers times the 1.0 prefactor
  CHECK(fix.A.at('O')(0, 0) == 1.0 * 1.0);
  CHECK(fix.A.at('O')(0, 14) == 1.0 * 0.0);
  CHECK(fix.A.at('O')(1, 6) == 1.0 * 0.0);
  CHECK(fix.A.at('O')(1, 7) == 1.0 * 1.0);
  CHECK(fix.A.at('O')(2, 2) == 1.0 * 0.0);
  CHECK(fix.A.at('O')(2, 8) == 1.0 * 0.0);
  CHECK(fix.A.at('O')(2, 12) == 1.0 * 1.0);
  CHECK(fix.A.at('O')(3, 15) == 1.0 * 1.0);
  CHECK(fix.A.at('O')(4, 1) == 1.0 * 1.0);
  CHECK(fix.A.at('O')(6, 3) == 1.0 * 1.0);
  CHECK(fix.A.at('O')(8, 7) == 1.0 * 0.0);
  CHECK(fix.A.at('O')(8, 13) == 1.0 * 1.0);
  CHECK(fix.A.at('O')(9, 2) == 1.0 * 0.0);
  CHECK(fix.A.at('O')(9, 14) == 1.0 * -1.0);
  CHECK(fix.A.at('O')(10, 10) == 1.0 * 1.0);
  CHECK(fix.A.at('O')(12, 8) == 1.0 * 1.0);
  CHECK(fix.A.at('O')(13, 4) == 1.0 * 0.0);
  CHECK(fix.A.at('O')(13, 9) == 1.0 * -1.0);
  CHECK(fix.A.at('O')(14, 0) == 1.0 * 0.0);
  CHECK(fix.A.at('O')(15, 8) == 1.0 * 0.0);
  // A_P: printed integers times the 1.0 prefactor
  CHECK(fix.A.at('P')(0, 8) == 1.0 * 2.0);
  CHECK(fix.A.at('P')(0, 11) == 1.0 * 0.0);
  CHECK(fix.A.at('P')(1, 1) == 1.0 * 0.0);
  CHECK(fix.A.at('P')(1, 6) == 1.0 * -2.0);
  CHECK(fix.A.at('P')(2, 10) == 1.0 * -2.0);
  CHECK(fix.A.at('P')(3, 3) == 1.0 * 2.0);
  CHECK(fix.A.at('P')(6, 4) == 1.0 * -2.0);
  CHECK(fix.A.at('P')(7, 11) == 1.0 * -2.0);
  CHECK(fix.A.at('P')(9, 13) == 1.0 * 0.0);
  CHECK(fix.A.at('P')(10, 4) == 1.0 * 0.0);
  CHECK(fix.A.at('P')(11, 0) == 1.0 * 1.0);
  CHECK(fix.A.at('P')(11, 15) == 1.0 * -1.0);
  CHECK(fix.A.at('P')(12, 3) == 1.0 * 0.0);
  CHECK(fix.A.at('P')(13, 2) == 1.0 * -2.0);
  CHECK(fix.A.at('P')(14, 1) == 1.0 * 0.0);
  CHECK(fix.A.at('P')(14, 6) == 1.0 * 0.0);
  CHECK(fix.A.at('P')(14, 10) == 1.0 * 0.0);
  CHECK(fix.A.at('P')(15, 4) == 1.0 * 0.0);
  CHECK(fix.A.at('P')(15, 12) == 1.0 * 1.0);
  CHECK(fix.A.at('P')(15, 15) == 1.0 * 1.0);
  // A_S: printed integers times the 0.25 prefactor
  CHECK(fix.A.at('S')(0, 9) == 0.25 * 0.0);
  CHECK(fix.A.at('S')(2, 10) == 0.25 * 0.0);
  CHECK(fix.A.at('S')(3, 7) == 0.25 * 2.0);
  CHECK(fix.A.at('S')(4, 0) == 0.25 * 2.0);
  CHECK(fix.A.at('S')(4, 8) == 0.25 * 0.0);
  CHECK(fix.A.at('S')(9, 1) == 0.25 * 0.0);
  CHECK(fix.A.at('S')(13, 12) == 0.25 * 0.0);
  CHECK(fix.A.at('S')(20, 7) == 0.25 * 1.0);
  CHECK(fix.A.at('S')(21, 4) == 0.25 * 0.0);
  CHECK(fix.A.at('S')(21, 7) == 0.25 * 1.0);
  CHECK(fix.A.at('S')(21, 10) == 0.25 * -2.0);
  CHECK(fix.A.at('S')(22, 3) == 0.25 * -2.0);
  CHECK(fix.A.at('S')(25, 1) == 0.25 * 0.0);
  CHECK(fix.A.at('S')(26, 4) == 0.25 * -2.0);
  CHECK(fix.A.at('S')(27, 9) == 0.25 * 2.0);
  CHECK(fix.A.at('S')(28, 5) == 0.25 * -2.0);
  CHECK(fix.A.at('S')(30, 2) == 0.25 * 0.0);
  CHECK(fix.A.at('S')(31, 11) == 0.25 * 4.0);
  CHECK(fix.A.at('S')(34, 5) == 0.25 * 2.0);
  CHECK(fix.A.at('S')(34, 7) == 0.25 * 1.0);
  // A_J: printed integers times the 0.25 prefactor
  CHECK(fix.A.at('J')(0, 10) == 0.25 * 0.0);
  CHECK(fix.A.at('J')(2, 0) == 0.25 * 2.0);
  CHECK(fix.A.at('J')(4, 0) == 0.25 * 0.0);
  CHECK(fix.A.at('J')(4, 11) == 0.25 * 0.0);
  CHECK(fix.A.at('J')(6, 15) == 0.25 * 2.0);
  CHECK(fix.A.at('J')(7, 6) == 0.25 * 0.0);
  CHECK(fix.A.at('J')(7, 14) == 0.25 * -4.0);
  CHECK(fix.A.at('J')(10, 4) == 0.25 * 2.0);
  CHECK(fix.A.at('J')(11, 5) == 0.25 * 2.0);
  CHECK(fix.A.at('J')(11, 7) == 0.25 * 1.0);
  CHECK(fix.A.at('J')(11, 12) == 0.25 * 1.0);
  CHECK(fix.A.at('J')(13, 10) == 0.25 * 4.0);
  CHECK(fix.A.at('J')(13, 12) == 0.25 * 0.0);
  CHECK(fix.A.at('J')(14, 0) == 0.25 * 1.0);
  CHECK(fix.A.at('J')(14, 1) == 0.25 * 2.0);
  CHECK(fix.A.at('J')(14, 2) == 0.25 * 0.0);
  CHECK(fix.A.at('J')(14, 7) == 0.25 * 1.0);
  CHECK(fix.A.at('J')(14, 13) == 0.25 * 2.0);
  CHECK(fix.A.at('J')(15, 8) == 0.25 * 0.0);
  CHECK(fix.A.at('J')(15, 15) == 0.25 * 1.0);
  // A_M: printed integers times the 0.25 prefactor
  CHECK(fix.A.at('M')(1, 5) == 0.25 * 0.0);
  CHECK(fix.A.at('M')(1, 7) == 0.25 * 2.0);
  CHECK(fix.A.at('M')(1, 15) == 0.25 * 2.0);
  CHECK(fix.A.at('M')(2, 3) == 0.25 * -4.0);
  CHECK(fix.A.at('M')(4, 13) == 0.25 * 2.0);
  CHECK(fix.A.at('M')(5, 3) == 0.25 * 0.0);
  CHECK(fix.A.at('M')(5, 5) == 0.25 * 0.0);
  CHECK(fix.A.at('M')(6, 11) == 0.25 * 2.0);
  CHECK(fix.A.at('M')(7, 6) == 0.25 * -2.0);
  CHECK(fix.A.at('M')(9, 6) == 0.25 * 0.0);
  CHECK(fix.A.at('M')(10, 14) == 0.25 * 0.0);
  CHECK(fix.A.at('M')(12, 14) == 0.25 * 0.0);
  CHECK(fix.A.at('M')(14, 8) == 0.25 * 4.0);
  CHECK(fix.A.at('M')(14, 14) == 0.25 * 0.0);
  CHECK(fix.A.at('M')(15, 10) == 0.25 * 0.0);
  CHECK(fix.A.at('M')(15, 15) == 0.25 * 0.0);
  CHECK(fix.A.at('M')(17, 7) == 0.25 * 1.0);
  CHECK(fix.A.at('M')(17, 9) == 0.25 * 2.0);
  CHECK(fix.A.at('M')(17, 11) == 0.25 * 2.0);
  CHECK(fix.A.at('M')(19, 13) == 0.25 * -2.0);
  // b_O: raw observation integers
  CHECK(fix.b.at('O')(0, 13) == 2762.0);
  CHECK(fix.b.at('O')(1, 0) == 30.0);
  CHECK(fix.b.at('O')(2, 4) == 2282.0);
  CHECK(fix.b.at('O')(3, 10) == 928.0);
  CHECK(fix.b.at('O')(3, 11) == 1240.0);
  CHECK(fix.b.at('O')(4, 8) == -98.0);
  CHECK(fix.b.at('O')(4, 12) == -947.0);
  CHECK(fix.b.at('O')(5, 14) == -2980.0);
  CHECK(fix.b.at('O')(6, 14) == -543.0);
  CHECK(fix.b.at('O')(7, 9) == -11.0);
  CHECK(fix.b.at('O')(7, 15) == -219.0);
  CHECK(fix.b.at('O')(8, 9) == 215.0);
  CHECK(fix.b.at('O')(8, 11) == 1008.0);
  CHECK(fix.b.at('O')(8, 15) == 43.0);
  CHECK(fix.b.at('O')(10, 5) == -151.0);
  CHECK(fix.b.at('O')(10, 9) == -129.0);
  CHECK(fix.b.at('O')(10, 12) == -143.0);
  CHECK(fix.b.at('O')(11, 0) == -36.0);
  CHECK(fix.b.at('O')(13, 0) == 1.0);
  CHECK(fix.b.at('O')(14, 6) == -28.0);
  // b_P: raw observation integers
  CHECK(fix.b.at('P')(0, 0) == -1277.0);
  CHECK(fix.b.at('P')(0, 12) == 55.0);
  CHECK(fix.b.at('P')(1, 6) == 134.0);
  CHECK(fix.b.at('P')(2, 10) == -81.0);
  CHECK(fix.b.at('P')(3, 7) == 69.0);
  CHECK(fix.b.at('P')(3, 16) == -57.0);
  CHECK(fix.b.at('P')(4, 2) == -1222.0);
  CHECK(fix.b.at('P')(5, 3) == 264.0);
  CHECK(fix.b.at('P')(5, 13) == -759.0);
  CHECK(fix.b.at('P')(6, 8) == -172.0);
  CHECK(fix.b.at('P')(7, 12) == 20.0);
  CHECK(fix.b.at('P')(9, 4) == -60.0);
  CHECK(fix.b.at('P')(9, 5) == -249.0);
  CHECK(fix.b.at('P')(10, 11) == -27.0);
  CHECK(fix.b.at('P')(11, 4) == 72.0);
  CHECK(fix.b.at('P')(13, 12) == 29.0);
  CHECK(fix.b.at('P')(14, 10) == 188.0);
  CHECK(fix.b.at('P')(14, 16) == -680.0);
  CHECK(fix.b.at('P')(15, 1) == 1356.0);
  CHECK(fix.b.at('P')(15, 15) == 1367.0);
  // b_S: raw observation integers
  CHECK(fix.b.at('S')(1, 7) == 72.0);
  CHECK(fix.b.at('S')(1, 8) == 2555.0);
  CHECK(fix.b.at('S')(1, 10) == 863.0);
  CHECK(fix.b.at('S')(3, 15) == 2043.0);
  CHECK(fix.b.at('S')(4, 5) == 722.0);
  CHECK(fix.b.at('S')(5, 13) == 21.0);
  CHECK(fix.b.at('S')(6, 15) == 1887.0);
  CHECK(fix.b.at('S')(8, 11) == 2079.0);
  CHECK(fix.b.at('S')(11, 13) == 31.0);
  CHECK(fix.b.at('S')(13, 11) == 1268.0);
  CHECK(fix.b.at('S')(14, 0) == 42.0);
  CHECK(fix.b.at('S')(16, 13) == 2083.0);
  CHECK(fix.b.at('S')(17, 11) == 72.0);
  CHECK(fix.b.at('S')(25, 0) == 1259.0);
  CHECK(fix.b.at('S')(25, 1) == 1048.0);
  CHECK(fix.b.at('S')(26, 6) == 1288.0);
  CHECK(fix.b.at('S')(29, 4) == 902.0);
  CHECK(fix.b.at('S')(32, 16) == 1244.0);
  CHECK(fix.b.at('S')(33, 2) == 79.0);
  CHECK(fix.b.at('S')(33, 6) == 626.0);
  // b_J: raw observation integers
  CHECK(fix.b.at('J')(0, 13) == 2762.0);
  CHECK(fix.b.at('J')(1, 1) == 58.0);
  CHECK(fix.b.at('J')(1, 6) == 3928.0);
  CHECK(fix.b.at('J')(1, 16) == 4102.0);
  CHECK(fix.b.at('J')(2, 0) == 1244.0);
  CHECK(fix.b.at('J')(3, 6) == 2102.0);
  CHECK(fix.b.at('J')(4, 15) == 1887.0);
  CHECK(fix.b.at('J')(5, 2) == 2426.0);
  CHECK(fix.b.at('J')(5, 7) == 2274.0);
  CHECK(fix.b.at('J')(6, 16) == 719.0);
  CHECK(fix.b.at('J')(8, 0) == 1691.0);
  CHECK(fix.b.at('J')(8, 9) == 1002.0);
  CHECK(fix.b.at('J')(8, 11) == 64.0);
  CHECK(fix.b.at('J')(9, 16) == 1784.0);
  CHECK(fix.b.at('J')(10, 10) == 1068.0);
  CHECK(fix.b.at('J')(11, 16) == 2403.0);
  CHECK(fix.b.at('J')(12, 5) == 1781.0);
  CHECK(fix.b.at('J')(12, 14) == 1634.0);
  CHECK(fix.b.at('J')(13, 4) == 1149.0);
  CHECK(fix.b.at('J')(13, 9) == 1065.0);
  // b_M: raw observation integers
  CHECK(fix.b.at('M')(0, 3) == 1250.0);
  CHECK(fix.b.at('M')(0, 7) == 1458.0);
  CHECK(fix.b.at('M')(1, 11) == 1268.0);
  CHECK(fix.b.at('M')(1, 16) == 1986.0);
  CHECK(fix.b.at('M')(4, 13) == 994.0);
  CHECK(fix.b.at('M')(8, 2) == 1501.0);
  CHECK(fix.b.at('M')(8, 3) == 950.0);
  CHECK(fix.b.at('M')(8, 13) == 31.0);
  CHECK(fix.b.at('M')(9, 6) == 11.0);
  CHECK(fix.b.at('M')(9, 7) == 1235.0);
  CHECK(fix.b.at('M')(10, 11) == 778.0);
  CHECK(fix.b.at('M')(10, 15) == 991.0);
  CHECK(fix.b.at('M')(11, 14) == 266.0);
  CHECK(fix.b.at('M')(14, 0) == 32.0);
  CHECK(fix.b.at('M')(15, 4) == 1725.0);
  CHECK(fix.b.at('M')(16, 14) == 2921.0);
  CHECK(fix.b.at('M')(17, 15) == 931.0);
  CHECK(fix.b.at('M')(19, 0) == 1355.0);
  CHECK(fix.b.at('M')(19, 6) == 613.0);
  CHECK(fix.b.at('M')(19, 13) == 2240.0);
  // var_O: variance integers
  CHECK(fix.variance.at('O')(2, 7) == 23.0);
  CHECK(fix.variance.at('O')(3, 4) == 14.0);
  CHECK(fix.variance.at('O')(4, 8) == 1250.0);
  CHECK(fix.variance.at('O')(4, 16) == 2161.0);
  CHECK(fix.variance.at('O')(5, 15) == 1700.0);
  CHECK(fix.variance.at('O')(7, 1) == 1427.0);
  CHECK(fix.variance.at('O')(7, 9) == 990.0);
  CHECK(fix.variance.at('O')(9, 11) == 1104.0);
  CHECK(fix.variance.at('O')(10, 6) == 1770.0);
  CHECK(fix.variance.at('O')(11, 2) == 1196.0);
  CHECK(fix.variance.at('O')(11, 5) == 1269.0);
  CHECK(fix.variance.at('O')(11, 14) == 1674.0);
  CHECK(fix.variance.at('O')(12, 1) == 41.0);
  CHECK(fix.variance.at('O')(12, 10) == 1209.0);
  CHECK(fix.variance.at('O')(12, 11) == 821.0);
  CHECK(fix.variance.at('O')(14, 2) == 2431.0);
  CHECK(fix.variance.at('O')(14, 16) == 144.0);
  CHECK(fix.variance.at('O')(15, 1) == 2583.0);
  CHECK(fix.variance.at('O')(15, 4) == 160.0);
  CHECK(fix.variance.at('O')(15, 15) == 306.0);
  // var_P: variance integers
  CHECK(fix.variance.at('P')(0, 11) == 1052.0);
  CHECK(fix.variance.at('P')(0, 15) == 1380.0);
  CHECK(fix.variance.at('P')(1, 13) == 1886.0);
  CHECK(fix.variance.at('P')(2, 10) == 1093.0);
  CHECK(fix.variance.at('P')(2, 14) == 1870.0);
  CHECK(fix.variance.at('P')(3, 7) == 1238.0);
  CHECK(fix.variance.at('P')(5, 14) == 1965.0);
  CHECK(fix.variance.at('P')(7, 6) == 1062.0);
  CHECK(fix.variance.at('P')(8, 3) == 1261.0);
  CHECK(fix.variance.at('P')(8, 14) == 1797.0);
  CHECK(fix.variance.at('P')(9, 4) == 1218.0);
  CHECK(fix.variance.at('P')(9, 11) == 1047.0);
  CHECK(fix.variance.at('P')(10, 1) == 1356.0);
  CHECK(fix.variance.at('P')(10, 9) == 1157.0);
  CHECK(fix.variance.at('P')(15, 0) == 1397.0);
  CHECK(fix.variance.at('P')(15, 3) == 1290.0);
  CHECK(fix.variance.at('P')(15, 4) == 1220.0);
  CHECK(fix.variance.at('P')(15, 9) == 1157.0);
  CHECK(fix.variance.at('P')(15, 10) == 1083.0);
  CHECK(fix.variance.at('P')(15, 11) == 1052.0);
  // radius table, 4-decimal entries
  CHECK(fix.R_table(0, 1) == 0.1475);
  CHECK(fix.R_table(0, 2) == 0.2183);
  CHECK(fix.R_table(0, 4) == 0.5712);
  CHECK(fix.R_table(1, 0) == 0.0997);
  CHECK(fix.R_table(1, 3) == 0.2448);
  CHECK(fix.R_table(2, 0) == 0.0987);
  CHECK(fix.R_table(2, 4) == 0.5297);
  CHECK(fix.R_table(3, 0) == 0.0997);
  CHECK(fix.R_table(3, 2) == 0.2130);
  CHECK(fix.R_table(3, 4) == 0.5044);
  CHECK(fix.R_table(4, 4) == 0.5767);
  CHECK(fix.R_table(5, 2) == 0.2291);
  CHECK(fix.R_table(7, 2) == 0.2299);
  CHECK(fix.R_table(9, 1) == 0.1633);
  CHECK(fix.R_table(10, 1) == 0.1526);
  CHECK(fix.R_table(10, 3) == 0.2511);
  CHECK(fix.R_table(10, 4) == 0.5829);
  CHECK(fix.R_table(13, 1) == 0.1240);
  CHECK(fix.R_table(14, 3) == 0.2128);
  CHECK(fix.R_table(16, 4) == 0.5229);
  // distance table, 4-decimal entries
  CHECK(fix.T_table(0, 1) == 0.1004);
  CHECK(fix.T_table(0, 2) == 0.1203);
  CHECK(fix.T_table(2, 2) == 0.1362);
  CHECK(fix.T_table(4, 2) == 0.1924);
  CHECK(fix.T_table(5, 0) == 0.1234);
  CHECK(fix.T_table(6, 2) == 0.0990);
  CHECK(fix.T_table(7, 0) == 0.1155);
  CHECK(fix.T_table(8, 0) == 0.1613);
  CHECK(fix.T_table(8, 1) == 0.1245);
  CHECK(fix.T_table(9, 2) == 0.1404);
  CHECK(fix.T_table(10, 0) == 0.0590);
  CHECK(fix.T_table(10, 2) == 0.0591);
  CHECK(fix.T_table(13, 2) == 0.0686);
  CHECK(fix.T_table(14, 0) == 0.0718);
  CHECK(fix.T_table(14, 1) == 0.0790);
  CHECK(fix.T_table(14, 2) == 0.0813);
  CHECK(fix.T_table(15, 1) == 0.1270);
  CHECK(fix.T_table(15, 2) == 0.1311);
  CHECK(fix.T_table(16, 1) == 0.1278);
  CHECK(fix.T_table(16, 2) == 0.1179);
  // printed density-matrix entries (4-decimal complex values)
  CHECK(fixture_density(fix, 'M', 4)(2, 2) == Complex(0.1676, 0.0));
  CHECK(fixture_density(fix, 'M', 8)(1, 1) == Complex(0.0236, 0.0));
  CHECK(fixture_density(fix, 'M', 8)(1, 3) == Complex(-0.0052, 0.0074));
  CHECK(fixture_density(fix, 'M', 9)(1, 2) == Complex(-0.4696, -0.0885));
  CHECK(fixture_density(fix, 'M', 9)(2, 1) == Complex(-0.4696, 0.0885));
  CHECK(fixture_density(fix, 'M', 11)(2, 0) == Complex(-0.0236, -0.2387));
  CHECK(fixture_density(fix, 'M', 17)(3, 2) == Complex(0.086, -0.005));
  CHECK(fixture_density(fix, 'O', 1)(2, 3) == Complex(-0.0033, 0.0768));
  CHECK(fixture_density(fix, 'O', 4)(1, 1) == Complex(0.2543, 0.0));
  CHECK(fixture_density(fix, 'O', 7)(2, 1) == Complex(0.0006, -0.038));
  CHECK(fixture_density(fix, 'O', 9)(0, 3) == Complex(-0.013, 0.004));
  CHECK(fixture_density(fix, 'O', 9)(3, 1) == Complex(-0.0065, 0.0551));
  CHECK(fixture_density(fix, 'O', 10)(1, 1) == Complex(0.5133, 0.0));
  CHECK(fixture_density(fix, 'P', 1)(3, 1) == Complex(0.0336, -0.0064));
  CHECK(fixture_density(fix, 'P', 3)(2, 0) == Complex(0.0847, 0.024));
  CHECK(fixture_density(fix, 'P', 4)(0, 0) == Complex(0.2807, 0.0));
  CHECK(fixture_density(fix, 'P', 4)(2, 3) == Complex(-0.2027, -0.0279));
  CHECK(fixture_density(fix, 'P', 4)(3, 0) == Complex(-0.0623, -0.2607));
  CHECK(fixture_density(fix, 'P', 10)(1, 1) == Complex(0.5133, 0.0));
  CHECK(fixture_density(fix, 'P', 10)(3, 0) == Complex(-0.009, 0.0064));
  CHECK(fixture_density(fix, 'P', 14)(1, 1) == Complex(0.3748, 0.0));
  CHECK(fixture_density(fix, 'P', 15)(2, 1) == Complex(0.005, -0.0826));
  CHECK(fixture_density(fix, 'P', 17)(1, 1) == Complex(0.7415, 0.0));
  CHECK(fixture_density(fix, 'S', 1)(0, 0) == Complex(0.4922, 0.0));
  CHECK(fixture_density(fix, 'S', 2)(2, 2) == Complex(0.0038, 0.0));
  CHECK(fixture_density(fix, 'S', 4)(0, 3) == Complex(-0.0648, 0.271));
  CHECK(fixture_density(fix, 'S', 7)(1, 2) == Complex(0.029, 0.0678));
  CHECK(fixture_density(fix, 'S', 7)(1, 3) == Complex(-0.0436, -0.1064));
  CHECK(fixture_density(fix, 'S', 8)(1, 2) == Complex(-0.047, 0.0079));
  CHECK(fixture_density(fix, 'S', 14)(0, 0) == Complex(0.3786, 0.0));
  // preparation-target amplitudes
  CHECK(fix.states[4](1) == Complex(0.7071067811865475, 0.0));
  CHECK(fix.states[5](0) == Complex(0.0, 0.0));
  CHECK(fix.states[5](3) == Complex(0.0, 0.0));
  CHECK(fix.states[7](3) == Complex(0.0, 0.7071067811865475));
  CHECK(fix.states[10](2) == Complex(0.3535533905932738, -0.3535533905932738));
  CHECK(fix.states[10](3) == Complex(-0.3535533905932738, 0.3535533905932738));
  CHECK(fix.states[11](0) == Complex(0.3535533905932738, -0.3535533905932738));
  CHECK(fix.states[14](0) == Complex(-0.4044843402232788, -0.6503806808849802));
}

TEST_CASE("observation vectors pick the right variance source") {
  const FixtureSet& fix = fixture();

  // Differenced protocols carry dedicated variance tables.
  for (char letter : {'O', 'P'}) {
    const ObservationVector obs = fixture_observations(fix, letter, 1);
    REQUIRE(obs.b.size() == 16);
    CHECK(obs.b == fix.b.at(letter).col(0));
    CHECK(obs.variance == fix.variance.at(letter).col(0));
  }

  // Direct-count protocols reuse the counts themselves (|b| guards the
  // mathematically impossible negative entry).
  for (char letter : {'S', 'J', 'M'}) {
    const ObservationVector obs = fixture_observations(fix, letter, 17);
    REQUIRE(obs.b.size() == fixture_rows(letter));
    CHECK(obs.b == fix.b.at(letter).col(16));
    CHECK(obs.variance == fix.b.at(letter).col(16).cwiseAbs());
  }

  CHECK_THROWS(fixture_observations(fix, 'X', 1));
  CHECK_THROWS(fixture_observations(fix, 'O', 0));
  CHECK_THROWS(fixture_observations(fix, 'O', 18));
  CHECK_THROWS(fixture_density(fix, 'O', 0));
  CHECK_THROWS(fixture_density(fix, 'Z', 1));
}

TEST_CASE("consistency validation passes clean data and flags corruption") {
  const FixtureSet& fix = fixture();
  const ValidationReport clean = validate_fixtures(fix);
  CHECK(clean.ok());
  CHECK(clean.checks == 277);
  CHECK(clean.issues.empty());

  FixtureSet negative_counts = fix;
  negative_counts.b.at('S')(0, 0) = -5.0;
  CHECK_FALSE(validate_fixtures(negative_counts).ok());

  FixtureSet broken_hermiticity = fix;
  broken_hermiticity.reconstructed.at('O')[0](0, 1) += Complex(0.5, 0.0);
  CHECK_FALSE(validate_fixtures(broken_hermiticity).ok());

  FixtureSet broken_trace = fix;
  broken_trace.reconstructed.at('M')[2] *= 2.0;
  CHECK_FALSE(validate_fixtures(broken_trace).ok());

  FixtureSet broken_target = fix;
  broken_target.states[0] *= 2.0;
  CHECK_FALSE(validate_fixtures(broken_target).ok());
}

TEST_CASE("sha256 reproduces the reference vectors") {
  CHECK(sha256_hex("") ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  // Block-boundary input (message + padding spans two blocks).
  CHECK(sha256_hex(std::string(64, 'a')) ==
        "ffe054fe7ae0cb6dc65c3af9b61d5209f439851db43d0ba5997337df154668eb");
}

TEST_CASE("manifest verification detects tampering") {
  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() / "tomolens_manifest_check";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  write_text(dir / "data.txt", "hello\n");

  write_text(dir / "MANIFEST.sha256", sha256_hex("hello\n") + "  data.txt\n");
  const ValidationReport clean = verify_manifest(dir.string());
  CHECK(clean.ok());
  CHECK(clean.checks == 1);

  write_text(dir / "data.txt", "HELLO\n");
  const ValidationReport tampered = verify_manifest(dir.string());
  CHECK_FALSE(tampered.ok());
  REQUIRE(tampered.issues.size() == 1);
  CHECK(tampered.issues[0].where == "data.txt");

  write_text(dir / "MANIFEST.sha256",
             sha256_hex("HELLO\n") + "  data.txt\n" + sha256_hex("x") + "  missing.txt\n");
  const ValidationReport missing = verify_manifest(dir.string());
  CHECK(missing.checks == 2);
  REQUIRE(missing.issues.size() == 1);
  CHECK(missing.issues[0].where == "missing.txt");

  std::filesystem::remove_all(dir);
}

TEST_CASE("the committed manifest matches the fixture directory") {
  const ValidationReport report = verify_manifest(default_fixture_dir());
  CHECK(report.ok());
  CHECK(report.checks == 100);
}

TEST_CASE("the golden suite passes end to end") {
  const GoldenSuiteResult result = run_golden_suite(fixture());
  REQUIRE(result.checks.size() == 6);
  for (const GoldenCheck& check : result.checks) {
    INFO(check.name, ": worst ", check.worst, " vs tolerance ", check.tolerance);
    CHECK(check.pass);
    CHECK(check.worst <= check.tolerance);
  }
  CHECK(result.all_pass());
}

}  // TEST_SUITE
