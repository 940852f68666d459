// The parallel execution path must agree with the serial reference exactly:
// every kernel partitions independent basis pairs or grid points, so the
// results are identical bit for bit, not merely close.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "laxkit/catalog.hpp"
#include "laxkit/flatness.hpp"
#include "laxkit/scan.hpp"

using namespace laxkit;

TEST_CASE("check_general: serial and parallel verdicts and coefficients agree") {
  for (const auto& name :
       {"z4_superspace", "pcm_doubled(1,2)", "new_z2(1)", "pcm_gauge_fixed(1,2)"}) {
    CAPTURE(name);
    ModelSpec m = builtin(name);
    GeneralCheckReport serial = check_general(m.pair, Exec::serial);
    GeneralCheckReport parallel = check_general(m.pair, Exec::parallel);
    CHECK(serial.verdict == parallel.verdict);
    CHECK(serial.coefficients == parallel.coefficients);
    CHECK(serial.detail == parallel.detail);
  }
}

TEST_CASE("flatness_series: identical residual maps") {
  for (const auto& name : {"z3_coset", "z4_superspace", "general_z2(1,2,3)"}) {
    CAPTURE(name);
    ModelSpec m = builtin(name);
    FlatnessSeriesReport serial = flatness_series(m.pair, m.projectors, 5, Exec::serial);
    FlatnessSeriesReport parallel = flatness_series(m.pair, m.projectors, 5, Exec::parallel);
    CHECK(serial.all_zero == parallel.all_zero);
    CHECK(serial.modulo_constraints == parallel.modulo_constraints);
    CHECK(serial.residuals == parallel.residuals);
  }
}

TEST_CASE("flatness_numeric: same seed, same samples, same residual") {
  ModelSpec m = builtin("z4_superspace");
  NumericFlatnessReport serial =
      flatness_numeric(m.pair, m.projectors, {}, 20, 99, Exec::serial);
  NumericFlatnessReport parallel =
      flatness_numeric(m.pair, m.projectors, {}, 20, 99, Exec::parallel);
  CHECK(serial.max_residual == parallel.max_residual);
  CHECK(serial.lambdas == parallel.lambdas);
}

TEST_CASE("scans: identical points and loci") {
  AlgebraPtr algebra = builtin("general_z2(1,2,3)").algebra;
  GridSpec grid{-2, 2, 1};
  ScanResult serial = scan_general_z2(algebra, grid, Exec::serial);
  ScanResult parallel = scan_general_z2(algebra, grid, Exec::parallel);
  REQUIRE(serial.points.size() == parallel.points.size());
  for (std::size_t i = 0; i < serial.points.size(); ++i) {
    CHECK(serial.points[i].verdict == parallel.points[i].verdict);
    CHECK(serial.points[i].pi == parallel.points[i].pi);
    CHECK(serial.points[i].residual == parallel.points[i].residual);
    CHECK(serial.points[i].loci == parallel.points[i].loci);
  }
  REQUIRE(serial.loci.size() == parallel.loci.size());
  for (std::size_t i = 0; i < serial.loci.size(); ++i) {
    CHECK(serial.loci[i].description == parallel.loci[i].description);
    CHECK(serial.loci[i].witnesses == parallel.loci[i].witnesses);
    CHECK(serial.loci[i].rows == parallel.loci[i].rows);
  }

  ScanResult pcm_serial = scan_pcm(grid, Exec::serial);
  ScanResult pcm_parallel = scan_pcm(grid, Exec::parallel);
  REQUIRE(pcm_serial.points.size() == pcm_parallel.points.size());
  for (std::size_t i = 0; i < pcm_serial.points.size(); ++i) {
    CHECK(pcm_serial.points[i].verdict == pcm_parallel.points[i].verdict);
    CHECK(pcm_serial.points[i].doubled == pcm_parallel.points[i].doubled);
  }
}
