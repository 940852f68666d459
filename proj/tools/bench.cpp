// Serial-versus-parallel timing for the bulk kernels: the quadratic-condition
// sweep over basis pairs, the order-K flatness expansion, the float flatness
// trials, and the parameter-grid scan. Prints one table row per kernel.
#include <chrono>
#include <cstdio>

#include "laxkit/catalog.hpp"
#include "laxkit/flatness.hpp"
#include "laxkit/parallel.hpp"
#include "laxkit/scan.hpp"

using namespace laxkit;
using Clock = std::chrono::steady_clock;

namespace {

template <typename Fn>
double time_ms(Fn&& fn) {
  auto start = Clock::now();
  fn();
  auto stop = Clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count();
}

void row(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-28s %10.1f ms %10.1f ms %8.2fx\n", name, serial_ms, parallel_ms,
              parallel_ms > 0 ? serial_ms / parallel_ms : 0.0);
}

}  // namespace

int main() {
  std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

  {
    ModelSpec m = builtin("zn_coset(7)");
    double s = time_ms([&] { (void)check_general(m.pair, Exec::serial); });
    double p = time_ms([&] { (void)check_general(m.pair, Exec::parallel); });
    row("check_general zn_coset(7)", s, p);
  }
  {
    ModelSpec m = builtin("z4_superspace");
    double s = time_ms([&] { (void)flatness_series(m.pair, m.projectors, 8, Exec::serial); });
    double p =
        time_ms([&] { (void)flatness_series(m.pair, m.projectors, 8, Exec::parallel); });
    row("flatness_series z4 order 8", s, p);
  }
  {
    ModelSpec m = builtin("z3_coset");
    double s = time_ms(
        [&] { (void)flatness_numeric(m.pair, m.projectors, {}, 400, 2024, Exec::serial); });
    double p = time_ms(
        [&] { (void)flatness_numeric(m.pair, m.projectors, {}, 400, 2024, Exec::parallel); });
    row("flatness_numeric 400 trials", s, p);
  }
  {
    AlgebraPtr algebra = builtin("general_z2(1,2,3)").algebra;
    GridSpec grid{-3, 3, Rational(1, 2)};
    double s = time_ms([&] { (void)scan_general_z2(algebra, grid, Exec::serial); });
    double p = time_ms([&] { (void)scan_general_z2(algebra, grid, Exec::parallel); });
    row("scan_general_z2 13^3 grid", s, p);
  }
  return 0;
}
