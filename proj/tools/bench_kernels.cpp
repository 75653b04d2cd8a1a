// Benchmark of the enumeration kernels: OpenMP-parallel scans against their
// serial reference implementations, with an equality check on the outputs.
#include <chrono>
#include <cstdio>
#include <functional>

#include "frobdesc/symsq.hpp"

using namespace frobdesc;
using Clock = std::chrono::steady_clock;

namespace {

double run_ms(const std::function<void()>& fn) {
  auto t0 = Clock::now();
  fn();
  auto t1 = Clock::now();
  return std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0).count() /
         1000.0;
}

PlaneCurve fermat_quartic(int p) {
  const FqField* F = FqField::get(p, 1);
  std::vector<PlaneForm::Term> terms = {{F->from_int(1), 4, 0, 0},
                                        {F->from_int(1), 0, 4, 0},
                                        {F->from_int(-1), 0, 0, 4}};
  return PlaneCurve(PlaneForm(F, terms), true);
}

PlaneCurve dee_curve(int p) {
  const FqField* F = FqField::get(p, 1);
  std::vector<PlaneForm::Term> terms = {{F->from_int(1), 4, 0, 0},
                                        {F->from_int(1), 0, 2, 2},
                                        {F->from_int(-1), 0, 0, 4}};
  return PlaneCurve(PlaneForm(F, terms), false);
}

void report(const char* name, double serial_ms, double parallel_ms, bool equal) {
  std::printf("%-34s %10.1f ms %10.1f ms   x%.2f   %s\n", name, serial_ms,
              parallel_ms, parallel_ms > 0 ? serial_ms / parallel_ms : 0.0,
              equal ? "outputs equal" : "OUTPUTS DIFFER");
}

}  // namespace

int main() {
  std::printf("%-34s %13s %13s %7s\n", "kernel", "serial", "openmp", "speedup");

  {
    PlaneCurve C = fermat_quartic(7);
    std::vector<CurvePoint> a, b;
    double s = run_ms([&] { a = points_over(C, 4, ExecMode::Serial); });
    double p = run_ms([&] { b = points_over(C, 4, ExecMode::Parallel); });
    report("projective point scan (F_7^4)", s, p, a == b);
  }
  {
    PlaneCurve C = fermat_quartic(5);
    PlaneCurve D = dee_curve(5);
    EnumerationResult a, b;
    double s = run_ms([&] { a = enumerate_points(C, D, 2, ExecMode::Serial); });
    double p = run_ms([&] { b = enumerate_points(C, D, 2, ExecMode::Parallel); });
    bool eq = a.points.size() == b.points.size();
    for (size_t i = 0; eq && i < a.points.size(); ++i)
      eq = a.points[i].divisor_key() == b.points[i].divisor_key();
    report("K-point scan (H = 2)", s, p, eq);
  }
  {
    PlaneCurve C = fermat_quartic(5);
    GonalityReport a, b;
    double s = run_ms([&] { a = has_g1d(C, 4, 2, ExecMode::Serial); });
    double p = run_ms([&] { b = has_g1d(C, 4, 2, ExecMode::Parallel); });
    report("Riemann-Roch divisor sweep (d=4)", s, p, a.str() == b.str());
  }
  return 0;
}
