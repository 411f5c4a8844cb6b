// Wall-clock comparison of the serial reference sums against the OpenMP
// chunked kernels. Rational runs must agree exactly (the chunk grid is
// deterministic); float runs report the summation-order difference.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>

#include "qwmp/rcdet.hpp"
#include "qwmp/verify.hpp"

namespace {

using namespace qwmp;
using Clock = std::chrono::steady_clock;

template <class F>
double best_ms(F&& body, int reps) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = Clock::now();
    body();
    const auto t1 = Clock::now();
    best = std::min(best,
                    std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void report(const std::string& label, double serial_ms, double parallel_ms,
            double mismatch) {
  std::printf("%-36s %10.2f %12.2f %7.2fx  %.3e\n", label.c_str(), serial_ms,
              parallel_ms, serial_ms / parallel_ms, mismatch);
}

double quat_dist(const Quaternion<double>& a, const Quaternion<double>& b) {
  const Quaternion<double> d = a - b;
  return std::max({std::abs(d.w), std::abs(d.x), std::abs(d.y), std::abs(d.z)});
}

}  // namespace

int main(int argc, char** argv) {
  const int reps = argc > 1 ? std::max(1, std::atoi(argv[1])) : 3;
  std::mt19937_64 rng(7);
  bool exact_ok = true;

  std::printf("best of %d runs per kernel\n", reps);
  std::printf("%-36s %10s %12s %8s  %s\n", "kernel", "serial ms", "parallel ms",
              "speedup", "|serial-parallel|");

  for (std::size_t n : {std::size_t{7}, std::size_t{8}}) {
    const QMatrix<double> a = random_qmatrix<double>(rng, n, n, -3, 3);
    Quaternion<double> s, p;
    const double sm = best_ms([&] { s = rdet(a, 0, Exec::serial); }, reps);
    const double pm = best_ms([&] { p = rdet(a, 0, Exec::parallel); }, reps);
    report("rdet float n=" + std::to_string(n), sm, pm, quat_dist(s, p));
  }

  {
    const QMatrix<Rational> a = random_qmatrix<Rational>(rng, 6, 6, -3, 3);
    Quaternion<Rational> s, p;
    const double sm = best_ms([&] { s = cdet(a, 2, Exec::serial); }, reps);
    const double pm = best_ms([&] { p = cdet(a, 2, Exec::parallel); }, reps);
    exact_ok = exact_ok && s == p;
    report("cdet rational n=6", sm, pm, s == p ? 0.0 : 1.0);
  }

  {
    const QMatrix<double> b = random_qmatrix<double>(rng, 12, 10, -2, 2);
    const QMatrix<double> g = conj_transpose(b) * b;
    double s = 0.0, p = 0.0;
    const double sm =
        best_ms([&] { s = principal_minor_sum(g, 5, Exec::serial); }, reps);
    const double pm =
        best_ms([&] { p = principal_minor_sum(g, 5, Exec::parallel); }, reps);
    report("principal minor sum n=10 k=5", sm, pm, std::abs(s - p));

    const QMatrix<double> f = random_qmatrix<double>(rng, 10, 1, -2, 2);
    Quaternion<double> bs, bp;
    const double bsm = best_ms(
        [&] { bs = bordered_minor_sum_col(g, f, 3, 5, Exec::serial); }, reps);
    const double bpm = best_ms(
        [&] { bp = bordered_minor_sum_col(g, f, 3, 5, Exec::parallel); }, reps);
    report("bordered minor sum n=10 r=5", bsm, bpm, quat_dist(bs, bp));
  }

  if (!exact_ok) {
    std::fprintf(stderr, "rational serial and parallel sums differ\n");
    return 1;
  }
  return 0;
}
