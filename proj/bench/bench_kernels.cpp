// Compares the OpenMP execution paths of the brute-force kernels against
// their serial reference implementations: same results, wall-clock ratio.
// Usage: bench_kernels [repetition-multiplier]
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "mext/cocycles.hpp"
#include "mext/forms.hpp"

using namespace mext;

namespace {

template <typename F>
double timed(F&& f, int reps) {
  auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void report(const char* name, int reps, double serial, double parallel, bool agree) {
  std::printf("%-36s x%-4d %9.3fs %9.3fs %7.2fx   %s\n", name, reps, serial, parallel,
              parallel > 0 ? serial / parallel : 0.0, agree ? "agree" : "DISAGREE");
}

}  // namespace

int main(int argc, char** argv) {
  int mult = argc > 1 ? std::atoi(argv[1]) : 1;
  if (mult < 1) mult = 1;
  std::printf("%-36s %-5s %10s %10s %8s   %s\n", "kernel", "reps", "serial", "parallel", "speedup",
              "check");

  // Gauss sum over the largest supported metric group: 1024 elements.
  {
    FinAbGroup c = make_group({32, 32});
    QuadForm q = make_quad_form(c, {QZ(1, 64), QZ(3, 64)}, {QZ()});
    int reps = 40 * mult;
    GaussSum ref, par_sum;
    double ts = timed([&] { ref = gauss_sum(q, Exec::serial); }, reps);
    double tp = timed([&] { par_sum = gauss_sum(q, Exec::parallel); }, reps);
    bool agree = ref.norm2 == par_sum.norm2 &&
                 std::fabs((double)(ref.re - par_sum.re)) < 1e-9 &&
                 std::fabs((double)(ref.im - par_sum.im)) < 1e-9;
    report("gauss_sum Z32xZ32 (1024 elements)", reps, ts, tp, agree);
  }

  // Central charge of the same group: Gauss sum plus the root-of-unity match.
  {
    FinAbGroup c = make_group({32, 32});
    MetricGroup m = make_metric_group(make_quad_form(c, {QZ(1, 64), QZ(3, 64)}, {QZ()}));
    int reps = 40 * mult;
    int ref = 0, par_val = 0;
    double ts = timed([&] { ref = central_charge(m, Exec::serial); }, reps);
    double tp = timed([&] { par_val = central_charge(m, Exec::parallel); }, reps);
    report("central_charge Z32xZ32", reps, ts, tp, ref == par_val);
  }

  // Quadratic form enumeration with the nondegeneracy filter.
  {
    FinAbGroup a = make_group({2, 4, 4});
    int reps = 10 * mult;
    std::vector<QuadForm> ref, par_forms;
    double ts = timed([&] { ref = enumerate_forms(a, true, Exec::serial); }, reps);
    double tp = timed([&] { par_forms = enumerate_forms(a, true, Exec::parallel); }, reps);
    bool agree = ref.size() == par_forms.size();
    for (size_t i = 0; agree && i < ref.size(); ++i) agree = ref[i] == par_forms[i];
    std::string name = "enumerate_forms Z2xZ4xZ4 (" + std::to_string(ref.size()) + " found)";
    report(name.c_str(), reps, ts, tp, agree);
  }

  // 3-cocycle identity over all quadruples of a 16-element group.
  {
    FinAbGroup g = make_group({4, 4});
    Cocycle3 w = standard_cocycle(g, 2, {0, 1}, 1);
    w.type1[0] = 3;
    int reps = 30 * mult;
    bool ref = false, par_ok = false;
    double ts = timed([&] { ref = check_cocycle_identity(w, Exec::serial); }, reps);
    double tp = timed([&] { par_ok = check_cocycle_identity(w, Exec::parallel); }, reps);
    report("cocycle identity Z4xZ4 (65536 tuples)", reps, ts, tp, ref == par_ok && ref);
  }

  return 0;
}
