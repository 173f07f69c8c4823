// Acceptance report: one PASS/FAIL line per criterion, details indented
// below. Exit status is nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "phonoblock/correl.hpp"
#include "phonoblock/errors.hpp"
#include "phonoblock/optimal.hpp"
#include "phonoblock/steady.hpp"
#include "phonoblock/verify.hpp"

using namespace phonoblock;

namespace {

// Tolerances.
constexpr double kRoundTol = 0.01;             // one unit in the second decimal
constexpr double kStep = 0.01;                 // detuning grid step
constexpr double kCrossingFactor = 1.5;        // thermal crossing accuracy
constexpr double kDetRelTol = 1e-8;            // |det| / max|x|^3
constexpr double kTwoDriveG2Max = 0.05;
constexpr double kTwoDriveNMin = 0.003, kTwoDriveNMax = 0.03;
constexpr double kLongDelayTol = 0.02;         // |g2(tau) - 1| for tau >= kLongDelay
constexpr double kLongDelay = 10.0;            // in 1/gamma
constexpr double kDelayEnd = 20.0;
constexpr double kDelayStep = 0.1;
constexpr double kEnvelopeFloor = 2e-3;        // envelope noise floor
constexpr double kReadoutRelTol = 0.10;        // mech-only vs with-cavity g2_b

const std::vector<int> kMechDims{6, 6};
const std::vector<int> kFullDims{5, 5, 3};

struct Report {
  int failures = 0;

  void line(int id, bool pass, const std::string& what, double seconds) {
    std::printf("%s criterion %2d: %s (%.1f s)\n", pass ? "PASS" : "FAIL", id,
                what.c_str(), seconds);
    std::fflush(stdout);
    if (!pass) ++failures;
  }
};

template <typename... Args>
void detail(const char* pattern, Args... args) {
  std::printf("    ");
  std::printf(pattern, args...);
  std::printf("\n");
}

double round2(double x) { return std::round(100.0 * x) / 100.0; }

bool matches_caption(double computed, double caption) {
  return std::abs(round2(computed) - caption) <= kRoundTol + 1e-12;
}

MechParams single_drive(double j, double omega1 = 0.1) {
  const auto opt = single_drive_optimal(j, 1.0, Branch::kPlus);
  MechParams p;
  p.delta = opt.delta_opt;
  p.u = opt.u_opt;
  p.j = j;
  p.omega1 = omega1;
  return p;
}

MechParams two_drive(double u, double j, double delta, Branch branch,
                     double omega1 = 0.1) {
  const auto [plus, minus] = two_drive_optimal(u, j, delta, 1.0);
  const auto& r = branch == Branch::kPlus ? plus : minus;
  MechParams p;
  p.delta = delta;
  p.u = u;
  p.j = j;
  p.omega1 = omega1;
  p.omega2 = r.zeta * omega1;
  p.phi = r.phi;
  return p;
}

double mech_g2(const MechParams& p, const std::vector<int>& dims = kMechDims) {
  const HilbertSpace space(dims);
  return g2_zero(steady_state(mech_liouvillian(p, space)), space, kModeB1);
}

// n_th at which g2(0) reaches 1, by bisection in log n_th.
double thermal_crossing(MechParams p) {
  double lo = 1e-6, hi = 0.2;
  auto excess = [&](double nth) {
    p.nth = nth;
    return mech_g2(p) - 1.0;
  };
  if (excess(lo) >= 0.0 || excess(hi) <= 0.0) return std::nan("");
  for (int it = 0; it < 40; ++it) {
    const double mid = std::sqrt(lo * hi);
    (excess(mid) < 0.0 ? lo : hi) = mid;
  }
  return std::sqrt(lo * hi);
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

const double kSingleJ[] = {0.8, 0.95, 1.5};

void criterion1(Report& rep) {
  Timer t;
  const double expect[3][2] = {{0.11, 0.98}, {0.16, 0.52}, {0.24, 0.18}};
  bool ok = true;
  for (int k = 0; k < 3; ++k) {
    const auto o = single_drive_optimal(kSingleJ[k], 1.0, Branch::kPlus);
    const bool hit = round2(o.delta_opt) == expect[k][0] && round2(o.u_opt) == expect[k][1];
    ok = ok && hit;
    detail("J=%.2f: delta_opt=%.5f u_opt=%.5f -> (%.2f, %.2f), paper (%.2f, %.2f)",
           kSingleJ[k], o.delta_opt, o.u_opt, round2(o.delta_opt), round2(o.u_opt),
           expect[k][0], expect[k][1]);
  }
  rep.line(1, ok, "single-drive optima round to the paper's values", t.seconds());
}

void criterion2(Report& rep) {
  Timer t;
  const double lo[3] = {0.05, 0.05, 0.005}, hi[3] = {0.2, 0.2, 0.02};
  bool ok = true;
  for (int k = 0; k < 3; ++k) {
    const double g = mech_g2(single_drive(kSingleJ[k]));
    const bool in = g >= lo[k] && g <= hi[k];
    ok = ok && in;
    detail("J=%.2f: g2(0)=%.5f, window [%g, %g]", kSingleJ[k], g, lo[k], hi[k]);
  }
  rep.line(2, ok, "blockade depth at the single-drive optima", t.seconds());
}

void criterion3(Report& rep) {
  Timer t;
  bool ok = true;
  for (double j : kSingleJ) {
    auto p = single_drive(j);
    const double d0 = p.delta;
    int best = 0;
    double lowest = 1e300;
    for (int k = -15; k <= 15; ++k) {
      p.delta = d0 + kStep * k;
      const double g = mech_g2(p);
      if (g < lowest) lowest = g, best = k;
    }
    ok = ok && std::abs(best) <= 1;
    detail("J=%.2f: scan minimum g2=%.5f at delta_opt %+d steps", j, lowest, best);
  }
  rep.line(3, ok, "g2(0) dip within one grid step of delta_opt", t.seconds());
}

void criterion4(Report& rep) {
  Timer t;
  const double paper[3] = {1e-3, 4.5e-4, 1.5e-4};
  bool ok = true;
  for (int k = 0; k < 3; ++k) {
    const double x = thermal_crossing(single_drive(kSingleJ[k]));
    const double ratio = x / paper[k];
    const bool hit = std::isfinite(x) && ratio <= kCrossingFactor && ratio >= 1.0 / kCrossingFactor;
    ok = ok && hit;
    detail("J=%.2f: g2(0)=1 at n_th=%.3e, paper %.1e, ratio %.3f", kSingleJ[k], x, paper[k], ratio);
  }
  rep.line(4, ok, "thermal crossings within a factor 1.5", t.seconds());
}

struct CaptionPair {
  const char* panel;
  double delta, j;
  Branch branch;
  double zeta, phi_over_pi;
};

const CaptionPair kCaptions[] = {
    {"5c", 0.5, 0.5, Branch::kPlus, 2.59, 0.20},   {"5c", 0.5, 0.85, Branch::kPlus, 1.60, 0.23},
    {"5c", 0.5, 1.0, Branch::kPlus, 0.39, 0.06},   {"5d", -0.5, 0.5, Branch::kPlus, 1.09, 0.88},
    {"5d", -0.5, 0.85, Branch::kPlus, 0.82, 0.93}, {"5d", -0.5, 1.0, Branch::kPlus, 0.77, 0.95},
    {"6c", 0.15, 0.5, Branch::kMinus, 2.25, 0.30}, {"6c", 0.15, 0.85, Branch::kMinus, 1.51, 0.32},
    {"6c", 0.15, 1.0, Branch::kMinus, 1.37, 0.33}, {"6d", -0.15, 0.5, Branch::kMinus, 2.23, 0.38},
    {"6d", -0.15, 0.85, Branch::kMinus, 1.52, 0.37}, {"6d", -0.15, 1.0, Branch::kMinus, 1.37, 0.36},
};

void criterion5(Report& rep) {
  Timer t;
  bool ok = true;
  for (const auto& c : kCaptions) {
    const auto [plus, minus] = two_drive_optimal(0.5, c.j, c.delta, 1.0);
    const auto& r = c.branch == Branch::kPlus ? plus : minus;
    const bool hit = matches_caption(r.zeta, c.zeta) && matches_caption(r.phi_over_pi(), c.phi_over_pi);
    ok = ok && hit;
    detail("Fig %s J=%.2f branch %s: (%.4f, %.4f pi), caption (%.2f, %.2f pi)%s", c.panel, c.j,
           branch_name(c.branch), r.zeta, r.phi_over_pi(), c.zeta, c.phi_over_pi,
           hit ? "" : "  <-- mismatch");
  }
  rep.line(5, ok, "two-drive optima reproduce all twelve caption pairs", t.seconds());
}

void criterion6(Report& rep) {
  Timer t;
  double worst_printed = 0.0, worst_double = 0.0;
  for (const auto& c : kCaptions) {
    const auto p = two_drive(0.5, c.j, c.delta, c.branch);
    worst_printed = std::max(worst_printed, determinant_check(p, X22Phase::kAsPrinted).relative);
    worst_double = std::max(worst_double, determinant_check(p, X22Phase::kDoublePhase).relative);
  }
  const bool printed_ok = worst_printed < kDetRelTol;
  const bool double_ok = worst_double < kDetRelTol;
  detail("max |det|/max|x|^3: x22 as printed %.3e, x22 with exp(-2i phi) %.3e", worst_printed,
         worst_double);
  detail("%s", printed_ok ? "the printed x22 passes"
                          : (double_ok ? "the printed x22 fails; the exp(-2i phi) variant passes"
                                       : "neither x22 variant passes"));
  rep.line(6, printed_ok || double_ok, "blockade determinant vanishes at the caption roots",
           t.seconds());
}

void criterion7(Report& rep) {
  Timer t;
  const auto p = two_drive(0.5, 0.5, 0.5, Branch::kPlus);
  const HilbertSpace space(kMechDims);
  const auto rho = steady_state(mech_liouvillian(p, space));
  const double g = g2_zero(rho, space, kModeB1);
  const double n = occupation(rho, space, kModeB1);
  detail("zeta+=%.4f phi+=%.4f: g2(0)=%.5f (<= %.2f), <n>=%.5f in [%.3f, %.2f]", p.omega2 / p.omega1,
         p.phi, g, kTwoDriveG2Max, n, kTwoDriveNMin, kTwoDriveNMax);
  rep.line(7, g <= kTwoDriveG2Max && n >= kTwoDriveNMin && n <= kTwoDriveNMax,
           "two-drive blockade depth and occupation", t.seconds());
}

void criterion8(Report& rep) {
  Timer t;
  struct Case {
    const char* name;
    double delta;
    Branch branch;
    double paper;
  } cases[] = {{"zeta+", 0.5, Branch::kPlus, 0.01}, {"zeta-", 0.15, Branch::kMinus, 0.02}};
  bool ok = true;
  for (const auto& c : cases) {
    const double x = thermal_crossing(two_drive(0.9, 0.5, c.delta, c.branch));
    const double ratio = x / c.paper;
    const bool hit = std::isfinite(x) && ratio <= kCrossingFactor && ratio >= 1.0 / kCrossingFactor;
    ok = ok && hit;
    detail("%s, U=0.9, J=0.5, delta=%.2f: g2(0)=1 at n_th=%.4e, paper %.2f, ratio %.3f", c.name,
           c.delta, x, c.paper, ratio);
  }
  rep.line(8, ok, "two-drive thermal crossings within a factor 1.5", t.seconds());
}

// g2(tau) exceeds g2(0) at every sampled delay, settles within 2% of 1 for
// tau >= 10/gamma, and the per-period envelope of |g2 - 1| never grows.
bool check_delay(const std::string& name, const MechParams& p) {
  const HilbertSpace space(kMechDims);
  const auto l = mech_liouvillian(p, space);
  const auto rho = steady_state(l);
  std::vector<double> taus;
  for (int k = 0; k * kDelayStep <= kDelayEnd + 1e-9; ++k) taus.push_back(k * kDelayStep);
  const auto s = g2_tau(l, rho, space, kModeB1, taus);
  const double g0 = s.values.front();

  double min_later = 1e300, worst_tail = 0.0;
  for (std::size_t k = 1; k < taus.size(); ++k) {
    min_later = std::min(min_later, s.values[k]);
    if (taus[k] >= kLongDelay) worst_tail = std::max(worst_tail, std::abs(s.values[k] - 1.0));
  }
  const double period = delay_normalization(p.j);
  std::vector<double> envelope;
  for (double start = 0.0; start < kDelayEnd; start += period) {
    double m = 0.0;
    for (std::size_t k = 0; k < taus.size(); ++k) {
      if (taus[k] >= start && taus[k] < start + period) m = std::max(m, std::abs(s.values[k] - 1.0));
    }
    envelope.push_back(m);
  }
  bool monotone = true;
  for (std::size_t k = 1; k < envelope.size(); ++k) {
    if (envelope[k] > kEnvelopeFloor && envelope[k] > envelope[k - 1]) monotone = false;
  }
  const bool ok = min_later > g0 && worst_tail <= kLongDelayTol && monotone;
  detail("%s: g2(0)=%.4f, min g2(tau>0)=%.4f, max |g2-1| for tau>=%.0f: %.4f, envelope %s%s",
         name.c_str(), g0, min_later, kLongDelay, worst_tail, monotone ? "non-increasing" : "GROWS",
         ok ? "" : "  <-- fails");
  return ok;
}

void criterion9(Report& rep) {
  Timer t;
  bool ok = true;
  char name[64];
  for (double j : kSingleJ) {
    std::snprintf(name, sizeof name, "Fig 3b single J=%.2f", j);
    ok = check_delay(name, single_drive(j)) && ok;
  }
  struct Panel {
    const char* name;
    double delta;
    Branch branch;
  } panels[] = {{"Fig 7a zeta+", 0.5, Branch::kPlus}, {"Fig 7c zeta-", 0.15, Branch::kMinus}};
  std::vector<std::pair<std::string, MechParams>> failed;
  for (const auto& panel : panels) {
    for (double j : {0.5, 0.85, 1.0}) {
      std::snprintf(name, sizeof name, "%s J=%.2f", panel.name, j);
      const auto p = two_drive(0.5, j, panel.delta, panel.branch);
      if (!check_delay(name, p)) {
        ok = false;
        failed.emplace_back(name, p);
      }
    }
  }
  // Diagnostic only: the same failing points with both drives scaled down
  // tenfold, into the weak-drive regime. Does not affect the verdict.
  for (auto& [label, p] : failed) {
    p.omega2 *= 0.1;
    p.omega1 *= 0.1;
    check_delay("(diagnostic, omega1=0.01) " + label, p);
  }
  rep.line(9, ok, "delayed correlations rise above g2(0) and settle at 1", t.seconds());
}

void criterion10(Report& rep) {
  Timer t;
  OmParams om;
  om.kappa = 10.0;
  om.g = 0.1 * om.kappa;
  const HilbertSpace full(kFullDims);
  const std::vector<int> mech_dims(kFullDims.begin(), kFullDims.begin() + 2);
  bool ok = true;
  for (double j : kSingleJ) {
    auto p = single_drive(j);
    const double d0 = p.delta;
    constexpr int kHalf = 10;
    std::vector<double> ga, gb, gm;
    for (int k = -kHalf; k <= kHalf; ++k) {
      p.delta = d0 + kStep * k;
      const auto rho = steady_state(total_liouvillian(p, om, full));
      gb.push_back(g2_zero(rho, full, kModeB1));
      ga.push_back(photon_g2_zero(rho, full));
      gm.push_back(mech_g2(p, mech_dims));
    }
    const auto ia = std::min_element(ga.begin(), ga.end()) - ga.begin();
    const auto ib = std::min_element(gb.begin(), gb.end()) - gb.begin();
    const double rel = std::abs(gb[ib] - gm[ib]) / gm[ib];
    const bool coincide = std::abs(ia - ib) <= 1;
    const bool agree = rel <= kReadoutRelTol;
    ok = ok && coincide && agree;
    detail("J=%.2f: g_a dip %+.2f, g_b dip %+.2f (rel. to delta_opt); at the dip g_b=%.5f "
           "with cavity, %.5f mech-only, rel. diff %.3f (<= %.2f); g_a=%.5f%s",
           j, kStep * (ia - kHalf), kStep * (ib - kHalf), gb[ib], gm[ib], rel, kReadoutRelTol,
           ga[ia], coincide && agree ? "" : "  <-- fails");
  }
  rep.line(10, ok, "optical readout tracks the phonon statistics", t.seconds());
}

void criterion11(Report& rep) {
  Timer t;
  bool ok = true;
  for (const auto& c : run_verification()) {
    if (!c.informational) ok = ok && c.passed;
    detail("%-5s %-22s %.3e  %s", c.informational ? "info" : (c.passed ? "ok" : "FAIL"),
           c.name.c_str(), c.value, c.detail.c_str());
  }
  rep.line(11, ok, "oracle property suite", t.seconds());
}

}  // namespace

int main() {
  Report rep;
  const std::vector<std::function<void(Report&)>> criteria{
      criterion1, criterion2, criterion3, criterion4,  criterion5, criterion6,
      criterion7, criterion8, criterion9, criterion10, criterion11};
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    try {
      criteria[k](rep);
    } catch (const std::exception& e) {
      detail("exception: %s", e.what());
      rep.line(static_cast<int>(k + 1), false, "aborted", 0.0);
    }
  }
  std::printf("%d of %zu criteria failed\n", rep.failures, criteria.size());
  return rep.failures == 0 ? 0 : 1;
}
