#include "phonoblock/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <limits>
#include <ostream>
#include <thread>

#include "phonoblock/correl.hpp"
#include "phonoblock/optimal.hpp"
#include "phonoblock/steady.hpp"

namespace phonoblock {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using Clock = std::chrono::steady_clock;

// One unit of work: a grid point, or a whole tau series at that point.
struct WorkItem {
  std::vector<double> coords;  // values of the non-tau axes, in axis order
  std::size_t first_row = 0;
};

struct PointSetup {
  MechParams p;
  double zeta = 0.0;
};

PointSetup setup_point(const SweepConfig& cfg, const WorkItem& item) {
  PointSetup s;
  s.p = cfg.params;
  std::optional<double> zeta = cfg.zeta;
  for (std::size_t k = 0; k < item.coords.size(); ++k) {
    const double v = item.coords[k];
    switch (cfg.axes[k].axis) {
      case Axis::kDelta: s.p.delta = v; break;
      case Axis::kU: s.p.u = v; break;
      case Axis::kJ: s.p.j = v; break;
      case Axis::kZeta: zeta = v; break;
      case Axis::kPhi: s.p.phi = v; break;
      case Axis::kNth: s.p.nth = v; break;
      case Axis::kTau: break;
    }
  }

  switch (cfg.optimal) {
    case OptimalMode::kOff:
      break;
    case OptimalMode::kSingleDrive: {
      const auto opt = single_drive_optimal(s.p.j, s.p.gamma, Branch::kPlus);
      if (!cfg.has_axis(Axis::kDelta)) s.p.delta = opt.delta_opt;
      if (!cfg.has_axis(Axis::kU)) s.p.u = opt.u_opt;
      break;
    }
    case OptimalMode::kTwoDrivePlus:
    case OptimalMode::kTwoDriveMinus: {
      const double ref = cfg.optimal_delta.value_or(s.p.delta);
      const auto [plus, minus] = two_drive_optimal(s.p.u, s.p.j, ref, s.p.gamma);
      const auto& pick = cfg.optimal == OptimalMode::kTwoDrivePlus ? plus : minus;
      if (!cfg.has_axis(Axis::kZeta)) zeta = pick.zeta;
      if (!cfg.has_axis(Axis::kPhi)) s.p.phi = pick.phi;
      break;
    }
  }

  if (zeta) {
    s.zeta = *zeta;
    s.p.omega2 = *zeta * s.p.omega1;
  } else {
    s.zeta = s.p.omega1 > 0.0 ? s.p.omega2 / s.p.omega1 : 0.0;
  }
  return s;
}

void fill_inputs(SweepRow& row, const PointSetup& s) {
  row.delta = s.p.delta;
  row.u = s.p.u;
  row.j = s.p.j;
  row.omega1 = s.p.omega1;
  row.zeta = s.zeta;
  row.phi = s.p.phi;
  row.nth = s.p.nth;
}

void record_error(SweepRow& row, const Error& e) {
  if (row.error == ErrorCode::kOk) {
    row.error = e.code();
    row.message = e.what();
  }
}

// Evaluates one observable, recording a failure in the row instead of
// letting it escape.
template <typename F>
double guarded(SweepRow& row, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    record_error(row, e);
    return kNaN;
  }
}

void run_item(const SweepConfig& cfg, const WorkItem& item,
              std::vector<SweepRow>& rows) {
  const auto start = Clock::now();
  const bool tau_run = cfg.wants(Observable::kG2Tau);
  const std::vector<double>* taus = tau_run ? &cfg.axes.back().values : nullptr;
  const std::size_t n_rows = tau_run ? taus->size() : 1;

  SweepRow base;
  try {
    const PointSetup s = setup_point(cfg, item);
    fill_inputs(base, s);

    ModelSpec model{s.p, std::nullopt};
    if (cfg.model == ModelKind::kFull) model.om = cfg.om;
    const auto dims = cfg.effective_dims();
    const HilbertSpace space(dims);
    const Superoperator l = assemble(model, space);
    const OperatorMatrix rho = steady_state(l);

    if (cfg.wants(Observable::kNB1)) base.n_b1 = occupation(rho, space, kModeB1);
    if (cfg.wants(Observable::kNB2)) base.n_b2 = occupation(rho, space, kModeB2);
    if (cfg.wants(Observable::kNA)) base.n_a = occupation(rho, space, kModeCavity);
    if (cfg.wants(Observable::kG2B)) {
      base.g2_b = guarded(base, [&] { return g2_zero(rho, space, kModeB1); });
    }
    if (cfg.wants(Observable::kG2A)) {
      base.g2_a = guarded(base, [&] { return photon_g2_zero(rho, space); });
    }
    if (cfg.convergence_check) {
      base.converged = convergence_check(model, dims).converged ? 1 : 0;
    }

    if (tau_run) {
      const double norm = s.p.j != 0.0 ? delay_normalization(s.p.j) : kNaN;
      CorrelationSeries series;
      try {
        series = g2_tau(l, rho, space, kModeB1, *taus);
      } catch (const Error& e) {
        record_error(base, e);
      }
      for (std::size_t k = 0; k < n_rows; ++k) {
        SweepRow row = base;
        row.tau = (*taus)[k];
        row.tau_norm = norm;
        row.g2_tau = k < series.values.size() ? series.values[k] : kNaN;
        rows[item.first_row + k] = std::move(row);
      }
    } else {
      rows[item.first_row] = base;
    }
  } catch (const Error& e) {
    // The whole point failed: keep whatever inputs are known, mark every row.
    record_error(base, e);
    for (std::size_t k = 0; k < n_rows; ++k) {
      SweepRow row = base;
      if (tau_run) row.tau = (*taus)[k];
      rows[item.first_row + k] = std::move(row);
    }
  }
  const double wall = std::chrono::duration<double>(Clock::now() - start).count();
  for (std::size_t k = 0; k < n_rows; ++k) {
    rows[item.first_row + k].wall_seconds = wall / static_cast<double>(n_rows);
  }
}

std::vector<WorkItem> enumerate(const SweepConfig& cfg) {
  const bool tau_run = cfg.wants(Observable::kG2Tau);
  const std::size_t n_axes = cfg.axes.size() - (tau_run ? 1 : 0);
  const std::size_t per_item = tau_run ? cfg.axes.back().values.size() : 1;

  std::size_t n_items = 1;
  for (std::size_t k = 0; k < n_axes; ++k) n_items *= cfg.axes[k].values.size();

  std::vector<WorkItem> items(n_items);
  for (std::size_t flat = 0; flat < n_items; ++flat) {
    WorkItem& item = items[flat];
    item.coords.resize(n_axes);
    std::size_t rem = flat;
    for (std::size_t k = n_axes; k-- > 0;) {
      const std::size_t n = cfg.axes[k].values.size();
      item.coords[k] = cfg.axes[k].values[rem % n];
      rem /= n;
    }
    item.first_row = flat * per_item;
  }
  return items;
}

}  // namespace

SweepRow::SweepRow()
    : g2_b(kNaN), n_b1(kNaN), n_b2(kNaN), g2_a(kNaN), n_a(kNaN),
      tau(kNaN), tau_norm(kNaN), g2_tau(kNaN) {}

std::size_t SweepResult::failed() const {
  std::size_t n = 0;
  for (const auto& r : rows) n += r.error != ErrorCode::kOk ? 1 : 0;
  return n;
}

std::size_t resolve_workers(std::size_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("PHONOBLOCK_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

SweepResult run_sweep(const SweepConfig& config, std::size_t workers) {
  config.validate();
  const auto start = Clock::now();
  const auto items = enumerate(config);

  SweepResult result;
  result.rows.resize(config.row_count());

  const std::size_t n_workers = std::min(resolve_workers(workers), items.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next.fetch_add(1); k < items.size(); k = next.fetch_add(1)) {
      run_item(config, items[k], result.rows);
    }
  };
  if (n_workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_workers);
    for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(work);
  }
  result.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return result;
}

void write_csv(const SweepResult& result, std::ostream& out,
               bool include_timestamp) {
  if (include_timestamp) {
    const std::time_t now = std::time(nullptr);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    out << "# phonoblock sweep " << stamp << '\n';
  }
  out << kCsvColumns << '\n';
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.12g", v);
    out << buf << ',';
  };
  for (const auto& r : result.rows) {
    num(r.delta);
    num(r.u);
    num(r.j);
    num(r.omega1);
    num(r.zeta);
    num(r.phi);
    num(r.nth);
    num(r.g2_b);
    num(r.n_b1);
    num(r.n_b2);
    num(r.g2_a);
    num(r.n_a);
    num(r.tau);
    num(r.tau_norm);
    num(r.g2_tau);
    out << r.converged << ',' << error_code_name(r.error) << '\n';
  }
}

}  // namespace phonoblock
