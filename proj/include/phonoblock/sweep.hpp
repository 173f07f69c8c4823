#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "phonoblock/errors.hpp"
#include "phonoblock/model.hpp"

namespace phonoblock {

enum class ModelKind { kMech, kFull };

enum class OptimalMode { kOff, kSingleDrive, kTwoDrivePlus, kTwoDriveMinus };

enum class Axis { kDelta, kU, kJ, kZeta, kPhi, kNth, kTau };

enum class Observable { kG2B, kG2A, kNB1, kNB2, kNA, kG2Tau };

const char* axis_name(Axis a);
const char* observable_name(Observable o);

struct AxisSpec {
  Axis axis = Axis::kDelta;
  std::vector<double> values;
};

// Inclusive linear grid of count points.
std::vector<double> linspace(double start, double stop, std::size_t count);
// Inclusive geometric grid; start and stop must be positive.
std::vector<double> logspace(double start, double stop, std::size_t count);

struct SweepConfig {
  ModelKind model = ModelKind::kMech;
  OptimalMode optimal = OptimalMode::kOff;
  // Two-drive modes compute (zeta, phi) at this detuning instead of the
  // point's own detuning, so a detuning scan keeps the drive fixed.
  std::optional<double> optimal_delta;

  MechParams params;
  // When set, omega2 = zeta * omega1.
  std::optional<double> zeta;
  OmParams om;

  std::vector<AxisSpec> axes;  // row-major: first axis varies slowest
  std::vector<Observable> observables;
  std::vector<int> dims;       // empty: defaults for the model kind
  bool convergence_check = true;

  std::vector<int> effective_dims() const;
  bool has_axis(Axis a) const;
  bool wants(Observable o) const;
  std::size_t row_count() const;

  // Throws ConfigError on any inconsistency.
  void validate() const;
};

// Structured text: "[section]" headers and "key = value" lines; '#' starts a
// comment. Unknown sections or keys are errors.
SweepConfig parse_config(std::istream& in);
SweepConfig load_config(const std::string& path);

struct SweepRow {
  double delta = 0.0, u = 0.0, j = 0.0, omega1 = 0.0;
  double zeta = 0.0, phi = 0.0, nth = 0.0;
  double g2_b, n_b1, n_b2, g2_a, n_a;  // NaN when not requested or failed
  double tau, tau_norm, g2_tau;        // NaN outside g2(tau) runs
  int converged = -1;                  // -1 not checked, 0 flagged, 1 ok
  ErrorCode error = ErrorCode::kOk;
  std::string message;
  double wall_seconds = 0.0;

  SweepRow();
};

struct SweepResult {
  std::vector<SweepRow> rows;
  double wall_seconds = 0.0;

  std::size_t failed() const;
};

// Worker count: explicit value if positive, else PHONOBLOCK_WORKERS, else
// hardware concurrency.
std::size_t resolve_workers(std::size_t requested);

SweepResult run_sweep(const SweepConfig& config, std::size_t workers = 0);

inline constexpr const char* kCsvColumns =
    "delta,u,j,omega1,zeta,phi,nth,g2_b,n_b1,n_b2,g2_a,n_a,tau,tau_norm,"
    "g2_tau,converged,error_code";

// Writes a '#' comment line with a timestamp, then the header and one line
// per row. Floats use 12 significant digits.
void write_csv(const SweepResult& result, std::ostream& out,
               bool include_timestamp = true);

}  // namespace phonoblock
