#include "phonoblock/correl.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "phonoblock/errors.hpp"

namespace phonoblock {

namespace {

double real_part_checked(Complex value, const char* what) {
  if (std::abs(value.imag()) >= kImagTolerance) {
    throw Error(ErrorCode::kComplexCorrelation,
                std::string(what) + " has imaginary part " +
                    std::to_string(value.imag()));
  }
  return value.real();
}

double checked_occupancy(const OperatorMatrix& rho, const OperatorMatrix& b,
                         double floor) {
  const double n = real_part_checked(expectation(rho, adjoint(b) * b),
                                     "occupation");
  if (!(n > floor)) {
    throw UndefinedCorrelationError("occupation " + std::to_string(n) +
                                    " is below the correlation floor");
  }
  return n;
}

double g2_for(const OperatorMatrix& rho, const OperatorMatrix& b, double floor) {
  const double n = checked_occupancy(rho, b, floor);
  const auto bd = adjoint(b);
  const Complex ratio = expectation(rho, bd * bd * b * b) / (n * n);
  return real_part_checked(ratio, "g2(0)");
}

}  // namespace

double delay_normalization(double j) {
  if (j == 0.0) throw DomainError("delay normalization needs J != 0");
  return 2.0 * std::numbers::pi / std::abs(j);
}

double occupation(const OperatorMatrix& rho, const HilbertSpace& space,
                  std::size_t mode) {
  return expectation(rho, number(space, mode)).real();
}

double g2_zero(const OperatorMatrix& rho, const HilbertSpace& space,
               std::size_t mode, double floor) {
  return g2_for(rho, destroy(space, mode), floor);
}

double photon_g2_zero(const OperatorMatrix& rho, const HilbertSpace& space,
                      double floor) {
  if (space.num_modes() != 3) {
    throw DimensionError("photon g2 needs the three-mode (b1, b2, a) space");
  }
  return g2_for(rho, destroy(space, kModeCavity), floor);
}

CorrelationSeries g2_tau(const Superoperator& l, const OperatorMatrix& rho,
                         const HilbertSpace& space, std::size_t mode,
                         std::span<const double> taus,
                         const EvolveOptions& opts, double floor) {
  if (l.hilbert_dim() != space.dim() || rho.dim() != space.dim()) {
    throw DimensionError("g2_tau: generator, state and space disagree");
  }
  for (std::size_t k = 0; k < taus.size(); ++k) {
    if (taus[k] < 0.0) throw DomainError("g2_tau: delays must be non-negative");
    if (k > 0 && !(taus[k] > taus[k - 1])) {
      throw DomainError("g2_tau: delays must be strictly increasing");
    }
  }
  const auto b = destroy(space, mode);
  const auto bd = adjoint(b);
  const auto nop = bd * b;
  const double n = checked_occupancy(rho, b, floor);

  CorrelationSeries out;
  out.taus.assign(taus.begin(), taus.end());
  out.values.reserve(taus.size());

  // Propagate between consecutive delays; the generator is time independent.
  Vector state = vectorize(b * rho * bd);
  double t = 0.0;
  for (double tau : taus) {
    state = evolve_vec(l, state, tau - t, opts);
    t = tau;
    if (tau == 0.0) {
      // Same formula path as g2_zero.
      out.values.push_back(g2_for(rho, b, floor));
      continue;
    }
    const Complex num = expectation(unvectorize(state), nop);
    out.values.push_back(real_part_checked(num / (n * n), "g2(tau)"));
  }
  return out;
}

}  // namespace phonoblock
