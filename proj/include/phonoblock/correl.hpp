#pragma once

#include <span>
#include <vector>

#include "phonoblock/fock.hpp"
#include "phonoblock/model.hpp"
#include "phonoblock/steady.hpp"

namespace phonoblock {

// Occupation below which g2 is reported as undefined instead of a ratio of
// roundoff.
inline constexpr double kOccupancyFloor = 1e-12;

// Largest imaginary part tolerated in a correlation before it is discarded.
inline constexpr double kImagTolerance = 1e-10;

struct CorrelationSeries {
  std::vector<double> taus;    // delays in units of 1/gamma
  std::vector<double> values;  // g2(tau)
};

// Period 2 pi / J used to normalize delays in oscillating g2(tau) curves.
double delay_normalization(double j);

// Tr(b^dagger b rho) for the given mode.
double occupation(const OperatorMatrix& rho, const HilbertSpace& space,
                  std::size_t mode);

// <b^dagger b^dagger b b> / <b^dagger b>^2.
double g2_zero(const OperatorMatrix& rho, const HilbertSpace& space,
               std::size_t mode, double floor = kOccupancyFloor);

// Cavity-mode g2(0) of a three-mode state.
double photon_g2_zero(const OperatorMatrix& rho, const HilbertSpace& space,
                      double floor = kOccupancyFloor);

// Delayed correlation by the quantum regression theorem: propagate
// b rho b^dagger under L and read out <b^dagger b>. Delays must be
// non-negative and strictly increasing.
CorrelationSeries g2_tau(const Superoperator& l, const OperatorMatrix& rho,
                         const HilbertSpace& space, std::size_t mode,
                         std::span<const double> taus,
                         const EvolveOptions& opts = {},
                         double floor = kOccupancyFloor);

}  // namespace phonoblock
