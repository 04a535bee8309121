#pragma once

namespace collapse {

/// CODATA 2018 values, SI units. m0 is the nucleon reference mass used by
/// the CSL collapse-rate convention lambda = gamma m0^2 / (sqrt(4 pi) sigma)^3.
struct PhysicalConstants {
    double hbar = 1.054571817e-34;   // J s
    double G = 6.67430e-11;          // m^3 kg^-1 s^-2
    double kB = 1.380649e-23;        // J / K
    double m0 = 1.67262192369e-27;   // kg
};

}  // namespace collapse
