#pragma once

// J0 and Y0 from their ascending series in multiple-precision arithmetic.
// Working precision grows with z to absorb the cancellation of the series.

namespace fiem::oracles {

struct BesselReference {
    double j0 = 0.0;
    double y0 = 0.0;
};

BesselReference bessel_series_reference(double z);

}  // namespace fiem::oracles
