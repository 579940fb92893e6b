#include "pdcm/triple.hpp"

#include "pdcm/error.hpp"

#include <cmath>

#include <fmt/format.h>

namespace pdcm {

double idler_wavelength(double pump_um, double signal_um) {
    if (!(pump_um > 0.0) || !(signal_um > pump_um) || !std::isfinite(signal_um)) {
        throw DomainError(fmt::format("no real idler for pump {} um and signal {} um (need 0 < pump < signal)",
                                      pump_um, signal_um));
    }
    // Written as a product over a difference to keep full relative accuracy
    // close to degeneracy.
    return pump_um * signal_um / (signal_um - pump_um);
}

WavelengthTriple WavelengthTriple::from_pump_signal(double pump_um, double signal_um) {
    const double idler = idler_wavelength(pump_um, signal_um);
    if (signal_um <= idler) return {pump_um, signal_um, idler, false};
    return {pump_um, idler, signal_um, true};
}

bool WavelengthTriple::degenerate(double relative_tolerance) const {
    return long_ - short_ <= relative_tolerance * long_;
}

}  // namespace pdcm
