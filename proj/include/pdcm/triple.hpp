#pragma once

// Energy-conserving (pump, signal, idler) wavelength triples.

namespace pdcm {

/// (1/lambda_p - 1/lambda_s)^-1. Throws DomainError when signal <= pump.
double idler_wavelength(double pump_um, double signal_um);

/// Stored with the shorter daughter first. When the photon the caller named
/// "signal" is the longer one, swapped() is true and the role accessors
/// return the caller's labelling, which is what decides polarization axes.
class WavelengthTriple {
public:
    static WavelengthTriple from_pump_signal(double pump_um, double signal_um);

    [[nodiscard]] double pump() const { return pump_; }
    [[nodiscard]] double signal() const { return short_; }  // shorter daughter
    [[nodiscard]] double idler() const { return long_; }    // longer daughter
    [[nodiscard]] bool swapped() const { return swapped_; }

    [[nodiscard]] double signal_role() const { return swapped_ ? long_ : short_; }
    [[nodiscard]] double idler_role() const { return swapped_ ? short_ : long_; }

    [[nodiscard]] bool degenerate(double relative_tolerance = 1e-12) const;

    bool operator==(const WavelengthTriple&) const = default;

private:
    WavelengthTriple(double pump, double shorter, double longer, bool swapped)
        : pump_(pump), short_(shorter), long_(longer), swapped_(swapped) {}

    double pump_;
    double short_;
    double long_;
    bool swapped_;
};

}  // namespace pdcm
