#pragma once

// Crystal database: Sellmeier sets per polarization axis, transparency and
// two-photon-absorption limits, and the polarization configurations that
// carry a non-zero effective nonlinearity.
//
// Wavelengths are vacuum wavelengths in micrometres, temperatures in kelvin.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pdcm {

inline constexpr double kRoomTemperatureK = 300.0;

enum class Axis { ordinary_y, extraordinary_z };

enum class CrystalClass { isotropic, uniaxial_positive, uniaxial_negative, biaxial_principal_plane };

enum class PmType { type0, typeI, typeII };

/// Closed set of dispersion formulas. Coefficient layouts are documented in
/// docs/database.md; adding a shape here is a code change, adding a
/// coefficient set is a data change.
enum class FormId {
    constant,                 // n = c0
    pole_lambda2,             // n^2 = A - K l^2 + sum B_i l^2 / (l^2 - C_i)
    pole_inverse,             // n^2 = A - K l^2 + sum B_i / (l^2 - C_i)
    pole_inverse_thermo,      // pole_inverse at T_ref plus polynomial dn/dT
    gayer_lithium_niobate,    // temperature-dependent MgO:LiNbO3 form
    skauli_gallium_arsenide,  // temperature-dependent GaAs form
};

struct WavelengthRange {
    double lo = 0.0;
    double hi = 0.0;

    [[nodiscard]] bool contains(double lambda_um) const { return lambda_um >= lo && lambda_um <= hi; }
    [[nodiscard]] double width() const { return hi - lo; }
    bool operator==(const WavelengthRange&) const = default;
};

struct SellmeierForm {
    FormId form = FormId::constant;
    std::vector<double> coefficients;
    WavelengthRange valid_range;
    bool temperature_dependent = false;
    std::string source_tag;
    std::string notes;

    /// Refractive index of this single set. Throws DomainError outside
    /// valid_range or where the formula does not give a real n > 1.
    [[nodiscard]] double index(double lambda_um, double temperature_k) const;

    /// Analytic dn/dlambda in 1/um (every shipped form has one).
    [[nodiscard]] double dn_dlambda(double lambda_um, double temperature_k) const;

    [[nodiscard]] bool has_analytic_derivative() const;

    bool operator==(const SellmeierForm&) const = default;
};

struct PhaseMatchConfigEntry {
    PmType type = PmType::type0;
    Axis pump = Axis::extraordinary_z;
    Axis signal = Axis::extraordinary_z;
    Axis idler = Axis::extraordinary_z;
    double d_eff_pm_per_v = 0.0;

    /// Same interaction with the signal and idler polarizations exchanged
    /// (e.g. o -> e + o becomes o -> o + e).
    [[nodiscard]] PhaseMatchConfigEntry swapped() const;

    /// "o -> e + o" style label.
    [[nodiscard]] std::string label() const;

    bool operator==(const PhaseMatchConfigEntry&) const = default;
};

struct MaterialRecord {
    std::string id;
    std::string name;
    CrystalClass crystal_class = CrystalClass::isotropic;
    std::map<Axis, std::vector<SellmeierForm>> axes;
    WavelengthRange transparency;
    double tpa_edge_um = 0.0;
    bool poleable = false;
    std::optional<double> birefringent_threshold_um;
    std::vector<PhaseMatchConfigEntry> configs;

    /// Sellmeier sets used for a polarization. Isotropic crystals answer
    /// every axis with their single set list.
    [[nodiscard]] const std::vector<SellmeierForm>& sellmeier_sets(Axis axis) const;

    /// Configuration entry of the given type, or nullptr when the crystal
    /// has no usable nonlinearity for it.
    [[nodiscard]] const PhaseMatchConfigEntry* config(PmType type) const;

    bool operator==(const MaterialRecord&) const = default;
};

struct MaterialDatabase {
    std::string version;
    std::vector<MaterialRecord> materials;

    /// Throws DomainError naming the id when absent.
    [[nodiscard]] const MaterialRecord& find(std::string_view id) const;
    [[nodiscard]] const MaterialRecord* try_find(std::string_view id) const;

    bool operator==(const MaterialDatabase&) const = default;
};

/// Parse a database document. Schema violations raise ParseError naming the
/// record and field; invariant failures raise ValidationError.
MaterialDatabase parse_database(std::string_view text, std::string_view origin = "<memory>");
MaterialDatabase load_database(const std::filesystem::path& path);

/// Serialize back to the documented JSON layout (pretty printed, stable key order).
std::string serialize_database(const MaterialDatabase& db);

/// Check every record invariant; throws ValidationError on the first failure.
void validate_record(const MaterialRecord& record);

/// Mean refractive index over the Sellmeier sets of the axis whose valid
/// range contains lambda. Throws DomainError when no set covers lambda.
double refractive_index(const MaterialRecord& material, Axis axis, double lambda_um,
                        double temperature_k = kRoomTemperatureK);

// Enum <-> text helpers shared by the database, exports and CLI.
std::string_view to_string(Axis axis);
std::string_view to_string(CrystalClass cls);
std::string_view to_string(PmType type);
std::string_view to_string(FormId form);
std::string_view axis_letter(Axis axis);  // "o" or "e"

std::optional<Axis> parse_axis(std::string_view text);
std::optional<CrystalClass> parse_crystal_class(std::string_view text);
std::optional<PmType> parse_pm_type(std::string_view text);
std::optional<FormId> parse_form_id(std::string_view text);

}  // namespace pdcm
