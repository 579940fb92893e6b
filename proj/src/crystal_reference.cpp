#include "crystal_reference.hpp"

#include <array>

namespace pdcm::detail {
namespace {

constexpr Axis o = Axis::ordinary_y;
constexpr Axis e = Axis::extraordinary_z;

// Oxide crystals: e -> e + e, e -> o + o and o -> e + o are the non-zero entries.
constexpr std::array<ReferenceConfig, 3> kOxide{{
    {PmType::type0, e, e, e},
    {PmType::typeI, e, o, o},
    {PmType::typeII, o, e, o},
}};

// Orientation-patterned semiconductors are isotropic: type-0 only.
constexpr std::array<ReferenceConfig, 1> kSemiconductor{{
    {PmType::type0, e, e, e},
}};

// Negative uniaxial chalcopyrite.
constexpr std::array<ReferenceConfig, 2> kCsp{{
    {PmType::typeI, e, o, o},
    {PmType::typeII, e, o, e},
}};

// Positive uniaxial chalcopyrite.
constexpr std::array<ReferenceConfig, 2> kZgp{{
    {PmType::typeI, o, e, e},
    {PmType::typeII, o, e, o},
}};

constexpr std::array<CrystalReference, 6> kCrystals{{
    {"PPKTP", CrystalClass::biaxial_principal_plane, true, kOxide},
    {"PPLN", CrystalClass::uniaxial_negative, true, kOxide},
    {"OPGaP", CrystalClass::isotropic, true, kSemiconductor},
    {"OPGaAs", CrystalClass::isotropic, true, kSemiconductor},
    {"CSP", CrystalClass::uniaxial_negative, false, kCsp},
    {"ZGP", CrystalClass::uniaxial_positive, false, kZgp},
}};

}  // namespace

const CrystalReference* find_crystal_reference(std::string_view id) {
    for (const auto& c : kCrystals) {
        if (c.id == id) return &c;
    }
    return nullptr;
}

std::span<const CrystalReference> crystal_references() { return kCrystals; }

}  // namespace pdcm::detail
