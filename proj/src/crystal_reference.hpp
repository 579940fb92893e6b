#pragma once

// Facts about the six supported crystals that the database must agree with:
// crystal class, whether the crystal can be poled, and which polarization
// configurations carry a non-zero effective nonlinearity.

#include "pdcm/materials.hpp"

#include <span>
#include <string_view>

namespace pdcm::detail {

struct ReferenceConfig {
    PmType type;
    Axis pump;
    Axis signal;
    Axis idler;
};

struct CrystalReference {
    std::string_view id;
    CrystalClass crystal_class;
    bool poleable;
    std::span<const ReferenceConfig> configs;
};

const CrystalReference* find_crystal_reference(std::string_view id);
std::span<const CrystalReference> crystal_references();

}  // namespace pdcm::detail
