#include "pdcm/materials.hpp"

#include "crystal_reference.hpp"
#include "pdcm/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>
#include <utility>

#include <fmt/format.h>

#include "json.hpp"

namespace pdcm {

using nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Enum text
// ---------------------------------------------------------------------------

namespace {

template <class E>
struct EnumName {
    E value;
    std::string_view name;
};

constexpr std::array<EnumName<Axis>, 2> kAxisNames{{
    {Axis::ordinary_y, "ordinary_y"},
    {Axis::extraordinary_z, "extraordinary_z"},
}};

constexpr std::array<EnumName<CrystalClass>, 4> kClassNames{{
    {CrystalClass::isotropic, "isotropic"},
    {CrystalClass::uniaxial_positive, "uniaxial_positive"},
    {CrystalClass::uniaxial_negative, "uniaxial_negative"},
    {CrystalClass::biaxial_principal_plane, "biaxial_principal_plane"},
}};

constexpr std::array<EnumName<PmType>, 3> kTypeNames{{
    {PmType::type0, "type0"},
    {PmType::typeI, "typeI"},
    {PmType::typeII, "typeII"},
}};

constexpr std::array<EnumName<FormId>, 6> kFormNames{{
    {FormId::constant, "constant"},
    {FormId::pole_lambda2, "pole_lambda2"},
    {FormId::pole_inverse, "pole_inverse"},
    {FormId::pole_inverse_thermo, "pole_inverse_thermo"},
    {FormId::gayer_lithium_niobate, "gayer_lithium_niobate"},
    {FormId::skauli_gallium_arsenide, "skauli_gallium_arsenide"},
}};

template <class E, std::size_t N>
std::string_view name_of(const std::array<EnumName<E>, N>& table, E value) {
    for (const auto& entry : table) {
        if (entry.value == value) return entry.name;
    }
    return "?";
}

template <class E, std::size_t N>
std::optional<E> value_of(const std::array<EnumName<E>, N>& table, std::string_view text) {
    for (const auto& entry : table) {
        if (entry.name == text) return entry.value;
    }
    return std::nullopt;
}

}  // namespace

std::string_view to_string(Axis axis) { return name_of(kAxisNames, axis); }
std::string_view to_string(CrystalClass cls) { return name_of(kClassNames, cls); }
std::string_view to_string(PmType type) { return name_of(kTypeNames, type); }
std::string_view to_string(FormId form) { return name_of(kFormNames, form); }
std::string_view axis_letter(Axis axis) { return axis == Axis::ordinary_y ? "o" : "e"; }

std::optional<Axis> parse_axis(std::string_view text) {
    if (text == "o" || text == "y" || text == "ordinary" || text == "ordinary_y") return Axis::ordinary_y;
    if (text == "e" || text == "z" || text == "extraordinary" || text == "extraordinary_z") return Axis::extraordinary_z;
    return std::nullopt;
}

std::optional<CrystalClass> parse_crystal_class(std::string_view text) { return value_of(kClassNames, text); }

std::optional<PmType> parse_pm_type(std::string_view text) {
    if (text == "0" || text == "type-0") return PmType::type0;
    if (text == "I" || text == "type-I") return PmType::typeI;
    if (text == "II" || text == "type-II") return PmType::typeII;
    return value_of(kTypeNames, text);
}

std::optional<FormId> parse_form_id(std::string_view text) { return value_of(kFormNames, text); }

// ---------------------------------------------------------------------------
// Records
// ---------------------------------------------------------------------------

PhaseMatchConfigEntry PhaseMatchConfigEntry::swapped() const {
    PhaseMatchConfigEntry out = *this;
    std::swap(out.signal, out.idler);
    return out;
}

std::string PhaseMatchConfigEntry::label() const {
    return fmt::format("{} -> {} + {}", axis_letter(pump), axis_letter(signal), axis_letter(idler));
}

const std::vector<SellmeierForm>& MaterialRecord::sellmeier_sets(Axis axis) const {
    if (crystal_class == CrystalClass::isotropic && !axes.empty()) {
        return axes.begin()->second;
    }
    const auto it = axes.find(axis);
    if (it == axes.end()) {
        throw DomainError(fmt::format("material '{}' has no dispersion data for axis {}", id, to_string(axis)));
    }
    return it->second;
}

const PhaseMatchConfigEntry* MaterialRecord::config(PmType type) const {
    for (const auto& c : configs) {
        if (c.type == type) return &c;
    }
    return nullptr;
}

const MaterialRecord* MaterialDatabase::try_find(std::string_view id) const {
    for (const auto& m : materials) {
        if (m.id == id) return &m;
    }
    return nullptr;
}

const MaterialRecord& MaterialDatabase::find(std::string_view id) const {
    if (const auto* m = try_find(id)) return *m;
    throw DomainError(fmt::format("unknown material '{}'", id));
}

double refractive_index(const MaterialRecord& material, Axis axis, double lambda_um, double temperature_k) {
    const auto& sets = material.sellmeier_sets(axis);
    double sum = 0.0;
    int count = 0;
    for (const auto& s : sets) {
        if (!s.valid_range.contains(lambda_um)) continue;
        sum += s.index(lambda_um, temperature_k);
        ++count;
    }
    if (count == 0) {
        throw DomainError(fmt::format("wavelength {} um outside every Sellmeier range of {} ({})", lambda_um,
                                      material.id, to_string(axis)));
    }
    return sum / count;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

namespace {

bool form_is_temperature_dependent(FormId form) {
    return form == FormId::pole_inverse_thermo || form == FormId::gayer_lithium_niobate ||
           form == FormId::skauli_gallium_arsenide;
}

// Empty string when the count is acceptable, otherwise a description.
std::string coefficient_count_problem(FormId form, std::size_t n) {
    switch (form) {
    case FormId::constant:
        return n == 1 ? "" : "constant form takes exactly 1 coefficient";
    case FormId::pole_lambda2:
    case FormId::pole_inverse:
        return (n >= 2 && n % 2 == 0) ? "" : "pole forms take [A, K, B1, C1, ...] (even count >= 2)";
    case FormId::pole_inverse_thermo:
        return (n >= 7 && (n - 7) % 2 == 0) ? "" : "pole_inverse_thermo takes [A, K, B1, C1, ..., T_ref, a3, a2, a1, a0]";
    case FormId::gayer_lithium_niobate:
        return n == 10 ? "" : "gayer_lithium_niobate takes 10 coefficients [a1..a6, b1..b4]";
    case FormId::skauli_gallium_arsenide:
        return n == 14 ? "" : "skauli_gallium_arsenide takes 14 coefficients";
    }
    return "unknown form";
}

[[noreturn]] void invalid(const MaterialRecord& r, const std::string& what) {
    throw ValidationError(fmt::format("material '{}': {}", r.id, what));
}

bool axes_consistent(const PhaseMatchConfigEntry& c) {
    switch (c.type) {
    case PmType::type0:
        return c.pump == c.signal && c.signal == c.idler;
    case PmType::typeI:
        return c.signal == c.idler && c.signal != c.pump;
    case PmType::typeII:
        return c.signal != c.idler;
    }
    return false;
}

bool same_interaction(const PhaseMatchConfigEntry& c, const detail::ReferenceConfig& ref) {
    if (c.type != ref.type || c.pump != ref.pump) return false;
    if (c.signal == ref.signal && c.idler == ref.idler) return true;
    // The two type-II orderings are one interaction with the photons relabelled.
    return c.type == PmType::typeII && c.signal == ref.idler && c.idler == ref.signal;
}

void validate_form(const MaterialRecord& r, Axis axis, const SellmeierForm& s) {
    const auto where = fmt::format("axis {} set '{}'", to_string(axis), s.source_tag);
    if (s.source_tag.empty()) invalid(r, fmt::format("axis {}: Sellmeier set without source_tag", to_string(axis)));
    if (auto problem = coefficient_count_problem(s.form, s.coefficients.size()); !problem.empty()) {
        invalid(r, fmt::format("{}: {} (got {})", where, problem, s.coefficients.size()));
    }
    if (!(s.valid_range.lo > 0.0 && s.valid_range.lo < s.valid_range.hi)) {
        invalid(r, fmt::format("{}: valid_range must satisfy 0 < lo < hi", where));
    }
    if (s.temperature_dependent != form_is_temperature_dependent(s.form)) {
        invalid(r, fmt::format("{}: temperature_dependent flag disagrees with form {}", where, to_string(s.form)));
    }
    constexpr int kSamples = 64;
    for (int k = 0; k <= kSamples; ++k) {
        const double lambda = s.valid_range.lo + s.valid_range.width() * k / kSamples;
        try {
            (void)s.index(lambda, kRoomTemperatureK);
        } catch (const DomainError& e) {
            invalid(r, fmt::format("{}: {}", where, e.what()));
        }
    }
}

}  // namespace

void validate_record(const MaterialRecord& r) {
    const auto* ref = detail::find_crystal_reference(r.id);
    if (ref == nullptr) invalid(r, "not one of PPKTP, PPLN, OPGaP, OPGaAs, CSP, ZGP");
    if (r.crystal_class != ref->crystal_class) {
        invalid(r, fmt::format("crystal_class {} (expected {})", to_string(r.crystal_class), to_string(ref->crystal_class)));
    }

    if (!(r.transparency.lo > 0.0 && r.transparency.lo < r.transparency.hi)) {
        invalid(r, "transparency window must satisfy 0 < lo < hi");
    }
    const bool tpa_inside = r.transparency.lo < r.tpa_edge_um && r.tpa_edge_um < r.transparency.hi;
    if (!tpa_inside && r.tpa_edge_um != r.transparency.lo) {
        invalid(r, "tpa_edge must lie inside the transparency window, or equal its lower bound when TPA is absent");
    }
    if (r.birefringent_threshold_um && !(*r.birefringent_threshold_um > 0.0)) {
        invalid(r, "birefringent_qpm_threshold_um must be positive");
    }

    const std::size_t expected_axes = r.crystal_class == CrystalClass::isotropic ? 1 : 2;
    if (r.axes.size() != expected_axes) {
        invalid(r, fmt::format("{} crystal needs {} axis entr{} (got {})", to_string(r.crystal_class), expected_axes,
                               expected_axes == 1 ? "y" : "ies", r.axes.size()));
    }
    for (const auto& [axis, sets] : r.axes) {
        if (sets.empty()) invalid(r, fmt::format("axis {} has no Sellmeier sets", to_string(axis)));
        std::set<std::string> tags;
        for (const auto& s : sets) {
            validate_form(r, axis, s);
            if (!tags.insert(s.source_tag).second) {
                invalid(r, fmt::format("axis {}: duplicate source_tag '{}'", to_string(axis), s.source_tag));
            }
        }
    }

    if (r.poleable != ref->poleable) {
        invalid(r, r.poleable ? "crystal cannot be poled (poleable=true)" : "crystal is poleable (poleable=false)");
    }

    std::set<PmType> seen;
    for (const auto& c : r.configs) {
        const auto what = fmt::format("{} {}", to_string(c.type), c.label());
        if (!seen.insert(c.type).second) invalid(r, fmt::format("duplicate {} entry", to_string(c.type)));
        if (!axes_consistent(c)) invalid(r, fmt::format("{}: axes do not match the interaction type", what));
        if (!(c.d_eff_pm_per_v > 0.0)) invalid(r, fmt::format("{}: d_eff must be > 0 (zero entries are omitted)", what));
        if (c.type == PmType::type0 && !r.poleable) {
            invalid(r, fmt::format("{}: type-0 needs a poled crystal; the effective nonlinearity is N/A", what));
        }
        const bool listed = std::any_of(ref->configs.begin(), ref->configs.end(),
                                        [&](const auto& rc) { return same_interaction(c, rc); });
        if (!listed) invalid(r, fmt::format("{}: effective nonlinearity is zero or N/A for this crystal", what));
    }
    for (const auto& rc : ref->configs) {
        const bool present = std::any_of(r.configs.begin(), r.configs.end(),
                                         [&](const auto& c) { return same_interaction(c, rc); });
        if (!present) invalid(r, fmt::format("missing {} configuration", to_string(rc.type)));
    }
}

// ---------------------------------------------------------------------------
// JSON <-> records
// ---------------------------------------------------------------------------

namespace {

class Reader {
public:
    explicit Reader(std::string context) : context_(std::move(context)) {}

    [[noreturn]] void fail(std::string_view field, std::string_view what) const {
        throw ParseError(fmt::format("{}: field '{}': {}", context_, field, what));
    }

    const ordered_json& member(const ordered_json& obj, std::string_view field) const {
        if (!obj.is_object()) fail(field, "parent is not an object");
        const auto it = obj.find(field);
        if (it == obj.end()) fail(field, "missing");
        return *it;
    }

    double number(const ordered_json& obj, std::string_view field) const {
        const auto& v = member(obj, field);
        if (!v.is_number()) fail(field, "expected a number");
        return v.get<double>();
    }

    bool boolean(const ordered_json& obj, std::string_view field) const {
        const auto& v = member(obj, field);
        if (!v.is_boolean()) fail(field, "expected a boolean");
        return v.get<bool>();
    }

    std::string string(const ordered_json& obj, std::string_view field) const {
        const auto& v = member(obj, field);
        if (!v.is_string()) fail(field, "expected a string");
        return v.get<std::string>();
    }

    std::string optional_string(const ordered_json& obj, std::string_view field) const {
        return obj.contains(field) ? string(obj, field) : std::string{};
    }

    WavelengthRange range(const ordered_json& obj, std::string_view field) const {
        const auto& v = member(obj, field);
        if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
            fail(field, "expected [lo, hi] in um");
        }
        return {v[0].get<double>(), v[1].get<double>()};
    }

    std::vector<double> numbers(const ordered_json& obj, std::string_view field) const {
        const auto& v = member(obj, field);
        if (!v.is_array()) fail(field, "expected an array of numbers");
        std::vector<double> out;
        for (const auto& x : v) {
            if (!x.is_number()) fail(field, "expected an array of numbers");
            out.push_back(x.get<double>());
        }
        return out;
    }

    template <class E>
    E enumeration(const ordered_json& obj, std::string_view field, std::optional<E> (*parse)(std::string_view)) const {
        const auto text = string(obj, field);
        const auto value = parse(text);
        if (!value) fail(field, fmt::format("unrecognised value '{}'", text));
        return *value;
    }

    [[nodiscard]] Reader nested(std::string_view suffix) const { return Reader(fmt::format("{} {}", context_, suffix)); }

private:
    std::string context_;
};

SellmeierForm parse_form(const Reader& rd, const ordered_json& j) {
    SellmeierForm s;
    s.form = rd.enumeration<FormId>(j, "form", parse_form_id);
    s.coefficients = rd.numbers(j, "coefficients");
    s.valid_range = rd.range(j, "valid_range_um");
    s.temperature_dependent = rd.boolean(j, "temperature_dependent");
    s.source_tag = rd.string(j, "source_tag");
    s.notes = rd.optional_string(j, "notes");
    return s;
}

PhaseMatchConfigEntry parse_config(const Reader& rd, const ordered_json& j) {
    PhaseMatchConfigEntry c;
    c.type = rd.enumeration<PmType>(j, "type", parse_pm_type);
    c.pump = rd.enumeration<Axis>(j, "pump", parse_axis);
    c.signal = rd.enumeration<Axis>(j, "signal", parse_axis);
    c.idler = rd.enumeration<Axis>(j, "idler", parse_axis);
    c.d_eff_pm_per_v = rd.number(j, "d_eff_pm_per_v");
    return c;
}

MaterialRecord parse_record(const ordered_json& j, std::size_t index) {
    std::string label = fmt::format("material[{}]", index);
    if (j.is_object() && j.contains("id") && j["id"].is_string()) {
        label = fmt::format("material[{}] '{}'", index, j["id"].get<std::string>());
    }
    const Reader rd(label);
    if (!j.is_object()) rd.fail("<record>", "expected an object");

    MaterialRecord r;
    r.id = rd.string(j, "id");
    r.name = rd.optional_string(j, "name");
    r.crystal_class = rd.enumeration<CrystalClass>(j, "crystal_class", parse_crystal_class);
    r.poleable = rd.boolean(j, "poleable");
    r.transparency = rd.range(j, "transparency_um");
    r.tpa_edge_um = rd.number(j, "tpa_edge_um");
    if (j.contains("birefringent_qpm_threshold_um") && !j["birefringent_qpm_threshold_um"].is_null()) {
        r.birefringent_threshold_um = rd.number(j, "birefringent_qpm_threshold_um");
    }

    const auto& axes = rd.member(j, "axes");
    if (!axes.is_object()) rd.fail("axes", "expected an object keyed by axis name");
    for (const auto& [key, sets] : axes.items()) {
        const auto axis = parse_axis(key);
        if (!axis) rd.fail("axes", fmt::format("unrecognised axis '{}'", key));
        if (!sets.is_array()) rd.fail(fmt::format("axes.{}", key), "expected an array of Sellmeier sets");
        auto& target = r.axes[*axis];
        for (std::size_t k = 0; k < sets.size(); ++k) {
            target.push_back(parse_form(rd.nested(fmt::format("axes.{}[{}]", key, k)), sets[k]));
        }
    }

    const auto& configs = rd.member(j, "configs");
    if (!configs.is_array()) rd.fail("configs", "expected an array");
    for (std::size_t k = 0; k < configs.size(); ++k) {
        r.configs.push_back(parse_config(rd.nested(fmt::format("configs[{}]", k)), configs[k]));
    }
    return r;
}

ordered_json range_json(const WavelengthRange& r) { return ordered_json::array({r.lo, r.hi}); }

ordered_json record_json(const MaterialRecord& r) {
    ordered_json j;
    j["id"] = r.id;
    if (!r.name.empty()) j["name"] = r.name;
    j["crystal_class"] = to_string(r.crystal_class);
    j["poleable"] = r.poleable;
    j["transparency_um"] = range_json(r.transparency);
    j["tpa_edge_um"] = r.tpa_edge_um;
    j["birefringent_qpm_threshold_um"] =
        r.birefringent_threshold_um ? ordered_json(*r.birefringent_threshold_um) : ordered_json(nullptr);
    ordered_json axes = ordered_json::object();
    for (const auto& [axis, sets] : r.axes) {
        ordered_json list = ordered_json::array();
        for (const auto& s : sets) {
            ordered_json f;
            f["form"] = to_string(s.form);
            f["coefficients"] = s.coefficients;
            f["valid_range_um"] = range_json(s.valid_range);
            f["temperature_dependent"] = s.temperature_dependent;
            f["source_tag"] = s.source_tag;
            if (!s.notes.empty()) f["notes"] = s.notes;
            list.push_back(std::move(f));
        }
        axes[std::string(to_string(axis))] = std::move(list);
    }
    j["axes"] = std::move(axes);
    ordered_json configs = ordered_json::array();
    for (const auto& c : r.configs) {
        configs.push_back({{"type", to_string(c.type)},
                           {"pump", axis_letter(c.pump)},
                           {"signal", axis_letter(c.signal)},
                           {"idler", axis_letter(c.idler)},
                           {"d_eff_pm_per_v", c.d_eff_pm_per_v}});
    }
    j["configs"] = std::move(configs);
    return j;
}

constexpr std::string_view kFormatTag = "pdc-match-materials";

}  // namespace

MaterialDatabase parse_database(std::string_view text, std::string_view origin) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(fmt::format("{}: not valid JSON: {}", origin, e.what()));
    }
    const Reader rd(std::string{origin});
    if (rd.string(doc, "format") != kFormatTag) rd.fail("format", fmt::format("expected '{}'", kFormatTag));

    MaterialDatabase db;
    db.version = rd.string(doc, "database_version");
    const auto& materials = rd.member(doc, "materials");
    if (!materials.is_array()) rd.fail("materials", "expected an array");
    std::set<std::string> ids;
    for (std::size_t k = 0; k < materials.size(); ++k) {
        auto record = parse_record(materials[k], k);
        if (!ids.insert(record.id).second) {
            throw ValidationError(fmt::format("{}: duplicate material '{}'", origin, record.id));
        }
        validate_record(record);
        db.materials.push_back(std::move(record));
    }
    return db;
}

MaterialDatabase load_database(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError(fmt::format("cannot open material database '{}'", path.string()));
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_database(buffer.str(), path.string());
}

std::string serialize_database(const MaterialDatabase& db) {
    ordered_json doc;
    doc["format"] = kFormatTag;
    doc["database_version"] = db.version;
    ordered_json list = ordered_json::array();
    for (const auto& r : db.materials) list.push_back(record_json(r));
    doc["materials"] = std::move(list);
    return doc.dump(2) + "\n";
}

}  // namespace pdcm
