#include "hotshare/json_io.hpp"

#include <array>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hotshare/errors.hpp"

namespace hotshare {

namespace {

using nlohmann::json;

Rat rat_from(const json& j, const std::string& where) {
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const std::exception& e) {
            throw ParseError(where + ": " + e.what());
        }
    }
    if (j.is_number_unsigned())
        return Rat(mpz_class(std::to_string(j.get<unsigned long long>())));
    if (j.is_number_integer()) return Rat(mpz_class(std::to_string(j.get<long long>())));
    if (j.is_number_float()) {
        Rat r(j.get<double>()); // exact binary value of the double
        r.canonicalize();
        return r;
    }
    throw ParseError(where + ": expected a number or a \"p/q\" string");
}

const json& field(const json& j, const std::string& key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(where + ": missing key '" + key + "'");
    return *it;
}

DensitySpec density_from(const json& j, const std::string& where) {
    if (j.is_string()) {
        if (j.get<std::string>() == "uniform") return DensitySpec::uniform();
        throw ParseError(where + ": unknown density '" + j.get<std::string>() +
                         "' (want \"uniform\" or {breakpoints, levels})");
    }
    if (!j.is_object()) throw ParseError(where + ": density must be \"uniform\" or an object");
    const json& bp = field(j, "breakpoints", where);
    const json& lv = field(j, "levels", where);
    if (!bp.is_array() || !lv.is_array())
        throw ParseError(where + ": breakpoints and levels must be arrays");
    std::vector<Rat> breakpoints, levels;
    for (size_t i = 0; i < bp.size(); ++i)
        breakpoints.push_back(rat_from(bp[i], where + ".breakpoints[" + std::to_string(i) + "]"));
    for (size_t i = 0; i < lv.size(); ++i)
        levels.push_back(rat_from(lv[i], where + ".levels[" + std::to_string(i) + "]"));
    return DensitySpec::piecewise(std::move(breakpoints), std::move(levels));
}

IntervalSet intervals_from(const json& j, const std::string& where) {
    if (!j.is_array()) throw ParseError(where + ": expected an array of [lo, hi] pairs");
    IntervalSet out = IntervalSet::empty_set();
    for (size_t i = 0; i < j.size(); ++i) {
        const json& pair = j[i];
        std::string at = where + "[" + std::to_string(i) + "]";
        if (!pair.is_array() || pair.size() != 2)
            throw ParseError(at + ": expected a [lo, hi] pair");
        Rat lo = rat_from(pair[0], at + "[0]");
        Rat hi = rat_from(pair[1], at + "[1]");
        if (!(Rat(0) <= lo && lo < hi && hi <= Rat(1)))
            throw ParseError(at + ": need 0 <= lo < hi <= 1, got [" + rat_to_string(lo) + ", " +
                             rat_to_string(hi) + ")");
        out = out.unite(IntervalSet::single(lo, hi));
    }
    return out;
}

SharingMechanism mechanism_from(const json& j, const std::string& where) {
    if (!j.is_object()) throw ParseError(where + ": mechanism must be an object");
    SharingMechanism m;
    if (auto it = j.find("share_B_to_A"); it != j.end())
        m.share_B_to_A = intervals_from(*it, where + ".share_B_to_A");
    if (auto it = j.find("share_A_to_B"); it != j.end())
        m.share_A_to_B = intervals_from(*it, where + ".share_A_to_B");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key() != "share_B_to_A" && it.key() != "share_A_to_B")
            throw ParseError(where + ": unknown key '" + it.key() + "'");
    return m;
}

json parse_text(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(origin + ": " + e.what());
    }
}

} // namespace

LoadedConfig parse_config_json(const std::string& text, const std::string& origin) {
    json j = parse_text(text, origin);
    if (!j.is_object()) throw ParseError(origin + ": top level must be an object");

    LoadedConfig out;
    out.config.v = rat_from(field(j, "v", origin), origin + ".v");
    out.config.t = rat_from(field(j, "t", origin), origin + ".t");
    for (SegKind k : all_segments) {
        out.config.seg(k).kind = k;
        out.config.seg(k).mass = Rat(0);
        out.config.seg(k).density = DensitySpec::uniform();
    }

    const json& segs = field(j, "segments", origin);
    if (!segs.is_array()) throw ParseError(origin + ".segments: expected an array");
    std::array<bool, 4> seen{};
    for (size_t i = 0; i < segs.size(); ++i) {
        std::string where = origin + ".segments[" + std::to_string(i) + "]";
        const json& s = segs[i];
        if (!s.is_object()) throw ParseError(where + ": expected an object");
        const json& kind_j = field(s, "kind", where);
        if (!kind_j.is_string()) throw ParseError(where + ".kind: expected a string");
        SegKind kind = segment_from_name(kind_j.get<std::string>());
        if (seen[static_cast<size_t>(kind)])
            throw ParseError(where + ": duplicate segment kind '" +
                             kind_j.get<std::string>() + "'");
        seen[static_cast<size_t>(kind)] = true;
        SegmentSpec& spec = out.config.seg(kind);
        spec.mass = rat_from(field(s, "mass", where), where + ".mass");
        if (auto it = s.find("density"); it != s.end())
            spec.density = density_from(*it, where + ".density");
    }

    if (auto it = j.find("mechanism"); it != j.end()) {
        out.has_mechanism = true;
        out.mechanism = mechanism_from(*it, origin + ".mechanism");
    }
    for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key() != "v" && it.key() != "t" && it.key() != "segments" &&
            it.key() != "mechanism")
            throw ParseError(origin + ": unknown key '" + it.key() + "'");

    validate_market(out.config); // mass/density/coverage errors surface verbatim
    return out;
}

SharingMechanism parse_mechanism_json(const std::string& text, const std::string& origin) {
    json j = parse_text(text, origin);
    if (j.is_object() && j.contains("mechanism"))
        return mechanism_from(j["mechanism"], origin + ".mechanism");
    return mechanism_from(j, origin);
}

namespace {
std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}
} // namespace

LoadedConfig load_config_file(const std::string& path) {
    return parse_config_json(slurp(path), path);
}

SharingMechanism load_mechanism_file(const std::string& path) {
    return parse_mechanism_json(slurp(path), path);
}

} // namespace hotshare
