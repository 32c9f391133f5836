#include "sphcap/io.hpp"

#include "sphcap/error.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace sphcap {

MultiPolygon polygon_from_json(const nlohmann::json& doc)
{
    if (!doc.is_object() || !doc.contains("rings") || !doc["rings"].is_array())
        throw Error(ErrorKind::MalformedInput, "polygon JSON needs a 'rings' array");
    MultiPolygon poly;
    for (const auto& jr : doc["rings"]) {
        if (!jr.is_array())
            throw Error(ErrorKind::MalformedInput, "each ring must be an array of [x, y] pairs");
        Ring ring;
        for (const auto& jp : jr) {
            if (!jp.is_array() || jp.size() != 2 || !jp[0].is_number() || !jp[1].is_number())
                throw Error(ErrorKind::MalformedInput, "vertices must be [x, y] number pairs");
            ring.push_back({jp[0].get<double>(), jp[1].get<double>()});
        }
        poly.rings.push_back(std::move(ring));
    }
    return validate(std::move(poly));
}

MultiPolygon load_polygon_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::Io, "cannot open polygon file '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::MalformedInput, path + ": " + e.what());
    }
    return polygon_from_json(doc);
}

nlohmann::json polygon_to_json(const MultiPolygon& poly)
{
    nlohmann::json rings = nlohmann::json::array();
    for (const auto& ring : poly.rings) {
        nlohmann::json jr = nlohmann::json::array();
        for (const auto& p : ring)
            jr.push_back({p.x, p.y});
        rings.push_back(std::move(jr));
    }
    return {{"rings", std::move(rings)}};
}

double sig9(double value)
{
    if (!std::isfinite(value) || value == 0.0)
        return value;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", value);
    return std::strtod(buf, nullptr);
}

namespace {
    nlohmann::json number(double v)
    {
        if (std::isinf(v))
            return v > 0 ? "inf" : "-inf";
        return sig9(v);
    }

    nlohmann::json bound(const BoundPair& b)
    {
        return {{"lhs", number(b.lhs)}, {"rhs", number(b.rhs)}, {"holds", b.holds()}};
    }
} // namespace

nlohmann::json report_to_json(const VerificationReport& rep, const std::string& source, int resolution)
{
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : rep.checks)
        checks.push_back({{"name", c.name}, {"status", std::string(to_string(c.status))}, {"detail", c.detail}});

    return {
        {"source", source},
        {"resolution", resolution},
        {"window", {{"lo", number(rep.window.lo())}, {"hi", number(rep.window.hi())}}},
        {"grid", {{"samples_per_segment", rep.samples_per_segment}, {"segments", rep.segments}, {"samples", rep.samples}}},
        {"P_E", number(rep.P_E)},
        {"P_Fv", number(rep.P_Fv)},
        {"gamma_measure", number(rep.gamma_measure)},
        {"slack_main", number(rep.slack_main)},
        {"tv_bound", bound(rep.tv)},
        {"estim_bound", bound(rep.estim)},
        {"jensen_bound", bound(rep.jensen)},
        {"disconnected_flag", rep.disconnected},
        {"strict_hint", number(rep.strict_hint)},
        {"pointwise", {{"checked", rep.pointwise_checked}, {"failed", rep.pointwise_failed}}},
        {"tolerances", {{"bound_relative", number(rep.bound_tolerance)}, {"gamma", number(rep.gamma_tolerance)}}},
        {"checks", checks},
        {"violation", rep.has_violation()},
        {"finding", rep.has_finding()},
        {"notes", rep.notes},
    };
}

void write_file_atomic(const std::string& path, const std::string& content)
{
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error(ErrorKind::Io, "cannot write '" + path + "'");
        out << content;
        out.flush();
        if (!out)
            throw Error(ErrorKind::Io, "short write to '" + path + "'");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw Error(ErrorKind::Io, "cannot move output into '" + path + "'");
    }
}

} // namespace sphcap
