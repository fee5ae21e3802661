#pragma once

// Trajectory documents (JSON) and CSV export. Doubles are written in shortest
// round-trip form, so a loop read back compares equal to the one written.

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "model.hpp"
#include "verify.hpp"

namespace choreo {

inline constexpr const char* kTrajectoryFormat = "choreo-trajectory/1";

struct Trajectory {
    FullLoop loop;
    std::optional<OmegaSequence> omega;
    nlohmann::json metadata = nlohmann::json::object();
    std::optional<nlohmann::json> certificate;
};

inline nlohmann::json to_json(const Certificate& c) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& k : c.checks)
        checks.push_back({{"name", k.name}, {"passed", k.passed}, {"value", k.value}, {"threshold", k.threshold},
                          {"detail", k.detail}});
    return {{"n", c.n}, {"omega", c.omega}, {"passed", c.passed()}, {"checks", checks}};
}

inline Certificate certificate_from_json(const nlohmann::json& j) {
    Certificate c;
    c.n = j.at("n").get<int>();
    c.omega = j.at("omega").get<std::string>();
    for (const auto& k : j.at("checks"))
        c.checks.push_back({k.at("name").get<std::string>(), k.at("passed").get<bool>(), k.at("value").get<double>(),
                            k.at("threshold").get<double>(), k.value("detail", std::string{})});
    return c;
}

inline nlohmann::json to_json(const Thresholds& t) {
    return {{"equivariance", t.equivariance},
            {"boundary", t.boundary},
            {"collision", t.collision},
            {"el_residual", t.el_residual},
            {"region", t.region},
            {"intersection_distance", t.intersection_distance},
            {"intersection_z", t.intersection_z},
            {"spatial", t.spatial},
            {"endpoint_velocity_steps", t.endpoint_velocity_steps}};
}

inline nlohmann::json to_json(const Trajectory& t) {
    const FullLoop& L = t.loop;
    nlohmann::json pos = nlohmann::json::array();
    for (const Vec3& p : L.positions()) pos.push_back({p.x, p.y, p.z});
    const auto m = L.mass_system().masses();
    nlohmann::json j = {{"format", kTrajectoryFormat},
                        {"n", L.body_count() / 2},
                        {"omega", t.omega ? nlohmann::json(t.omega->to_string()) : nlohmann::json(nullptr)},
                        {"period", L.period()},
                        {"sample_count", L.sample_count()},
                        {"body_count", L.body_count()},
                        {"masses", std::vector<double>(m.begin(), m.end())},
                        {"positions", std::move(pos)},
                        {"metadata", t.metadata}};
    if (t.certificate) j["certificate"] = *t.certificate;
    return j;
}

inline Trajectory trajectory_from_json(const nlohmann::json& j) {
    try {
        if (j.value("format", std::string{}) != kTrajectoryFormat)
            throw Error("trajectory: unknown format tag '" + j.value("format", std::string{}) + "'");
        const int S = j.at("sample_count").get<int>();
        const int N = j.at("body_count").get<int>();
        const auto& pos = j.at("positions");
        if (pos.size() != static_cast<std::size_t>(S) * static_cast<std::size_t>(N))
            throw Error("trajectory: positions must hold sample_count x body_count triples");
        std::vector<Vec3> q;
        q.reserve(pos.size());
        for (const auto& p : pos) {
            if (p.size() != 3) throw Error("trajectory: every position must be a triple");
            q.push_back({p[0].get<double>(), p[1].get<double>(), p[2].get<double>()});
        }
        MassSystem masses(j.at("masses").get<std::vector<double>>());
        if (masses.body_count() != N) throw Error("trajectory: masses disagree with body_count");
        Trajectory t{FullLoop(std::move(masses), j.at("period").get<double>(), S, std::move(q)), std::nullopt, nlohmann::json::object(), std::nullopt};
        if (!j.at("omega").is_null()) t.omega = OmegaSequence::parse(j.at("n").get<int>(), j.at("omega").get<std::string>());
        t.metadata = j.value("metadata", nlohmann::json::object());
        if (j.contains("certificate")) t.certificate = j.at("certificate");
        return t;
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("trajectory: malformed document: ") + e.what());
    }
}

inline void write_trajectory(const std::string& path, const Trajectory& t) {
    std::ofstream f(path);
    if (!f) throw Error("cannot open " + path + " for writing");
    f << to_json(t).dump(1) << "\n";
    if (!f) throw Error("failed writing " + path);
}

inline Trajectory read_trajectory(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open " + path);
    nlohmann::json j;
    try {
        f >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(path + ": not a JSON document: " + e.what());
    }
    return trajectory_from_json(j);
}

/// One row per (time, body): time,body,x,y,z.
inline void write_csv(std::ostream& os, const FullLoop& loop) {
    os << "time,body,x,y,z\n";
    os.precision(17);
    for (int s = 0; s < loop.sample_count(); ++s)
        for (int i = 0; i < loop.body_count(); ++i) {
            const Vec3& p = loop.at(s, i);
            os << loop.time(s) << ',' << i << ',' << p.x << ',' << p.y << ',' << p.z << '\n';
        }
}

inline void write_csv(const std::string& path, const FullLoop& loop) {
    std::ofstream f(path);
    if (!f) throw Error("cannot open " + path + " for writing");
    write_csv(f, loop);
}

}  // namespace choreo
