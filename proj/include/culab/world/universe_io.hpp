#pragma once

#include <filesystem>
#include <fstream>

#include "json.hpp"

#include "culab/errors.hpp"
#include "culab/world/universe.hpp"

namespace culab {

// Universe <-> JSON. Every field that defines the experiment's ground truth
// is explicit, so any run can be reproduced from the file alone.
inline nlohmann::ordered_json universe_to_json(const ConceptUniverse& u) {
    nlohmann::ordered_json j;
    j["seed"] = u.seed;
    j["concepts"] = nlohmann::ordered_json::array();
    for (const auto& c : u.concepts) {
        nlohmann::ordered_json jc;
        jc["id"] = c.id;
        jc["mixture"] = nlohmann::ordered_json::array();
        for (const auto& m : c.mixture) {
            nlohmann::ordered_json jm;
            jm["weight"] = m.weight;
            jm["mean"] = {m.mean[0], m.mean[1]};
            jm["cov"] = {{m.cov[0][0], m.cov[0][1]}, {m.cov[1][0], m.cov[1][1]}};
            jc["mixture"].push_back(jm);
        }
        jc["related"] = c.related;
        j["concepts"].push_back(jc);
    }
    j["contexts"] = nlohmann::ordered_json::array();
    for (const auto& c : u.contexts)
        j["contexts"].push_back({{"id", c.id}, {"offset", {c.offset[0], c.offset[1]}}});
    j["forget_schedule"] = u.forget_schedule;
    j["fixed_map"] = u.fixed_map;
    return j;
}

inline ConceptUniverse universe_from_json(const nlohmann::json& j) {
    ConceptUniverse u;
    try {
        u.seed = j.at("seed").get<std::uint64_t>();
        for (const auto& jc : j.at("concepts")) {
            Concept c;
            c.id = jc.at("id").get<std::string>();
            for (const auto& jm : jc.at("mixture")) {
                MixtureComponent m;
                m.weight = jm.at("weight").get<double>();
                m.mean = {jm.at("mean")[0].get<double>(), jm.at("mean")[1].get<double>()};
                m.cov = {{{jm.at("cov")[0][0].get<double>(), jm.at("cov")[0][1].get<double>()},
                          {jm.at("cov")[1][0].get<double>(), jm.at("cov")[1][1].get<double>()}}};
                c.mixture.push_back(m);
            }
            c.related = jc.at("related").get<std::vector<std::string>>();
            u.concepts.push_back(std::move(c));
        }
        for (const auto& jc : j.at("contexts")) {
            Context c;
            c.id = jc.at("id").get<std::string>();
            c.offset = {jc.at("offset")[0].get<double>(), jc.at("offset")[1].get<double>()};
            u.contexts.push_back(std::move(c));
        }
        u.forget_schedule = j.at("forget_schedule").get<std::vector<std::string>>();
        u.fixed_map = j.at("fixed_map").get<std::map<std::string, std::string>>();
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("universe json: ") + e.what());
    }
    u.validate();
    return u;
}

inline void save_universe(const ConceptUniverse& u, const std::filesystem::path& path) {
    std::ofstream f(path);
    if (!f) throw UsageError("cannot write universe file: " + path.string());
    f << universe_to_json(u).dump(2) << "\n";
}

inline ConceptUniverse load_universe(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw UsageError("cannot read universe file: " + path.string());
    nlohmann::json j;
    try {
        f >> j;
    } catch (const nlohmann::json::exception& e) {
        throw UsageError("universe json parse error in " + path.string() + ": " + e.what());
    }
    return universe_from_json(j);
}

}  // namespace culab
