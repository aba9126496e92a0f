#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "culab/errors.hpp"
#include "culab/mat2.hpp"

namespace culab {

// Conditions may carry this instead of a real concept id. The null concept
// has no ground-truth distribution and occupies the reserved all-zero slot of
// the concept embedding block.
inline constexpr const char* kNullConceptId = "null";

struct MixtureComponent {
    double weight = 1.0;
    Vec2 mean{0.0, 0.0};
    Mat2 cov = mat2_identity();
};

struct Concept {
    std::string id;
    std::vector<MixtureComponent> mixture;
    std::vector<std::string> related;  // frozen at universe construction

    Vec2 mixture_mean() const {
        Vec2 m{0.0, 0.0};
        for (const auto& c : mixture) m = m + c.weight * c.mean;
        return m;
    }
};

struct Context {
    std::string id;
    Vec2 offset{0.0, 0.0};
};

// The synthetic ground truth standing in for prompts and images: concepts are
// Gaussian mixtures in the plane, contexts translate them, the related graph
// and forget schedule drive the sequential protocol.
struct ConceptUniverse {
    std::vector<Concept> concepts;
    std::vector<Context> contexts;
    std::vector<std::string> forget_schedule;
    std::map<std::string, std::string> fixed_map;
    std::uint64_t seed = 0;

    int concept_index(const std::string& id) const {
        for (std::size_t i = 0; i < concepts.size(); ++i)
            if (concepts[i].id == id) return static_cast<int>(i);
        throw UsageError("unknown concept id: " + id);
    }

    int context_index(const std::string& id) const {
        for (std::size_t i = 0; i < contexts.size(); ++i)
            if (contexts[i].id == id) return static_cast<int>(i);
        throw UsageError("unknown context id: " + id);
    }

    bool has_concept(const std::string& id) const {
        for (const auto& c : concepts)
            if (c.id == id) return true;
        return false;
    }

    bool in_forget_schedule(const std::string& id) const {
        return std::find(forget_schedule.begin(), forget_schedule.end(), id) !=
               forget_schedule.end();
    }

    // Embedding layout: one-hot concept block of size concepts.size() + 1
    // (the trailing slot is reserved for the null concept, which encodes as
    // an all-zero block), then a one-hot context block.
    int embedding_dim() const {
        return static_cast<int>(concepts.size()) + 1 + static_cast<int>(contexts.size());
    }

    // C_r: concepts never scheduled for forgetting.
    std::vector<std::string> retained_concepts() const {
        std::vector<std::string> out;
        for (const auto& c : concepts)
            if (!in_forget_schedule(c.id)) out.push_back(c.id);
        return out;
    }

    // Related concepts of the step-i target that are themselves retained.
    std::vector<std::string> eval_related_set(int upto_step) const {
        std::set<std::string> acc;
        for (int i = 0; i < upto_step && i < static_cast<int>(forget_schedule.size()); ++i)
            for (const auto& r : concepts[static_cast<std::size_t>(
                                              concept_index(forget_schedule[static_cast<std::size_t>(i)]))]
                     .related)
                if (!in_forget_schedule(r)) acc.insert(r);
        return {acc.begin(), acc.end()};
    }

    // Fixed control group: retained concepts unrelated to every scheduled
    // target.
    std::vector<std::string> general_set() const {
        std::set<std::string> related_any;
        for (const auto& f : forget_schedule)
            for (const auto& r : concepts[static_cast<std::size_t>(concept_index(f))].related)
                related_any.insert(r);
        std::vector<std::string> out;
        for (const auto& id : retained_concepts())
            if (!related_any.count(id)) out.push_back(id);
        return out;
    }

    void validate() const {
        if (concepts.empty() || contexts.empty())
            throw UsageError("universe: needs at least one concept and context");
        std::set<std::string> ids;
        for (const auto& c : concepts) {
            if (c.id == kNullConceptId) throw UsageError("universe: concept id 'null' is reserved");
            if (!ids.insert(c.id).second) throw UsageError("universe: duplicate concept id " + c.id);
            if (c.mixture.empty()) throw UsageError("universe: empty mixture for " + c.id);
            double wsum = 0.0;
            for (const auto& m : c.mixture) {
                if (m.weight <= 0.0) throw UsageError("universe: non-positive mixture weight");
                if (!is_symmetric(m.cov) || det(m.cov) <= 0.0 || m.cov[0][0] <= 0.0)
                    throw UsageError("universe: covariance not SPD for " + c.id);
                wsum += m.weight;
            }
            if (std::abs(wsum - 1.0) > 1e-9)
                throw UsageError("universe: mixture weights must sum to 1 for " + c.id);
            for (const auto& r : c.related) {
                if (r == c.id) throw UsageError("universe: concept related to itself: " + c.id);
                if (!has_concept(r)) throw UsageError("universe: unknown related id " + r);
            }
        }
        std::set<std::string> ctx_ids;
        for (const auto& c : contexts)
            if (!ctx_ids.insert(c.id).second)
                throw UsageError("universe: duplicate context id " + c.id);
        std::set<std::string> sched;
        for (const auto& f : forget_schedule) {
            concept_index(f);
            if (!sched.insert(f).second)
                throw UsageError("universe: concept scheduled twice: " + f);
        }
        for (const auto& [from, to] : fixed_map) {
            concept_index(from);
            concept_index(to);
            if (from == to) throw UsageError("universe: fixed_map maps " + from + " to itself");
            if (in_forget_schedule(to))
                throw UsageError("universe: fixed_map target " + to + " is in the forget schedule");
        }
    }
};

// A single prompt stand-in: (concept, context) with its one-hot embedding.
struct Condition {
    std::string concept_id;
    std::string context_id;
    std::vector<double> embedding;
};

inline Condition make_condition(const ConceptUniverse& u, const std::string& concept_id,
                                const std::string& context_id) {
    Condition c;
    c.concept_id = concept_id;
    c.context_id = context_id;
    c.embedding.assign(static_cast<std::size_t>(u.embedding_dim()), 0.0);
    if (concept_id != kNullConceptId)
        c.embedding[static_cast<std::size_t>(u.concept_index(concept_id))] = 1.0;
    c.embedding[u.concepts.size() + 1 + static_cast<std::size_t>(u.context_index(context_id))] =
        1.0;
    return c;
}

namespace detail {

inline void add_concept(ConceptUniverse& u, const std::string& id, Vec2 mean, bool two_comp,
                        Vec2 split_dir, double split, double var) {
    Concept c;
    c.id = id;
    if (two_comp) {
        const double n = norm(split_dir);
        const Vec2 dir{split_dir[0] / n, split_dir[1] / n};
        c.mixture.push_back({0.5, mean + split * dir, mat2_identity(var)});
        c.mixture.push_back({0.5, mean - split * dir, mat2_identity(var)});
    } else {
        c.mixture.push_back({1.0, mean, mat2_identity(var)});
    }
    u.concepts.push_back(std::move(c));
}

}  // namespace detail

// The built-in 12-concept layout: 10 concepts on a radius-8 ring plus 2 near
// the center, 4 contexts. Positions were tuned so that every
// (component, context) cell keeps >= 1.8 units of clearance from every other
// concept's cells under all context-offset differences; with per-component
// std 0.3 the exact Bayes classifier is then effectively error-free.
inline ConceptUniverse default_universe(std::uint64_t seed, int forget_count = 5) {
    if (forget_count < 1 || forget_count > 10)
        throw UsageError("default_universe: forget_count must be in [1, 10]");
    ConceptUniverse u;
    u.seed = seed;
    const double var = 0.09;  // std 0.3
    const double split = 0.2;
    const struct {
        const char* id;
        Vec2 mean;
        bool two;
    } layout[] = {
        {"ring0", {+7.9993, +0.1091}, false}, {"ring1", {+6.3101, +4.9176}, true},
        {"ring2", {+4.8003, +6.3998}, false}, {"ring3", {-3.3549, +7.2626}, false},
        {"ring4", {-7.6916, +2.1997}, true},  {"ring5", {-6.1761, -5.0848}, false},
        {"ring6", {-4.5550, -6.5766}, false}, {"ring7", {-0.0003, -8.0000}, true},
        {"ring8", {+4.5483, -6.5812}, false}, {"ring9", {+6.1675, -5.0953}, false},
        {"hub0", {-0.0637, -1.4165}, true},   {"hub1", {-1.4720, +0.1104}, false},
    };
    for (const auto& e : layout) {
        Vec2 dir;
        if (std::string(e.id).starts_with("ring"))
            dir = {-e.mean[1], e.mean[0]};  // ring tangent
        else
            dir = {0.73, 0.68};  // perpendicular to the hub chord
        detail::add_concept(u, e.id, e.mean, e.two, dir, split, var);
    }
    u.contexts = {{"origin", {0.0, 0.0}},
                  {"east", {3.0, 0.0}},
                  {"north", {0.0, 3.0}},
                  {"west", {-3.0, 0.0}}};

    const std::vector<std::string> full_schedule = {"ring0", "ring3", "ring5", "ring7", "ring9",
                                                    "ring1", "ring4", "ring6", "ring8", "ring2"};
    u.forget_schedule.assign(full_schedule.begin(),
                             full_schedule.begin() + forget_count);

    // related graph: two nearest concepts by mixture-mean distance
    for (auto& c : u.concepts) {
        std::vector<std::pair<double, std::string>> d;
        for (const auto& o : u.concepts)
            if (o.id != c.id) d.emplace_back(norm(c.mixture_mean() - o.mixture_mean()), o.id);
        std::sort(d.begin(), d.end());
        c.related = {d[0].second, d[1].second};
    }

    // fixed surrogate: the second-nearest retained concept (the nearest is
    // what adaptive mapping picks, so the two strategies stay distinct)
    for (const auto& f : u.forget_schedule) {
        const Concept& fc = u.concepts[static_cast<std::size_t>(u.concept_index(f))];
        std::vector<std::pair<double, std::string>> d;
        for (const auto& o : u.concepts)
            if (!u.in_forget_schedule(o.id))
                d.emplace_back(norm(fc.mixture_mean() - o.mixture_mean()), o.id);
        if (d.empty()) throw UsageError("default_universe: no retained concepts left");
        std::sort(d.begin(), d.end());
        u.fixed_map[f] = d.size() > 1 ? d[1].second : d[0].second;
    }

    u.validate();
    return u;
}

}  // namespace culab
