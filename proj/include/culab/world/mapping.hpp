#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "culab/errors.hpp"
#include "culab/world/universe.hpp"

namespace culab {

// How forget conditions are redirected. Fixed and adaptive preserve the
// benign context and point at a retained concept; null redirects to the
// reserved empty-concept slot (the analogue of anchoring on an empty
// prompt).
enum class MappingKind { kFixedContext, kAdaptiveContext, kNull };

inline const char* to_string(MappingKind k) {
    switch (k) {
        case MappingKind::kFixedContext: return "fixed";
        case MappingKind::kAdaptiveContext: return "adaptive";
        case MappingKind::kNull: return "null";
    }
    return "?";
}

inline MappingKind mapping_kind_from_string(const std::string& s) {
    if (s == "fixed") return MappingKind::kFixedContext;
    if (s == "adaptive") return MappingKind::kAdaptiveContext;
    if (s == "null") return MappingKind::kNull;
    throw UsageError("unknown mapping kind: " + s);
}

// Redirect a forget condition to its surrogate; the context id is always
// preserved.
inline Condition map_condition(MappingKind kind, const Condition& cond,
                               const ConceptUniverse& u) {
    if (!u.in_forget_schedule(cond.concept_id))
        throw UsageError("map_condition: " + cond.concept_id + " is not a forget concept");
    switch (kind) {
        case MappingKind::kFixedContext: {
            const auto it = u.fixed_map.find(cond.concept_id);
            if (it == u.fixed_map.end())
                throw UsageError("map_condition: fixed_map has no entry for " + cond.concept_id);
            return make_condition(u, it->second, cond.context_id);
        }
        case MappingKind::kAdaptiveContext: {
            // nearest retained concept by mixture-mean distance, excluding
            // everything ever scheduled for forgetting
            const Concept& fc =
                u.concepts[static_cast<std::size_t>(u.concept_index(cond.concept_id))];
            const Vec2 fm = fc.mixture_mean();
            std::string best;
            double best_d = 0.0;
            for (const auto& o : u.concepts) {
                if (u.in_forget_schedule(o.id)) continue;
                const double d = norm(fm - o.mixture_mean());
                if (best.empty() || d < best_d) {
                    best = o.id;
                    best_d = d;
                }
            }
            if (best.empty()) throw UsageError("map_condition: no retained concept available");
            return make_condition(u, best, cond.context_id);
        }
        case MappingKind::kNull:
            return make_condition(u, kNullConceptId, cond.context_id);
    }
    throw UsageError("map_condition: bad kind");
}

struct PromptSetConfig {
    int forget_per_context = 10;  // |D_forget| = contexts * this
    int retain_base_rep = 3;      // related concepts get twice this
};

// One step's condition sets. forget and map are aligned pairs.
struct PromptSets {
    std::vector<Condition> forget;
    std::vector<Condition> map;
    std::vector<Condition> retain;
};

// Assemble (D_forget, D_map, D_retain) for step_i (1-based). The retain set
// spans every retained concept across every context, with the step target's
// retained related concepts repeated twice as often.
inline PromptSets build_prompt_sets(const ConceptUniverse& u, int step_i, MappingKind kind,
                                    const PromptSetConfig& cfg = {}) {
    if (step_i < 1 || step_i > static_cast<int>(u.forget_schedule.size()))
        throw UsageError("build_prompt_sets: step index out of range");
    const std::string target = u.forget_schedule[static_cast<std::size_t>(step_i - 1)];
    const Concept& tc = u.concepts[static_cast<std::size_t>(u.concept_index(target))];

    PromptSets out;
    for (const auto& ctx : u.contexts) {
        for (int r = 0; r < cfg.forget_per_context; ++r) {
            Condition f = make_condition(u, target, ctx.id);
            out.map.push_back(map_condition(kind, f, u));
            out.forget.push_back(std::move(f));
        }
    }

    for (const auto& ctx : u.contexts) {
        for (const auto& id : u.retained_concepts()) {
            const bool related =
                std::find(tc.related.begin(), tc.related.end(), id) != tc.related.end();
            const int reps = related ? 2 * cfg.retain_base_rep : cfg.retain_base_rep;
            for (int r = 0; r < reps; ++r) out.retain.push_back(make_condition(u, id, ctx.id));
        }
    }
    return out;
}

}  // namespace culab
