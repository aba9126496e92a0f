#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "culab/mat2.hpp"
#include "culab/rng.hpp"
#include "culab/world/universe.hpp"

namespace culab {

// i.i.d. draws from the context-translated mixture of cond's concept.
inline std::vector<Vec2> sample_ground_truth(const ConceptUniverse& u, const Condition& cond,
                                             int n, std::uint64_t seed) {
    if (cond.concept_id == kNullConceptId)
        throw UsageError("sample_ground_truth: the null concept has no ground truth");
    const Concept& c = u.concepts[static_cast<std::size_t>(u.concept_index(cond.concept_id))];
    const Vec2 off = u.contexts[static_cast<std::size_t>(u.context_index(cond.context_id))].offset;
    std::vector<Mat2> chol;
    chol.reserve(c.mixture.size());
    for (const auto& m : c.mixture) chol.push_back(cholesky(m.cov));

    Rng rng(seed);
    std::vector<Vec2> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double uform = rng.u01();
        std::size_t k = 0;
        double acc = 0.0;
        for (; k + 1 < c.mixture.size(); ++k) {
            acc += c.mixture[k].weight;
            if (uform < acc) break;
        }
        const Vec2 g{rng.normal(), rng.normal()};
        const Vec2 x = c.mixture[k].mean + off + (chol[k] * g);
        out.push_back(x);
    }
    return out;
}

struct OracleResult {
    std::string best_concept;
    std::vector<double> concept_posterior;  // indexed like universe.concepts
    std::string best_context;
};

// Exact Bayes posterior over (concept, context) pairs under a uniform prior;
// concept and context calls are the marginals' argmaxes.
inline OracleResult oracle_classify(const ConceptUniverse& u, const Vec2& point) {
    const std::size_t nc = u.concepts.size();
    const std::size_t nx = u.contexts.size();
    std::vector<double> joint_log(nc * nx);
    double max_log = -1e300;
    for (std::size_t ci = 0; ci < nc; ++ci) {
        for (std::size_t xi = 0; xi < nx; ++xi) {
            const Vec2 off = u.contexts[xi].offset;
            double lse = -1e300;
            for (const auto& m : u.concepts[ci].mixture) {
                const double l =
                    std::log(m.weight) + log_gaussian_pdf(point, m.mean + off, m.cov);
                lse = (lse > l) ? lse + std::log1p(std::exp(l - lse))
                                : l + std::log1p(std::exp(lse - l));
            }
            joint_log[ci * nx + xi] = lse;
            max_log = std::max(max_log, lse);
        }
    }
    double total = 0.0;
    for (double& l : joint_log) {
        l = std::exp(l - max_log);
        total += l;
    }
    OracleResult r;
    r.concept_posterior.assign(nc, 0.0);
    std::vector<double> ctx_post(nx, 0.0);
    for (std::size_t ci = 0; ci < nc; ++ci)
        for (std::size_t xi = 0; xi < nx; ++xi) {
            const double p = joint_log[ci * nx + xi] / total;
            r.concept_posterior[ci] += p;
            ctx_post[xi] += p;
        }
    std::size_t best_c = 0, best_x = 0;
    for (std::size_t ci = 1; ci < nc; ++ci)
        if (r.concept_posterior[ci] > r.concept_posterior[best_c]) best_c = ci;
    for (std::size_t xi = 1; xi < nx; ++xi)
        if (ctx_post[xi] > ctx_post[best_x]) best_x = xi;
    r.best_concept = u.concepts[best_c].id;
    r.best_context = u.contexts[best_x].id;
    return r;
}

}  // namespace culab
