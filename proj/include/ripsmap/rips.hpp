#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "errors.hpp"
#include "io.hpp"
#include "point_cloud.hpp"

namespace ripsmap {

// A simplex together with the smallest scale at which it is present. The
// birth equals the diameter (largest pairwise distance of the vertices), so
// vertices are born at 0 and every simplex appears no earlier than its faces.
struct Simplex {
    std::vector<std::int32_t> vertices;  // strictly increasing
    double birth = 0.0;

    int dim() const { return static_cast<int>(vertices.size()) - 1; }
};

// The flattened nested family of complexes: all simplices of dimension
// <= max_dim and diameter <= max_eps, in the canonical total order
// (birth, dimension, lexicographic vertices). Every face of a simplex
// precedes it in the list.
struct Filtration {
    std::vector<Simplex> simplices;
    int max_dim = 0;
    double max_eps = 0.0;
    std::int32_t n_points = 0;
};

constexpr std::size_t kDefaultSimplexBudget = 50'000'000;

namespace detail {

inline void rips_expand(const DistanceMatrix& dist, int max_dim, double max_eps,
                        std::size_t budget, std::vector<std::int32_t>& current,
                        double birth, const std::vector<std::int32_t>& lower_nbrs,
                        std::vector<Simplex>& out) {
    for (std::size_t t = 0; t < lower_nbrs.size(); ++t) {
        const std::int32_t u = lower_nbrs[t];
        double extended = birth;
        for (const std::int32_t w : current)
            extended = std::max(extended, dist(u, w));
        current.push_back(u);
        if (out.size() >= budget)
            throw BudgetExceeded("simplex budget exceeded at " +
                                     std::to_string(out.size()) +
                                     " simplices (cap " + std::to_string(budget) + ")",
                                 out.size());
        // current holds [top, u1, u2, ...] with u1 < u2 < ... < top
        Simplex s;
        s.vertices.assign(current.begin() + 1, current.end());
        s.vertices.push_back(current.front());
        s.birth = extended;
        out.push_back(std::move(s));
        if (static_cast<int>(current.size()) - 1 < max_dim) {
            // neighbors usable for further extension: common lower neighbors
            std::vector<std::int32_t> next;
            for (std::size_t r = t + 1; r < lower_nbrs.size(); ++r)
                if (dist(lower_nbrs[r], u) <= max_eps) next.push_back(lower_nbrs[r]);
            rips_expand(dist, max_dim, max_eps, budget, current, extended, next, out);
        }
        current.pop_back();
    }
}

}  // namespace detail

// Incremental lower-neighborhood expansion: every vertex is grown into all
// simplices whose largest vertex it is, restricting candidate extensions to
// common lower neighbors. Throws BudgetExceeded once the simplex count
// passes `budget`.
inline Filtration build_rips(const DistanceMatrix& dist, int max_dim, double max_eps,
                             std::size_t budget = kDefaultSimplexBudget) {
    if (max_dim < 0) throw InvalidArgument("max_dim must be nonnegative");
    if (!(max_eps > 0.0)) throw InvalidArgument("max_eps must be positive");
    const std::int32_t n = static_cast<std::int32_t>(dist.size());

    Filtration filtration;
    filtration.max_dim = max_dim;
    filtration.max_eps = max_eps;
    filtration.n_points = n;

    std::vector<std::int32_t> current;
    for (std::int32_t v = 0; v < n; ++v) {
        if (filtration.simplices.size() >= budget)
            throw BudgetExceeded("simplex budget exceeded at " +
                                     std::to_string(filtration.simplices.size()) +
                                     " simplices (cap " + std::to_string(budget) + ")",
                                 filtration.simplices.size());
        Simplex vertex;
        vertex.vertices = {v};
        vertex.birth = 0.0;
        filtration.simplices.push_back(std::move(vertex));
        if (max_dim < 1) continue;
        std::vector<std::int32_t> lower;
        for (std::int32_t u = 0; u < v; ++u)
            if (dist(u, v) <= max_eps) lower.push_back(u);
        current = {v};
        detail::rips_expand(dist, max_dim, max_eps, budget, current, 0.0, lower,
                            filtration.simplices);
    }

    std::sort(filtration.simplices.begin(), filtration.simplices.end(),
              [](const Simplex& a, const Simplex& b) {
                  if (a.birth != b.birth) return a.birth < b.birth;
                  if (a.vertices.size() != b.vertices.size())
                      return a.vertices.size() < b.vertices.size();
                  return a.vertices < b.vertices;
              });
    return filtration;
}

// Debug export: one line per simplex, "birth dim v0 v1 ...".
inline std::string filtration_to_text(const Filtration& filtration) {
    std::string out;
    for (const Simplex& s : filtration.simplices) {
        out += format_double(s.birth);
        out += ' ';
        out += std::to_string(s.dim());
        for (const std::int32_t v : s.vertices) {
            out += ' ';
            out += std::to_string(v);
        }
        out += '\n';
    }
    return out;
}

}  // namespace ripsmap
