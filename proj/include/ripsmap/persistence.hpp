#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include "errors.hpp"
#include "io.hpp"
#include "rips.hpp"

namespace ripsmap {

constexpr double kInfiniteDeath = std::numeric_limits<double>::infinity();

// Z/2 boundary matrix in filtration order. Column j lists the filtration
// positions of the facets of simplex j, ascending; vertex columns are empty.
struct BoundaryMatrix {
    std::vector<std::vector<std::int32_t>> columns;
    std::vector<std::int32_t> dims;

    std::size_t size() const { return columns.size(); }
};

namespace detail {

// Vertex tuples hashed FNV-style; used to locate facet positions.
struct VertexKeyHash {
    std::size_t operator()(const std::vector<std::int32_t>& v) const {
        std::size_t h = 1469598103934665603ULL;
        for (const std::int32_t x : v) {
            h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(x));
            h *= 1099511628211ULL;
        }
        return h;
    }
};

}  // namespace detail

inline BoundaryMatrix boundary_matrix(const Filtration& filtration) {
    const std::size_t m = filtration.simplices.size();
    BoundaryMatrix matrix;
    matrix.columns.resize(m);
    matrix.dims.resize(m);

    // positions grouped by dimension so the facet lookup table only ever
    // holds one dimension layer at a time
    int top_dim = 0;
    for (std::size_t j = 0; j < m; ++j) {
        matrix.dims[j] = static_cast<std::int32_t>(filtration.simplices[j].dim());
        top_dim = std::max(top_dim, filtration.simplices[j].dim());
    }
    std::vector<std::vector<std::int32_t>> by_dim(static_cast<std::size_t>(top_dim) + 1);
    for (std::size_t j = 0; j < m; ++j)
        by_dim[static_cast<std::size_t>(matrix.dims[j])].push_back(
            static_cast<std::int32_t>(j));

    std::unordered_map<std::vector<std::int32_t>, std::int32_t, detail::VertexKeyHash>
        face_position;
    for (int d = 1; d <= top_dim; ++d) {
        face_position.clear();
        for (const std::int32_t pos : by_dim[static_cast<std::size_t>(d - 1)])
            face_position.emplace(
                filtration.simplices[static_cast<std::size_t>(pos)].vertices, pos);
        std::vector<std::int32_t> facet;
        for (const std::int32_t pos : by_dim[static_cast<std::size_t>(d)]) {
            const auto& vertices =
                filtration.simplices[static_cast<std::size_t>(pos)].vertices;
            auto& column = matrix.columns[static_cast<std::size_t>(pos)];
            column.reserve(vertices.size());
            for (std::size_t omit = 0; omit < vertices.size(); ++omit) {
                facet.clear();
                for (std::size_t i = 0; i < vertices.size(); ++i)
                    if (i != omit) facet.push_back(vertices[i]);
                const auto it = face_position.find(facet);
                if (it == face_position.end())
                    throw AlgorithmError("missing-face: filtration is not face-closed");
                if (it->second >= pos)
                    throw AlgorithmError("missing-face: face does not precede coface");
                column.push_back(it->second);
            }
            std::sort(column.begin(), column.end());
        }
    }
    return matrix;
}

enum class ReductionStrategy { standard, twist };

// Outcome of the column reduction: the reduced columns plus the pairing.
// partner[i] == j > i means position j kills the class created at i;
// partner[i] == -1 means the class created at i never dies.
struct Reduction {
    std::vector<std::vector<std::int32_t>> columns;
    std::vector<std::int32_t> partner;
};

// Left-to-right column reduction over Z/2: while a column shares its lowest
// nonzero row with an earlier reduced column, add that column into it. The
// twist schedule processes dimensions top-down and clears the column of every
// paired birth position, which skips work without changing the pairing.
inline Reduction reduce(const BoundaryMatrix& matrix,
                        ReductionStrategy strategy = ReductionStrategy::twist) {
    const std::size_t m = matrix.size();
    Reduction red;
    red.columns = matrix.columns;
    red.partner.assign(m, -1);

    std::vector<std::int32_t> low_owner(m, -1);
    std::vector<char> cleared(m, 0);

    std::vector<std::size_t> order(m);
    if (strategy == ReductionStrategy::standard) {
        for (std::size_t j = 0; j < m; ++j) order[j] = j;
    } else {
        int top_dim = 0;
        for (const std::int32_t d : matrix.dims) top_dim = std::max(top_dim, static_cast<int>(d));
        std::size_t at = 0;
        for (int d = top_dim; d >= 0; --d)
            for (std::size_t j = 0; j < m; ++j)
                if (matrix.dims[j] == d) order[at++] = j;
    }

    std::vector<std::int32_t> scratch;
    for (const std::size_t j : order) {
        auto& column = red.columns[j];
        if (cleared[j]) {
            column.clear();
            continue;
        }
        while (!column.empty()) {
            const std::int32_t low = column.back();
            const std::int32_t owner = low_owner[static_cast<std::size_t>(low)];
            if (owner < 0) break;
            const auto& other = red.columns[static_cast<std::size_t>(owner)];
            scratch.clear();
            std::set_symmetric_difference(column.begin(), column.end(), other.begin(),
                                          other.end(), std::back_inserter(scratch));
            column.swap(scratch);
        }
        if (!column.empty()) {
            const std::int32_t low = column.back();
            low_owner[static_cast<std::size_t>(low)] = static_cast<std::int32_t>(j);
            red.partner[static_cast<std::size_t>(low)] = static_cast<std::int32_t>(j);
            red.partner[j] = low;
            if (strategy == ReductionStrategy::twist)
                cleared[static_cast<std::size_t>(low)] = 1;
        }
    }
    return red;
}

// One birth/death interval of a homology class. Ephemeral pairs have
// death == birth exactly; pairs of dimension == max_dim have no simplices
// above them to kill their classes and are flagged unreliable.
struct PersistencePair {
    int dimension = 0;
    double birth = 0.0;
    double death = kInfiniteDeath;
    bool ephemeral = false;
    bool unreliable = false;
};

struct PersistenceDiagram {
    std::vector<PersistencePair> pairs;
    int max_dim = 0;
    std::int32_t n_points = 0;
};

inline PersistenceDiagram persistence_diagram(const Reduction& reduction,
                                              const Filtration& filtration) {
    const std::size_t m = filtration.simplices.size();
    if (reduction.partner.size() != m)
        throw InvalidArgument("reduction does not match filtration");
    PersistenceDiagram diagram;
    diagram.max_dim = filtration.max_dim;
    diagram.n_points = filtration.n_points;
    for (std::size_t i = 0; i < m; ++i) {
        const std::int32_t j = reduction.partner[i];
        if (j >= 0 && static_cast<std::size_t>(j) < i) continue;  // i is a killer
        PersistencePair pair;
        pair.dimension = filtration.simplices[i].dim();
        pair.birth = filtration.simplices[i].birth;
        pair.death = j < 0 ? kInfiniteDeath
                           : filtration.simplices[static_cast<std::size_t>(j)].birth;
        pair.ephemeral = pair.death == pair.birth;
        pair.unreliable = pair.dimension == filtration.max_dim;
        diagram.pairs.push_back(pair);
    }
    std::sort(diagram.pairs.begin(), diagram.pairs.end(),
              [](const PersistencePair& a, const PersistencePair& b) {
                  if (a.dimension != b.dimension) return a.dimension < b.dimension;
                  if (a.birth != b.birth) return a.birth < b.birth;
                  return a.death < b.death;
              });
    return diagram;
}

// Convenience wrapper for the full pipeline on one distance matrix.
inline PersistenceDiagram rips_persistence(const DistanceMatrix& dist, int max_dim,
                                           double max_eps,
                                           std::size_t budget = kDefaultSimplexBudget) {
    const Filtration filtration = build_rips(dist, max_dim, max_eps, budget);
    const BoundaryMatrix matrix = boundary_matrix(filtration);
    const Reduction red = reduce(matrix);
    return persistence_diagram(red, filtration);
}

// Betti numbers at scale eps: pairs alive on [birth, death) with
// birth <= eps < death. The top dimension is suppressed unless requested.
inline std::vector<std::int64_t> betti_numbers(const PersistenceDiagram& diagram,
                                               double eps,
                                               bool include_unreliable = false) {
    if (eps < 0.0) throw InvalidArgument("eps must be nonnegative");
    std::vector<std::int64_t> betti(static_cast<std::size_t>(diagram.max_dim) + 1, 0);
    for (const auto& pair : diagram.pairs) {
        if (pair.unreliable && !include_unreliable) continue;
        if (pair.birth <= eps && eps < pair.death)
            ++betti[static_cast<std::size_t>(pair.dimension)];
    }
    return betti;
}

// One bar of the barcode. Infinite bars keep death == +inf; render_death is
// the finite plotting stand-in (1.05 x the largest finite death).
struct Bar {
    int dimension = 0;
    int order = 0;  // stacking position within the dimension
    double birth = 0.0;
    double death = kInfiniteDeath;
    double render_death = 0.0;
};

// Bars per dimension, sorted by birth ascending then death descending, so the
// earliest-born bar stacks on top.
inline std::vector<Bar> barcode(const PersistenceDiagram& diagram,
                                bool include_ephemeral = false,
                                bool include_unreliable = false) {
    std::vector<Bar> bars;
    double max_finite = 0.0;
    double max_birth = 0.0;
    for (const auto& pair : diagram.pairs) {
        if (pair.ephemeral && !include_ephemeral) continue;
        if (pair.unreliable && !include_unreliable) continue;
        Bar bar;
        bar.dimension = pair.dimension;
        bar.birth = pair.birth;
        bar.death = pair.death;
        bars.push_back(bar);
        max_birth = std::max(max_birth, pair.birth);
        if (std::isfinite(pair.death)) max_finite = std::max(max_finite, pair.death);
    }
    std::sort(bars.begin(), bars.end(), [](const Bar& a, const Bar& b) {
        if (a.dimension != b.dimension) return a.dimension < b.dimension;
        if (a.birth != b.birth) return a.birth < b.birth;
        return a.death > b.death;
    });
    double cap = max_finite > 0.0 ? max_finite : (max_birth > 0.0 ? max_birth : 1.0);
    cap *= 1.05;
    int order = 0;
    int current_dim = -1;
    for (Bar& bar : bars) {
        if (bar.dimension != current_dim) {
            current_dim = bar.dimension;
            order = 0;
        }
        bar.order = order++;
        bar.render_death = std::isfinite(bar.death) ? bar.death : cap;
    }
    return bars;
}

inline std::string diagram_to_csv(const PersistenceDiagram& diagram,
                                  bool include_ephemeral = false,
                                  bool include_unreliable = false) {
    std::string out = "dimension,birth,death\n";
    for (const auto& pair : diagram.pairs) {
        if (pair.ephemeral && !include_ephemeral) continue;
        if (pair.unreliable && !include_unreliable) continue;
        out += std::to_string(pair.dimension);
        out += ',';
        out += format_double(pair.birth);
        out += ',';
        out += format_double(pair.death);
        out += '\n';
    }
    return out;
}

inline std::string barcode_to_csv(const std::vector<Bar>& bars) {
    std::string out = "dimension,order,birth,death\n";
    for (const Bar& bar : bars) {
        out += std::to_string(bar.dimension);
        out += ',';
        out += std::to_string(bar.order);
        out += ',';
        out += format_double(bar.birth);
        out += ',';
        out += format_double(bar.death);
        out += '\n';
    }
    return out;
}

}  // namespace ripsmap
