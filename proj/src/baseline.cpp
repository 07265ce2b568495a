#include "dsa/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dsa {

namespace {

constexpr double kFeasTol = 1e-9;
constexpr double kTieTol = 1e-12;

// Candidate optima in a fixed order so tie-breaking is reproducible:
// the disk point along the gradient, half-plane boundary / circle
// intersections, and pairwise half-plane boundary intersections. The
// min-norm mode additionally needs the origin and each boundary line's
// closest point to the origin.
std::vector<Vec2> enumerate_candidates(const AdmissibleSet& adm, Vec2 gradient,
                                       bool min_norm_candidates) {
    std::vector<Vec2> cs;
    const double radius = adm.action_bound;

    if (min_norm_candidates) cs.push_back({0.0, 0.0});
    const double gn = gradient.norm();
    if (gn > 0.0) cs.push_back(gradient * (radius / gn));

    const auto& hps = adm.halfplanes;
    for (std::size_t k = 0; k < hps.size(); ++k) {
        const Vec2 n = hps[k].normal;
        const double o = hps[k].offset;
        const Vec2 foot = n * o;  // closest point of the boundary line to 0
        if (min_norm_candidates) cs.push_back(foot);

        const double disc = radius * radius - o * o;
        if (disc >= 0.0) {
            const double t = std::sqrt(disc);
            const Vec2 d = n.perp();
            cs.push_back(foot + d * t);
            cs.push_back(foot - d * t);
        }
        for (std::size_t l = k + 1; l < hps.size(); ++l) {
            const Vec2 n2 = hps[l].normal;
            const double o2 = hps[l].offset;
            const double det = n.x * n2.y - n.y * n2.x;
            if (std::abs(det) < 1e-12) continue;
            cs.push_back({(o * n2.y - o2 * n.y) / det, (n.x * o2 - n2.x * o) / det});
        }
    }
    return cs;
}

// Strict "a is better than b". maximize=false minimizes the norm instead.
bool better(Vec2 a, Vec2 b, Vec2 gradient, bool maximize) {
    if (maximize) {
        const double fa = gradient.dot(a);
        const double fb = gradient.dot(b);
        if (fa > fb + kTieTol) return true;
        if (fb > fa + kTieTol) return false;
    }
    const double na = a.norm_sq();
    const double nb = b.norm_sq();
    if (na < nb - kTieTol) return true;
    if (nb < na - kTieTol) return false;
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
}

struct BestFeasible {
    bool found = false;
    Vec2 point;
};

BestFeasible best_feasible(const AdmissibleSet& adm, Vec2 gradient, bool maximize) {
    BestFeasible best;
    for (Vec2 u : enumerate_candidates(adm, gradient, !maximize)) {
        if (!adm.contains(u, kFeasTol)) continue;
        if (!best.found || better(u, best.point, gradient, maximize)) {
            best.found = true;
            best.point = u;
        }
    }
    return best;
}

AdmissibleSet shifted(const AdmissibleSet& adm, double slack) {
    AdmissibleSet out = adm;
    for (auto& hp : out.halfplanes) hp.offset += slack;
    return out;
}

std::vector<int> active_constraints(const AdmissibleSet& adm, Vec2 u) {
    std::vector<int> out;
    for (int k = 0; k < static_cast<int>(adm.halfplanes.size()); ++k) {
        const auto& hp = adm.halfplanes[k];
        if (hp.normal.dot(u) >= hp.offset - 1e-9) out.push_back(k);
    }
    return out;
}

}  // namespace

BcObjective build_objective(const PairwiseCbf& cbf, const AgentState& self,
                            std::span<const AgentState> neighbor_states) {
    BcObjective obj;
    for (const auto& other : neighbor_states) {
        const double dist = (self.position - other.position).norm();
        if (dist <= cbf.d_min + kDomainEps)
            throw std::domain_error("build_objective: neighbor inside CBF domain boundary");
        const auto lie = lie_decomposition(cbf, self, other);
        const double h = eval_h(cbf, self, other);
        const double w = 1.0 / std::max(h, kWeightEps);
        obj.gradient += lie.coeff_i * w;
        obj.constant += lie.drift * w;
    }
    return obj;
}

LpSolution solve_bc(const BcObjective& objective, const AdmissibleSet& admissible) {
    const Vec2 g = objective.gradient;
    const bool maximize = g.norm_sq() > 0.0;

    if (auto best = best_feasible(admissible, g, maximize); best.found) {
        return {best.point,
                maximize ? LpStatus::Optimal : LpStatus::FeasibleFallback,
                active_constraints(admissible, best.point)};
    }

    // Numerically empty intersection: find the smallest uniform slack that
    // makes the set non-empty, then the min-norm point of the relaxed set.
    double hi = 0.0;
    for (const auto& hp : admissible.halfplanes) hi = std::max(hi, -hp.offset);
    hi += 1e-9;
    double lo = 0.0;
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (best_feasible(shifted(admissible, mid), {0, 0}, false).found)
            hi = mid;
        else
            lo = mid;
    }
    const auto relaxed = shifted(admissible, hi);
    const auto best = best_feasible(relaxed, {0, 0}, false);
    // hi was chosen so the relaxed set contains u = 0 at worst.
    return {best.point, LpStatus::InfeasibleFallback,
            active_constraints(relaxed, best.point)};
}

}  // namespace dsa
