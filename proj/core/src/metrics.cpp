#include "critsamp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "critsamp/errors.hpp"
#include "critsamp/io.hpp"

namespace critsamp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Finite points after closing essential classes at the common cap.
std::vector<DiagramPoint> capped_points(const PersistenceDiagram& d,
                                        double cap) {
    std::vector<DiagramPoint> out;
    out.reserve(d.points.size());
    for (DiagramPoint p : d.points) {
        if (std::isinf(p.death)) p.death = cap;
        if (p.death > p.birth) out.push_back(p);
    }
    return out;
}

double sup_norm(const DiagramPoint& a, const DiagramPoint& b) {
    return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

double diagonal_cost(const DiagramPoint& p) { return (p.death - p.birth) / 2.0; }

struct MatchingProblem {
    std::vector<DiagramPoint> left, right;
    bool swapped = false;  // arguments were reordered for symmetry
    std::vector<std::vector<double>> cost;  // costs raised to the q-th power
};

// The cost matrix is built from a canonical argument order so that
// wasserstein(a, b) and wasserstein(b, a) run the exact same floating
// computation (symmetry holds bit for bit).
MatchingProblem build_problem(const PersistenceDiagram& a,
                              const PersistenceDiagram& b, double q) {
    if (a.dim != b.dim)
        throw ValidationError("diagram dimension mismatch");
    if (!(q >= 1.0)) throw ValidationError("Wasserstein q must be >= 1");

    double cap = std::min(a.cap, b.cap);
    MatchingProblem prob;
    prob.left = capped_points(a, cap);
    prob.right = capped_points(b, cap);
    if (std::lexicographical_compare(prob.right.begin(), prob.right.end(),
                                     prob.left.begin(), prob.left.end())) {
        std::swap(prob.left, prob.right);
        prob.swapped = true;
    }

    const std::size_t na = prob.left.size(), nb = prob.right.size();
    const std::size_t n = na + nb;
    prob.cost.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double base;
            if (i < na && j < nb)
                base = sup_norm(prob.left[i], prob.right[j]);
            else if (i < na)
                base = diagonal_cost(prob.left[i]);
            else if (j < nb)
                base = diagonal_cost(prob.right[j]);
            else
                base = 0.0;
            prob.cost[i][j] = q == 1.0 ? base : std::pow(base, q);
        }
    return prob;
}

}  // namespace

double solve_assignment(const std::vector<std::vector<double>>& cost,
                        std::vector<int>* match_out) {
    const int n = static_cast<int>(cost.size());
    if (n == 0) {
        if (match_out) match_out->clear();
        return 0.0;
    }
    for (const auto& row : cost)
        if (static_cast<int>(row.size()) != n)
            throw ValidationError("assignment matrix must be square");

    // Shortest augmenting paths with potentials (exact optimum).
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, kInf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            int i0 = p[j0], j1 = -1;
            double delta = kInf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }

    if (match_out) match_out->assign(n, -1);
    double total = 0.0;
    for (int j = 1; j <= n; ++j) {
        int row = p[j] - 1;
        if (match_out) (*match_out)[row] = j - 1;
        total += cost[row][j - 1];
    }
    return total;
}

double wasserstein(const PersistenceDiagram& a, const PersistenceDiagram& b,
                   double q) {
    MatchingProblem prob = build_problem(a, b, q);
    if (prob.cost.empty()) return 0.0;
    double total = solve_assignment(prob.cost, nullptr);
    return q == 1.0 ? total : std::pow(total, 1.0 / q);
}

WassersteinMatching wasserstein_matching(const PersistenceDiagram& a,
                                         const PersistenceDiagram& b,
                                         double q) {
    MatchingProblem prob = build_problem(a, b, q);
    WassersteinMatching out;
    if (prob.cost.empty()) return out;

    std::vector<int> match;
    double total = solve_assignment(prob.cost, &match);
    out.value = q == 1.0 ? total : std::pow(total, 1.0 / q);

    const int na = static_cast<int>(prob.left.size());
    const int nb = static_cast<int>(prob.right.size());
    for (int i = 0; i < static_cast<int>(match.size()); ++i) {
        int j = match[i];
        MatchedPair pair;
        pair.left = i < na ? i : -1;
        pair.right = j < nb ? j : -1;
        if (pair.left < 0 && pair.right < 0) continue;
        pair.cost = prob.cost[i][j];
        if (prob.swapped) std::swap(pair.left, pair.right);
        out.pairs.push_back(pair);
    }
    return out;
}

std::string matching_to_json(const WassersteinMatching& m) {
    std::ostringstream out;
    out << "{\"value\":" << format_double(m.value) << ",\"pairs\":[";
    for (std::size_t i = 0; i < m.pairs.size(); ++i) {
        if (i) out << ',';
        out << "{\"left\":" << m.pairs[i].left
            << ",\"right\":" << m.pairs[i].right
            << ",\"cost\":" << format_double(m.pairs[i].cost) << '}';
    }
    out << "]}";
    return std::move(out).str();
}

double cloud_distance(const std::vector<PersistenceDiagram>& a,
                      const std::vector<PersistenceDiagram>& b, double q) {
    auto find_dim = [](const std::vector<PersistenceDiagram>& list,
                       int dim) -> const PersistenceDiagram* {
        for (const auto& d : list)
            if (d.dim == dim) return &d;
        return nullptr;
    };
    double best = 0.0;
    for (int k = 0; k <= 2; ++k) {
        const PersistenceDiagram* da = find_dim(a, k);
        const PersistenceDiagram* db = find_dim(b, k);
        if (!da || !db)
            throw ValidationError("cloud_distance needs diagrams for k=0,1,2");
        best = std::max(best, wasserstein(*da, *db, q));
    }
    return best;
}

}  // namespace critsamp
