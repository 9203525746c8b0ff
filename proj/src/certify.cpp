#include "dispersion/certify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>
#include <vector>

#include "dispersion/error.hpp"
#include "dispersion/ratio.hpp"

namespace dispersion {

namespace {

// min over pairs of d_ij + r_i + r_j. Only pairs with d_ij <= delta + 2 r_max
// can attain it.
double pair_bound(const BallInstance& inst) {
    double r_max = 0.0;
    for (const Ball& b : inst.balls()) r_max = std::max(r_max, b.radius);
    const double delta = min_center_distance(inst);
    double best = kInf;
    for (const auto& [i, j] : pairs_within(inst, delta + 2.0 * r_max)) {
        best = std::min(best, distance(inst[i].center, inst[j].center) + inst[i].radius +
                                  inst[j].radius);
    }
    return best;
}

double lemma_three_disk_bound(const BallInstance& inst) {
    if (inst.size() < 3) return kInf;
    const NeighborInfo info = neighbor_info(inst);
    double s2 = kInf;
    for (const Neighbor& nb : info.second) s2 = std::min(s2, nb.distance);
    return ratio::f(s2);
}

}  // namespace

double opt_two_balls(const Ball& a, const Ball& b) {
    return distance(a.center, b.center) + a.radius + b.radius;
}

double opt_upper_disjoint(const BallInstance& inst) {
    if (inst.size() < 2) throw ValidationError("upper bound needs at least two balls");
    const ValidationReport report = validate(inst, true, false);
    if (!report.ok()) throw ValidationError("disjoint bound needs disjoint balls: " + report.to_string());
    return pair_bound(inst);
}

double opt_upper_unit(const BallInstance& inst) {
    if (inst.size() < 2) throw ValidationError("upper bound needs at least two balls");
    const ValidationReport report = validate(inst, false, true);
    if (!report.ok()) throw ValidationError("unit bound needs unit disks: " + report.to_string());
    return std::min(min_center_distance(inst) + 2.0, lemma_three_disk_bound(inst));
}

namespace {

struct Candidate {
    std::uint32_t index;
    double slack;  // min distance to the points placed so far
};

class GridSearch {
public:
    GridSearch(const BallInstance& inst, int k, const OracleOptions& options)
        : options_(options) {
        const std::size_t n = inst.size();
        const auto d = static_cast<std::size_t>(inst.dimension());

        // Place tightly coupled balls first: start from the closest pair, then
        // repeatedly add the ball closest to the chosen set.
        std::vector<bool> used(n, false);
        std::size_t a = 0;
        std::size_t b = 1;
        double best_d = kInf;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                const double dd = distance(inst[i].center, inst[j].center);
                if (dd < best_d) {
                    best_d = dd;
                    a = i;
                    b = j;
                }
            }
        order_ = {a, b};
        used[a] = used[b] = true;
        while (order_.size() < n) {
            std::size_t pick = 0;
            double pick_d = kInf;
            for (std::size_t i = 0; i < n; ++i) {
                if (used[i]) continue;
                for (std::size_t j : order_) {
                    const double dd = distance(inst[i].center, inst[j].center);
                    if (dd < pick_d) {
                        pick_d = dd;
                        pick = i;
                    }
                }
            }
            order_.push_back(pick);
            used[pick] = true;
        }

        grids_.resize(n);
        for (std::size_t slot = 0; slot < n; ++slot) {
            const Ball& ball = inst[order_[slot]];
            auto& grid = grids_[slot];
            if (ball.radius == 0.0 || k == 1) {
                grid.push_back(ball.center);
                continue;
            }
            std::vector<int> idx(d, 0);
            for (;;) {
                Point p(d);
                for (std::size_t c = 0; c < d; ++c) {
                    const double t = -1.0 + 2.0 * static_cast<double>(idx[c]) / (k - 1);
                    p[c] = ball.center[c] + ball.radius * t;
                }
                if (distance(p, ball.center) <= ball.radius * (1.0 + 1e-12)) {
                    grid.push_back(std::move(p));
                }
                std::size_t c = 0;
                while (c < d && ++idx[c] == k) idx[c++] = 0;
                if (c == d) break;
            }
            // Boundary points first: good solutions push outwards.
            std::stable_sort(grid.begin(), grid.end(), [&](const Point& u, const Point& v) {
                return distance(u, ball.center) > distance(v, ball.center);
            });
        }
    }

    double run() {
        const std::size_t n = grids_.size();
        seed_with_greedy();

        std::vector<std::vector<Candidate>> root(n);
        for (std::size_t s = 0; s < n; ++s) {
            for (std::uint32_t c = 0; c < grids_[s].size(); ++c) root[s].push_back({c, kInf});
        }

        unsigned threads = options_.threads ? options_.threads : std::thread::hardware_concurrency();
        threads = std::max(1u, std::min<unsigned>(threads, 16));
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                std::vector<Point> placed(n);
                for (;;) {
                    const std::size_t c = next.fetch_add(1);
                    if (c >= root[0].size() || failed_.load()) break;
                    placed[0] = grids_[0][root[0][c].index];
                    expand(1, kInf, placed, root, grids_[0][root[0][c].index]);
                }
            });
        }
        for (auto& th : pool) th.join();
        if (failed_) throw ValidationError("oracle node budget exceeded");
        return best_.load();
    }

    std::uint64_t nodes() const { return nodes_.load(); }

private:
    void offer(double value) {
        double cur = best_.load();
        while (value > cur && !best_.compare_exchange_weak(cur, value)) {
        }
    }

    void seed_with_greedy() {
        std::vector<Point> placed;
        double m = kInf;
        for (const auto& grid : grids_) {
            const Point* pick = nullptr;
            double pick_m = -1.0;
            for (const Point& p : grid) {
                double mm = kInf;
                for (const Point& q : placed) mm = std::min(mm, distance(p, q));
                if (mm > pick_m) {
                    pick_m = mm;
                    pick = &p;
                }
            }
            placed.push_back(*pick);
            m = std::min(m, pick_m);
        }
        offer(m);
    }

    // Places slot `depth` after the previous slots; `prev` was placed last.
    void expand(std::size_t depth, double m, std::vector<Point>& placed,
                const std::vector<std::vector<Candidate>>& domains, const Point& prev) {
        const std::size_t n = grids_.size();
        if (nodes_.fetch_add(1) > options_.node_budget) {
            failed_ = true;
            return;
        }
        if (failed_) return;
        // Filter the remaining domains against the newest point.
        std::vector<std::vector<Candidate>> next(n);
        double bound = m;
        for (std::size_t s = depth; s < n; ++s) {
            const double best = best_.load();
            double reach = -1.0;
            for (const Candidate& cand : domains[s]) {
                const double dd = std::min(cand.slack, distance(grids_[s][cand.index], prev));
                if (dd > best) {
                    next[s].push_back({cand.index, dd});
                    reach = std::max(reach, dd);
                }
            }
            if (next[s].empty()) return;
            bound = std::min(bound, reach);
        }
        if (depth == n) {
            offer(m);
            return;
        }
        if (bound <= best_.load()) return;
        for (const Candidate& cand : next[depth]) {
            const double mm = std::min(m, cand.slack);
            if (mm <= best_.load()) continue;
            placed[depth] = grids_[depth][cand.index];
            expand(depth + 1, mm, placed, next, placed[depth]);
            if (failed_) return;
        }
    }

    OracleOptions options_;
    std::vector<std::size_t> order_;
    std::vector<std::vector<Point>> grids_;
    std::atomic<double> best_{-kInf};
    std::atomic<std::uint64_t> nodes_{0};
    std::atomic<bool> failed_{false};
};

}  // namespace

OracleResult brute_force_opt(const BallInstance& inst, int k, const OracleOptions& options) {
    if (inst.size() > 5) throw ValidationError("grid oracle is limited to n <= 5");
    if (k < 2) throw ValidationError("grid oracle needs k >= 2");
    double r_max = 0.0;
    for (const Ball& b : inst.balls()) r_max = std::max(r_max, b.radius);
    OracleResult out;
    out.grid_error = r_max * std::sqrt(static_cast<double>(inst.dimension())) / (k - 1);
    if (inst.size() < 2) {
        out.best = kInf;
        return out;
    }
    GridSearch search(inst, k, options);
    out.best = search.run();
    out.nodes = search.nodes();
    return out;
}

Certificate certify(const Solution& sol, const BallInstance& inst, std::optional<double> opt_lower) {
    const ValidationReport report = validate_solution(inst, sol);
    if (!report.ok()) throw ValidationError("invalid solution: " + report.to_string());

    Certificate cert;
    cert.achieved = min_pairwise_distance(sol.points);
    cert.opt_lower = opt_lower;
    if (inst.size() < 2) {
        cert.opt_upper = kInf;
        cert.ratio_lower_bound = 1.0;
        cert.bound_provenance = "single ball";
        return cert;
    }
    cert.opt_upper = pair_bound(inst);
    cert.bound_provenance = "pair";
    if (is_unit(inst)) {
        const double three = lemma_three_disk_bound(inst);
        if (three < cert.opt_upper) {
            cert.opt_upper = three;
            cert.bound_provenance = "three-disk";
        }
    }
    cert.ratio_lower_bound = cert.opt_upper > 0.0 ? cert.achieved / cert.opt_upper : 1.0;
    return cert;
}

}  // namespace dispersion
