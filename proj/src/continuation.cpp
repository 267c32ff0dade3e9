#include "abel/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "abel/detail/optim.hpp"

namespace abel {

namespace {

AbelEquation with_param(const AbelEquation& eq, SweepParam which, double value) {
    AbelEquation out = eq;
    if (which == SweepParam::Lambda0)
        out.lambda[0] = value;
    else
        out.mu[0] = value;
    return out;
}

struct OpenBranch {
    int index;         // into SweepResult::branches
    bool open = true;
};

double branch_slope(const Branch& b) {
    const std::size_t n = b.points.size();
    if (n < 2) return 0.0;
    const BranchPoint& p = b.points[n - 2];
    const BranchPoint& q = b.points[n - 1];
    if (q.param == p.param) return 0.0;
    return (q.x0 - p.x0) / (q.param - p.param);
}

} // namespace

LyapunovRaw lyapunov_raw(const AbelEquation& eq) {
    AbelEquation unit = eq;
    unit.lambda = {0.0, 0.0, 0.0};
    unit.mu = {0.0, 0.0, 0.0};
    NumericsConfig cfg;
    const LyapunovReport base = lyapunov_constants(unit, cfg);
    LyapunovRaw out{0.0, 0.0, 0.0};
    for (int i = 0; i < 3; ++i) {
        out.V2 += eq.mu[i] * base.I[i];
        out.V3 += eq.lambda[i] * base.I[i];
        for (int j = 0; j < 3; ++j) out.V4 += eq.lambda[i] * eq.mu[j] * base.Imat[i][j];
    }
    return out;
}

SweepResult sweep(const AbelEquation& eq, SweepParam param, double lo, double hi, int steps,
                  double x_lo, double x_hi, const NumericsConfig& cfg, bool refine_unmatched) {
    if (steps < 8) throw precondition_error("sweep needs at least 8 steps");
    if (!(hi > lo)) throw precondition_error("empty sweep range");

    SweepResult res;
    res.parameter = param;
    const double base_step = (hi - lo) / steps;
    const double min_step = base_step / 16.0; // four halving levels

    std::map<double, SweepSample> cache;
    auto sample_at = [&](double p) -> const SweepSample& {
        auto it = cache.find(p);
        if (it != cache.end()) return it->second;
        std::vector<double> seeds;
        if (!cache.empty()) {
            // Warm-start from the nearest computed sample.
            auto near = cache.lower_bound(p);
            if (near == cache.end()) --near;
            for (const LimitCycle& c : near->second.census.all()) seeds.push_back(c.x0);
        }
        const AbelEquation eq_p = with_param(eq, param, p);
        SweepSample s;
        s.param = p;
        s.census = find_cycles_seeded(eq_p, x_lo, x_hi, cfg, seeds);
        const LyapunovRaw raw = lyapunov_raw(eq_p);
        s.V2 = raw.V2;
        s.V3 = raw.V3;
        return cache.emplace(p, std::move(s)).first->second;
    };

    // Parameter worklist; midpoints are inserted when a hyperbolic branch
    // would otherwise be lost.
    std::vector<double> params(steps + 1);
    for (int k = 0; k <= steps; ++k) params[k] = lo + base_step * k;

    std::vector<OpenBranch> open;
    auto start_branch = [&](const BranchPoint& pt) {
        const int id = static_cast<int>(res.branches.size());
        Branch b;
        b.id = id;
        b.points.push_back(pt);
        res.branches.push_back(std::move(b));
        open.push_back({id, true});
    };

    // Seed branches from the first sample.
    {
        const SweepSample& s0 = sample_at(params.front());
        res.samples.push_back(s0);
        for (const LimitCycle& c : s0.census.all())
            start_branch({s0.param, c.x0, c.stability, c.multiplicity, c.dP});
    }

    std::size_t i = 1;
    while (i < params.size()) {
        const SweepSample& prev = res.samples.back();
        const double q = params[i];
        const SweepSample& next = sample_at(q);
        const double dp = q - prev.param;

        const std::vector<LimitCycle> cycles = next.census.all();
        std::vector<int> cycle_used(cycles.size(), 0);
        std::vector<int> matched(open.size(), -1);

        // Greedy nearest matching under the slope-scaled tolerance.
        struct Cand {
            double cost;
            std::size_t bi, ci;
        };
        std::vector<Cand> cands;
        for (std::size_t bi = 0; bi < open.size(); ++bi) {
            if (!open[bi].open) continue;
            const Branch& b = res.branches[open[bi].index];
            const BranchPoint& last = b.points.back();
            const double tol = 5.0 * std::abs(dp) * std::max(1.0, std::abs(branch_slope(b)));
            for (std::size_t ci = 0; ci < cycles.size(); ++ci) {
                if ((last.x0 > 0.0) != (cycles[ci].x0 > 0.0)) continue;
                // Hyperbolic stability cannot change without a semistable
                // point in between; forbid cross-links near folds.
                if (cycles[ci].multiplicity == 1 && last.multiplicity == 1 &&
                    cycles[ci].stability != last.stability)
                    continue;
                const double cost = std::abs(cycles[ci].x0 - last.x0);
                if (cost <= tol) cands.push_back({cost, bi, ci});
            }
        }
        std::sort(cands.begin(), cands.end(),
                  [](const Cand& u, const Cand& v) { return u.cost < v.cost; });
        for (const Cand& c : cands) {
            if (matched[c.bi] >= 0) continue;
            const int cap = cycles[c.ci].multiplicity; // a semistable point absorbs both
            if (cycle_used[c.ci] >= cap) continue;
            matched[c.bi] = static_cast<int>(c.ci);
            cycle_used[c.ci] += 1;
        }

        bool lost_hyperbolic = false;
        for (std::size_t bi = 0; bi < open.size(); ++bi) {
            if (!open[bi].open || matched[bi] >= 0) continue;
            const Branch& b = res.branches[open[bi].index];
            if (b.points.back().multiplicity == 1) lost_hyperbolic = true;
        }
        if (lost_hyperbolic && refine_unmatched && dp > min_step) {
            params.insert(params.begin() + static_cast<long>(i), prev.param + 0.5 * dp);
            continue;
        }

        // Commit: extend matched branches, close the rest, open new ones.
        std::vector<std::size_t> closed;
        for (std::size_t bi = 0; bi < open.size(); ++bi) {
            if (!open[bi].open) continue;
            if (matched[bi] >= 0) {
                const LimitCycle& c = cycles[static_cast<std::size_t>(matched[bi])];
                res.branches[open[bi].index].points.push_back(
                    {q, c.x0, c.stability, c.multiplicity, c.dP});
            } else {
                open[bi].open = false;
                closed.push_back(bi);
            }
        }

        // A closing stable/unstable pair is a fold; a lone branch ending
        // next to an escape gap is a boundary exit.
        for (std::size_t a = 0; a < closed.size(); ++a) {
            const Branch& ba = res.branches[open[closed[a]].index];
            bool paired = false;
            for (std::size_t b2 = a + 1; b2 < closed.size(); ++b2) {
                const Branch& bb = res.branches[open[closed[b2]].index];
                const BranchPoint& pa = ba.points.back();
                const BranchPoint& pb = bb.points.back();
                if ((pa.stability == Stability::Stable) != (pb.stability == Stability::Stable) &&
                    (pa.x0 > 0.0) == (pb.x0 > 0.0)) {
                    res.events.push_back({EventKind::Fold, prev.param, q,
                                          0.5 * (pa.x0 + pb.x0)});
                    closed.erase(closed.begin() + static_cast<long>(b2));
                    paired = true;
                    break;
                }
            }
            if (!paired) {
                const BranchPoint& pa = ba.points.back();
                bool near_gap = false;
                for (const auto& gap : next.census.escape_gaps)
                    if (pa.x0 >= gap.first - 0.1 * std::abs(gap.first) &&
                        pa.x0 <= gap.second + 0.1 * std::abs(gap.second))
                        near_gap = true;
                res.events.push_back({near_gap ? EventKind::EscapeBoundary : EventKind::Fold,
                                      prev.param, q, pa.x0});
            }
        }

        // Fresh cycles open branches; a simultaneous stable/unstable pair
        // away from the origin records the matching split event.
        std::vector<const LimitCycle*> born;
        for (std::size_t ci = 0; ci < cycles.size(); ++ci) {
            if (cycle_used[ci] == 0) {
                start_branch({q, cycles[ci].x0, cycles[ci].stability, cycles[ci].multiplicity,
                              cycles[ci].dP});
                born.push_back(&cycles[ci]);
            }
        }
        for (std::size_t a = 0; a < born.size(); ++a)
            for (std::size_t b2 = a + 1; b2 < born.size(); ++b2) {
                const bool opposite = (born[a]->stability == Stability::Stable) !=
                                      (born[b2]->stability == Stability::Stable);
                const double gap = std::abs(born[a]->x0 - born[b2]->x0);
                const double scale = std::max(std::abs(born[a]->x0), std::abs(born[b2]->x0));
                if (opposite && gap < 0.5 * scale)
                    res.events.push_back({EventKind::Fold, prev.param, q,
                                          0.5 * (born[a]->x0 + born[b2]->x0)});
            }

        // Semistable point in the sample: the fold is pinned at q itself.
        for (const LimitCycle& c : cycles)
            if (c.multiplicity == 2)
                res.events.push_back({EventKind::Fold, prev.param, q, c.x0});

        // Origin events: V2 or V3 crossing zero across the step.
        if ((prev.V2 < 0.0) != (next.V2 < 0.0) && std::abs(prev.V2 - next.V2) > 0.0)
            res.events.push_back({EventKind::HopfLikeAtOrigin, prev.param, q, 0.0});
        if ((prev.V3 < 0.0) != (next.V3 < 0.0) && std::abs(prev.V3 - next.V3) > 0.0)
            res.events.push_back({EventKind::HopfLikeAtOrigin, prev.param, q, 0.0});

        res.samples.push_back(next);
        ++i;
    }

    // One bifurcation can be observed several times (a semistable sample,
    // the paired branch closure one step later); same-kind events whose
    // brackets overlap or sit within one base step merge into one, keeping
    // the narrowest bracket's location estimate.
    std::sort(res.events.begin(), res.events.end(),
              [](const BifurcationEvent& u, const BifurcationEvent& v) {
                  if (u.kind != v.kind) return static_cast<int>(u.kind) < static_cast<int>(v.kind);
                  return u.param_lo < v.param_lo;
              });
    std::vector<BifurcationEvent> merged;
    for (const BifurcationEvent& e : res.events) {
        if (!merged.empty() && merged.back().kind == e.kind &&
            e.param_lo <= merged.back().param_hi + base_step) {
            BifurcationEvent& m = merged.back();
            const double width_old = m.param_hi - m.param_lo;
            const double width_new = e.param_hi - e.param_lo;
            if (width_new < width_old) m.x0 = e.x0;
            m.param_lo = std::min(m.param_lo, e.param_lo);
            m.param_hi = std::max(m.param_hi, e.param_hi);
        } else {
            merged.push_back(e);
        }
    }
    res.events = std::move(merged);
    std::sort(res.events.begin(), res.events.end(),
              [](const BifurcationEvent& u, const BifurcationEvent& v) {
                  if (u.param_lo != v.param_lo) return u.param_lo < v.param_lo;
                  return static_cast<int>(u.kind) < static_cast<int>(v.kind);
              });
    return res;
}

SharpnessResult sharpness_demo(const BasisFamily& family, const NumericsConfig& cfg) {
    if (family.kind() == BasisKind::MonomialTrinomial)
        throw precondition_error(
            "monomial-trinomial equations are handled through normalize_trinomial");

    AbelEquation probe_eq{family, {0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}};
    const LyapunovReport base = lyapunov_constants(probe_eq, cfg);
    const double I0 = base.I[0], I1 = base.I[1], I2 = base.I[2];
    if (!(I0 > 0.0)) throw precondition_error("sharpness construction needs I0 > 0");

    SharpnessResult out;
    out.eta_star = {I1, -I0, 0.0, I2, 0.0, -I0};
    out.star = AbelEquation{family, {I1, -I0, 0.0}, {I2, 0.0, -I0}};

    const LyapunovReport star = lyapunov_constants(out.star, cfg);
    if (star.origin_multiplicity != OriginClass::Multiplicity4 || !star.V4)
        throw search_failure("origin is not a multiplicity-four cycle at eta*");
    out.V4_at_star = *star.V4;
    const double s4 = out.V4_at_star > 0.0 ? 1.0 : -1.0;

    // Alternating Lyapunov signs: sign V3 = -s4, then sign V2 = +s4 with
    // |V2| a fraction of V3^2 / (4 |V4|) so the local quartic model has two
    // same-side roots; the split scheme (V2 against V4, no V3) is the
    // fallback.
    const double eps_min = 1e-8, eps_max = 1e-1;
    for (double eps_l = eps_max; eps_l >= eps_min; eps_l *= 0.5) {
        const double v3 = -s4 * eps_l * I0;
        for (double theta : {0.75, 0.5, 0.25, 0.9}) {
            const double v2_mag = theta * v3 * v3 / (4.0 * std::abs(out.V4_at_star));
            const double eps_m = v2_mag / I0;
            if (eps_m < eps_min || eps_m > eps_max) continue;
            AbelEquation pert = out.star;
            pert.lambda[0] += -s4 * eps_l;
            pert.mu[0] += s4 * eps_m;
            const CycleCensus census =
                find_cycles(pert, -cfg.window_hi, cfg.window_hi, cfg);
            if (census.total_with_multiplicity == 2 && census.positive.size() +
                census.negative.size() == 2 && !census.center_suspect) {
                out.eps_lambda = -s4 * eps_l;
                out.eps_mu = s4 * eps_m;
                out.perturbed = pert;
                out.census = census;
                return out;
            }
        }
    }
    for (double eps_m = eps_max; eps_m >= eps_min; eps_m *= 0.5) {
        AbelEquation pert = out.star;
        pert.mu[0] += -s4 * eps_m;
        const CycleCensus census = find_cycles(pert, -cfg.window_hi, cfg.window_hi, cfg);
        if (census.total_with_multiplicity == 2 &&
            census.positive.size() + census.negative.size() == 2 && !census.center_suspect) {
            out.eps_lambda = 0.0;
            out.eps_mu = -s4 * eps_m;
            out.perturbed = pert;
            out.census = census;
            return out;
        }
    }
    throw search_failure("no perturbation in [1e-8, 1e-1] produced exactly two cycles");
}

std::optional<FoldLocation> locate_fold(const AbelEquation& eq, SweepParam param, double p_lo,
                                        double p_hi, double x_lo, double x_hi,
                                        const NumericsConfig& cfg) {
    // Signed minimum of the displacement over the window; negative on the
    // two-cycle side of the fold, positive once the pair has vanished.
    auto min_d = [&](double p) -> std::optional<std::pair<double, double>> {
        const AbelEquation eqp = with_param(eq, param, p);
        const int n = 64;
        double best_x = x_lo, best_d = std::numeric_limits<double>::infinity();
        for (int i = 0; i <= n; ++i) {
            const double x = x_lo + (x_hi - x_lo) * i / n;
            const Displacement d = displacement(eqp, x, cfg);
            if (d.escaped) continue;
            if (d.value < best_d) {
                best_d = d.value;
                best_x = x;
            }
        }
        if (!std::isfinite(best_d)) return std::nullopt;
        const double cell = (x_hi - x_lo) / n;
        auto dv = [&](double x) {
            const Displacement d = displacement(eqp, x, cfg);
            return d.escaped ? std::numeric_limits<double>::infinity() : d.value;
        };
        const auto [xr, dr] = detail::golden_min(dv, std::max(x_lo, best_x - cell),
                                                 std::min(x_hi, best_x + cell), cell * 1e-10);
        return std::pair{xr, dr};
    };

    auto lo_eval = min_d(p_lo), hi_eval = min_d(p_hi);
    if (!lo_eval || !hi_eval) return std::nullopt;
    if ((lo_eval->second < 0.0) == (hi_eval->second < 0.0)) return std::nullopt;

    double a = p_lo, b = p_hi;
    double da = lo_eval->second;
    std::pair<double, double> last = *lo_eval;
    for (int it = 0; it < 60 && std::abs(b - a) > 1e-14 * std::max(1.0, std::abs(a)); ++it) {
        const double m = 0.5 * (a + b);
        const auto ev = min_d(m);
        if (!ev) return std::nullopt;
        last = *ev;
        if ((ev->second < 0.0) == (da < 0.0)) {
            a = m;
            da = ev->second;
        } else {
            b = m;
        }
    }
    const double p_fold = 0.5 * (a + b);
    return FoldLocation{p_fold, last.first, with_param(eq, param, p_fold)};
}

} // namespace abel
