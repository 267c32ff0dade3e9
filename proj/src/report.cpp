#include "abel/report.hpp"

#include <sstream>

namespace abel::report {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

} // namespace

json to_json(const NumericsConfig& cfg) {
    return json{{"ode_rel_tol", cfg.ode_rel_tol},
                {"ode_abs_tol", cfg.ode_abs_tol},
                {"blowup_threshold", cfg.blowup_threshold},
                {"quad_tol", cfg.quad_tol},
                {"grid_points", cfg.grid_points},
                {"newton_tol", cfg.newton_tol},
                {"newton_max_iter", cfg.newton_max_iter},
                {"double_cycle_tol", cfg.double_cycle_tol},
                {"boundary_margin", cfg.boundary_margin},
                {"origin_exclusion", cfg.origin_exclusion},
                {"window_hi", cfg.window_hi}};
}

json to_json(const BasisFamily& basis) {
    json j{{"family", basis.name()}, {"T", basis.period()}};
    switch (basis.kind()) {
    case BasisKind::MonomialTrinomial:
        j["m"] = {basis.m0(), basis.m1(), basis.m2()};
        break;
    case BasisKind::ShiftedPower:
        j["alpha"] = basis.alpha();
        j["beta"] = basis.beta();
        break;
    default: break;
    }
    return j;
}

json to_json(const AbelEquation& eq) {
    json j = to_json(eq.basis);
    j["lambda"] = eq.lambda;
    j["mu"] = eq.mu;
    return j;
}

json to_json(const EctCertificate& cert) {
    json j{{"ok", cert.ok}, {"min_abs_wronskian", cert.min_abs_wronskian}};
    switch (cert.strategy) {
    case CertStrategy::WronskianScan: j["strategy"] = "wronskian-scan"; break;
    case CertStrategy::AnalyticTrig: j["strategy"] = "analytic-trig"; break;
    case CertStrategy::AnalyticShiftedPower: j["strategy"] = "analytic-shifted-power"; break;
    case CertStrategy::AnalyticMonomial: j["strategy"] = "analytic-monomial"; break;
    }
    if (cert.failure_point) j["failure_point"] = *cert.failure_point;
    return j;
}

json to_json(const ClassificationResult& r) {
    json j{{"verdict", to_string(r.verdict)},
           {"in_L1", r.in_L1},
           {"in_LH", r.in_LH},
           {"flipped_for_H", r.flipped_for_H}};
    if (r.d1)
        j["d1"] = {{"lambda", r.d1->lambda},
                   {"mu", r.d1->mu},
                   {"sign", to_string(r.d1->sign)},
                   {"certified_min", r.d1->certified_min}};
    if (r.d2) j["d2"] = {{"sign", to_string(r.d2->sign)}, {"min_abs", r.d2->min_abs}};
    return j;
}

json to_json(const LyapunovReport& r) {
    json j{{"I", r.I},
           {"Imat", r.Imat},
           {"V2", r.V2},
           {"origin_multiplicity", to_string(r.origin_multiplicity)}};
    if (r.V3) j["V3"] = *r.V3;
    if (r.V4) j["V4"] = *r.V4;
    if (r.origin_multiplicity != OriginClass::CenterSuspect)
        j["origin_stability"] = to_string(r.origin_stability);
    return j;
}

json to_json(const LimitCycle& c) {
    json j{{"x0", c.x0},
           {"dP", c.dP},
           {"stability", to_string(c.stability)},
           {"multiplicity", c.multiplicity},
           {"residual", c.residual}};
    if (c.d2P) j["d2P"] = *c.d2P;
    return j;
}

json to_json(const CycleCensus& c) {
    json pos = json::array(), neg = json::array(), gaps = json::array();
    for (const LimitCycle& lc : c.positive) pos.push_back(to_json(lc));
    for (const LimitCycle& lc : c.negative) neg.push_back(to_json(lc));
    for (const auto& g : c.escape_gaps) gaps.push_back({g.first, g.second});
    return json{{"positive", pos},
                {"negative", neg},
                {"origin", to_json(c.origin)},
                {"total_with_multiplicity", c.total_with_multiplicity},
                {"bound_satisfied", c.bound_satisfied},
                {"center_suspect", c.center_suspect},
                {"escape_gaps", gaps}};
}

json to_json(const SweepResult& r) {
    json samples = json::array();
    for (const SweepSample& s : r.samples)
        samples.push_back(json{{"param", s.param},
                               {"census", to_json(s.census)},
                               {"V2", s.V2},
                               {"V3", s.V3}});
    json branches = json::array();
    for (const Branch& b : r.branches) {
        json pts = json::array();
        for (const BranchPoint& p : b.points)
            pts.push_back(json{{"param", p.param},
                               {"x0", p.x0},
                               {"stability", to_string(p.stability)},
                               {"multiplicity", p.multiplicity},
                               {"dP", p.dP}});
        branches.push_back(json{{"id", b.id}, {"points", pts}});
    }
    json events = json::array();
    for (const BifurcationEvent& e : r.events)
        events.push_back(json{{"kind", to_string(e.kind)},
                              {"param_lo", e.param_lo},
                              {"param_hi", e.param_hi},
                              {"x0", e.x0}});
    return json{{"parameter", to_string(r.parameter)},
                {"samples", samples},
                {"branches", branches},
                {"events", events}};
}

json to_json(const SharpnessResult& r) {
    return json{{"eta_star", r.eta_star},
                {"V4_at_star", r.V4_at_star},
                {"eps_lambda", r.eps_lambda},
                {"eps_mu", r.eps_mu},
                {"perturbed", to_json(r.perturbed)},
                {"census", to_json(r.census)}};
}

std::string census_csv(const CycleCensus& census) {
    std::ostringstream os;
    os << "x0,dP,stability,multiplicity,residual\n";
    for (const LimitCycle& c : census.all())
        os << fmt(c.x0) << ',' << fmt(c.dP) << ',' << to_string(c.stability) << ','
           << c.multiplicity << ',' << fmt(c.residual) << '\n';
    return os.str();
}

std::string sweep_csv(const SweepResult& sweep) {
    std::ostringstream os;
    os << "param,x0,stability,multiplicity,branch_id,event\n";
    for (const Branch& b : sweep.branches)
        for (const BranchPoint& p : b.points)
            os << fmt(p.param) << ',' << fmt(p.x0) << ',' << to_string(p.stability) << ','
               << p.multiplicity << ',' << b.id << ",\n";
    for (const BifurcationEvent& e : sweep.events)
        os << fmt(0.5 * (e.param_lo + e.param_hi)) << ',' << fmt(e.x0) << ",,,,"
           << to_string(e.kind) << '\n';
    return os.str();
}

std::string classification_text(const AbelEquation& eq, const ClassificationResult& r) {
    std::ostringstream os;
    os << "equation: " << eq.basis.name() << "\n";
    os << "verdict: " << to_string(r.verdict) << "\n";
    if (r.d1)
        os << "D.1 witness: (" << fmt(r.d1->lambda) << ", " << fmt(r.d1->mu) << ") sign "
           << to_string(r.d1->sign) << " certified_min " << fmt(r.d1->certified_min) << "\n";
    if (r.d2)
        os << "D.2 sign: " << to_string(r.d2->sign) << " min_abs " << fmt(r.d2->min_abs)
           << "\n";
    os << "in_L1: " << (r.in_L1 ? "true" : "false")
       << "  in_LH: " << (r.in_LH ? "true" : "false")
       << "  flipped_for_H: " << (r.flipped_for_H ? "true" : "false") << "\n";
    return os.str();
}

std::string lyapunov_text(const AbelEquation& eq, const LyapunovReport& r) {
    std::ostringstream os;
    os << "equation: " << eq.basis.name() << "\n";
    os << "I = (" << fmt(r.I[0]) << ", " << fmt(r.I[1]) << ", " << fmt(r.I[2]) << ")\n";
    os << "V2 = " << fmt(r.V2);
    if (r.V3) os << "  V3 = " << fmt(*r.V3);
    if (r.V4) os << "  V4 = " << fmt(*r.V4);
    os << "\norigin multiplicity: " << to_string(r.origin_multiplicity);
    if (r.origin_multiplicity != OriginClass::CenterSuspect)
        os << "  stability: " << to_string(r.origin_stability);
    os << "\n";
    return os.str();
}

std::string census_text(const AbelEquation& eq, const CycleCensus& c) {
    std::ostringstream os;
    os << "equation: " << eq.basis.name() << "\n";
    os << "non-zero cycles (total multiplicity " << c.total_with_multiplicity << "):\n";
    for (const LimitCycle& lc : c.all())
        os << "  x0 = " << fmt(lc.x0) << "  dP = " << fmt(lc.dP) << "  "
           << to_string(lc.stability) << "  multiplicity " << lc.multiplicity << "\n";
    if (c.all().empty()) os << "  none\n";
    if (c.center_suspect) os << "center-suspect: displacement vanishes on the window\n";
    for (const auto& g : c.escape_gaps)
        os << "escape gap: [" << fmt(g.first) << ", " << fmt(g.second) << "]\n";
    os << "origin multiplicity: " << to_string(c.origin.origin_multiplicity) << "\n";
    os << "bound satisfied: " << (c.bound_satisfied ? "true" : "false") << "\n";
    return os.str();
}

} // namespace abel::report
