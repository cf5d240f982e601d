#include "tdual/tools/scenarios.hpp"

namespace tdual::tools {

Context::Context(std::string scenario, RunOptions opts) : opts_(std::move(opts)), random_(opts_.seed) {
    report_.scenario = std::move(scenario);
}

ChartFile Context::load(const std::string& file) const { return load_chart(opts_.scenarios_dir / file); }

std::vector<Point> Context::points(const BundleChart& ch) const { return ch.sample(sampling()); }

void Context::check(const std::string& name, const std::string& anchor, double residual, double tol,
                    const std::string& notes) {
    const double t = opts_.tol.value_or(tol);
    report_.records.push_back({name, anchor, residual, t, residual <= t, notes, opts_.seed});
}

void Context::check_true(const std::string& name, const std::string& anchor, bool ok, const std::string& notes) {
    report_.records.push_back({name, anchor, ok ? 0.0 : 1.0, 0.0, ok, notes, opts_.seed});
}

void Context::guard(const std::string& name, const std::string& anchor, const std::function<void()>& body) {
    try {
        body();
    } catch (const std::exception& e) {
        report_.records.push_back({name, anchor, INFINITY, 0.0, false, std::string("exception: ") + e.what(), opts_.seed});
    }
}

const std::vector<ScenarioInfo>& scenarios() {
    static const std::vector<ScenarioInfo> all = {
        {"s3-hopf", "Hopf fibration S^3 with H = 0 and its dual (S^2 x S^1, sigma ^ dth~)", run_s3_hopf},
        {"s3-selfdual", "S^3 = SU(2) with H = th ^ sigma is self-dual", run_s3_selfdual},
        {"s2-annulus", "symplectic S^2 dualizes to a complex annulus", run_s2_annulus},
        {"hopf-surface", "Hopf surface with a1 != a2: generically symplectic dual, type jump at elliptic fibers",
         run_hopf_surface},
        {"gibbons-hawking", "harmonic V, db1 = *dV and the dual Gibbons-Hawking metric", run_gibbons_hawking},
        {"buscher-random", "transport of generalized metrics versus the closed-form Buscher rules",
         run_buscher_random},
        {"reduction-suite", "double reduction, pointwise reduction and the Fourier-Mukai criterion",
         run_reduction_suite},
        {"clifford-axioms", "Clifford relations and Mukai pairing invariance", run_clifford_axioms},
        {"intertwining", "d_H~ tau = tau d_H over the Hopf pair and a mixed rank-two pair", run_intertwining},
        {"courant-iso", "phi is orthogonal, bracket preserving and compatible with tau", run_courant_iso},
        {"circle-formula", "phi exchanges f d/dth and g th structurally for F = -th ^ th~", run_circle_formula},
        {"type-change", "dual_type against the type of tau(rho) and the four-row type table", run_type_change},
        {"integrability", "tau preserves integrability and non-integrability", run_integrability},
        {"uk-transport", "tau maps U^k onto U^k", run_uk_transport},
    };
    return all;
}

const ScenarioInfo* find_scenario(const std::string& name) {
    for (const auto& s : scenarios())
        if (s.name == name) return &s;
    return nullptr;
}

Report run_scenario(const std::string& name, const RunOptions& opts) {
    const ScenarioInfo* info = find_scenario(name);
    if (!info) throw std::invalid_argument("unknown scenario '" + name + "'");
    Context c(name, opts);
    info->run(c);
    return std::move(c.report());
}

}  // namespace tdual::tools
