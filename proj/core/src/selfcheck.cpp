#include "subtrace/selfcheck.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "subtrace/tracker.hpp"

namespace subtrace {

namespace {

struct Instance {
    std::size_t n = 0;
    std::size_t l = 0;
    TrackerState state;
    CVector x;
};

Instance draw_instance(Rng& rng) {
    Instance inst;
    inst.n = 2 + static_cast<std::size_t>(rng.uniform() * 11.0);  // 2..12
    inst.l = 1 + static_cast<std::size_t>(rng.uniform() * static_cast<double>(inst.n - 1));
    inst.state.basis = orthonormalize(rng.cgaussian_matrix(inst.n, inst.l, 1.0));
    const double power = std::pow(10.0, -2.0 + 4.0 * rng.uniform());  // 1e-2 .. 1e2
    inst.x = rng.cgaussian_vector(inst.n, power);
    return inst;
}

TrackerConfig draw_config(Rng& rng, ClampPolicy policy) {
    TrackerConfig cfg;
    cfg.algo_class = rng.uniform() < 0.5 ? AlgoClass::DPM : AlgoClass::OJA;
    cfg.mode = rng.uniform() < 0.5 ? TrackingMode::Signal : TrackingMode::Noise;
    cfg.beta_nominal = std::pow(10.0, -2.0 + 3.0 * rng.uniform());  // 1e-2 .. 1e1
    cfg.clamp_policy = policy;
    return cfg;
}

using CheckFn = std::function<double(Rng&, std::string&)>;  // returns margin, < 0 passes

CheckResult run_check(const std::string& name, std::uint64_t seed, std::size_t instances,
                      const CheckFn& fn) {
    CheckResult res;
    res.name = name;
    res.passed = true;
    Rng rng(seed, std::hash<std::string>{}(name));
    const std::size_t max_attempts = instances * 4 + 64;
    for (std::size_t attempt = 0; attempt < max_attempts && res.instances < instances; ++attempt) {
        std::string detail;
        const double margin = fn(rng, detail);
        if (std::isnan(margin)) continue;  // degenerate draw, does not count
        res.worst = std::max(res.worst, margin);
        if (margin > 0.0 && res.passed) {
            res.passed = false;
            std::ostringstream os;
            os << "instance " << res.instances << ": " << detail << " (margin " << margin << ")";
            res.detail = os.str();
        }
        ++res.instances;
    }
    if (res.instances < instances) {
        res.passed = false;
        res.detail = "too many degenerate draws (" + std::to_string(res.instances) + " valid)";
    }
    return res;
}

constexpr double kDegenerate = std::numeric_limits<double>::quiet_NaN();

}  // namespace

std::vector<CheckResult> geometry_selfcheck(std::uint64_t seed, std::size_t instances) {
    std::vector<CheckResult> results;

    results.push_back(run_check(
        "orthonormality-preservation (eta <= 1e-20 after update)", seed, instances,
        [](Rng& rng, std::string& detail) {
            const Instance inst = draw_instance(rng);
            const TrackerConfig cfg = draw_config(rng, ClampPolicy::Generic);
            auto [next, rec] = update(inst.state, cfg, inst.x);
            if (rec.skipped) return kDegenerate;
            const CMatrix gram = hermitian_product(next.basis, next.basis);
            double eta = 0.0;
            for (std::size_t i = 0; i < gram.rows(); ++i)
                for (std::size_t j = 0; j < gram.cols(); ++j)
                    eta += std::norm(gram(i, j) - (i == j ? cplx(1.0) : cplx(0.0)));
            detail = "eta = " + std::to_string(eta);
            return eta - 1e-20;
        }));

    results.push_back(run_check(
        "com-invariance (span(T) == span(h, COM) <= 1e-14)", seed, instances,
        [](Rng& rng, std::string& detail) {
            const Instance inst = draw_instance(rng);
            const TrackerConfig cfg = draw_config(rng, ClampPolicy::Generic);
            auto [next, rec] = update(inst.state, cfg, inst.x);
            if (rec.skipped || rec.y.norm() < 1e-8 * inst.x.norm()) return kDegenerate;
            const double d = span_distance(rec.t_pre, rotated_update_basis(inst.state, rec, cfg));
            detail = "span distance = " + std::to_string(d);
            return d - 1e-14;
        }));

    results.push_back(run_check(
        "residual-orthogonality (||W^H p|| <= 1e-9 ||x||, x _|_ COM <= 1e-8 ||x||)", seed,
        instances, [](Rng& rng, std::string& detail) {
            const Instance inst = draw_instance(rng);
            const TrackerConfig cfg = draw_config(rng, ClampPolicy::Generic);
            auto [next, rec] = update(inst.state, cfg, inst.x);
            if (rec.skipped || rec.y.norm() < 1e-8 * inst.x.norm()) return kDegenerate;
            const double nx = inst.x.norm();
            double margin = hermitian_apply(inst.state.basis, rec.p).norm() - 1e-9 * nx;
            const CMatrix rotated = rotated_update_basis(inst.state, rec, cfg);
            for (std::size_t j = 1; j < rotated.cols(); ++j)
                margin = std::max(margin, std::abs(hdot(inst.x, rotated.col(j))) - 1e-8 * nx);
            detail = "orthogonality excess = " + std::to_string(margin);
            return margin;
        }));

    results.push_back(run_check(
        "companion-orthogonality (|x^H t| <= 1e-10 ||x|| ||y||)", seed, instances,
        [](Rng& rng, std::string& detail) {
            const Instance inst = draw_instance(rng);
            const CVector q = hermitian_apply(inst.state.basis, inst.x);
            const CVector y = apply(inst.state.basis, q);
            if (y.norm() < 1e-8 * inst.x.norm()) return kDegenerate;
            const CVector t = companion_t(inst.x, y);
            const double v = std::abs(hdot(inst.x, t));
            detail = "|x^H t| = " + std::to_string(v);
            return v - 1e-10 * inst.x.norm() * y.norm();
        }));

    results.push_back(run_check(
        "clamp-bound (beta_eff ||x||^2 <= 1 + 1e-12 under generic clamp)", seed, instances,
        [](Rng& rng, std::string& detail) {
            const Instance inst = draw_instance(rng);
            const TrackerConfig cfg = draw_config(rng, ClampPolicy::Generic);
            auto [next, rec] = update(inst.state, cfg, inst.x);
            if (rec.skipped) return kDegenerate;
            const double v = rec.beta_eff * inst.x.squared_norm();
            detail = "beta_eff ||x||^2 = " + std::to_string(v);
            return v - (1.0 + 1e-12);
        }));

    results.push_back(run_check(
        "no-overturn (DPM/noise clamped: angle(h,y) <= pi/2 - angle(x,y) + 1e-8)", seed, instances,
        [](Rng& rng, std::string& detail) {
            const Instance inst = draw_instance(rng);
            TrackerConfig cfg = draw_config(rng, ClampPolicy::Generic);
            cfg.algo_class = AlgoClass::DPM;
            cfg.mode = TrackingMode::Noise;
            auto [next, rec] = update(inst.state, cfg, inst.x);
            if (rec.skipped || rec.y.norm() < 1e-6 * inst.x.norm()) return kDegenerate;
            CVector h = (1.0 / rec.y.norm()) * rec.y;
            const double scale = rec.beta_eff * rec.q.norm();
            for (std::size_t i = 0; i < h.size(); ++i) h[i] -= scale * inst.x[i];
            const double gamma = angle_between(h, rec.y);
            const double theta = angle_between(inst.x, rec.y);
            detail = "gamma = " + std::to_string(gamma) + ", boundary = " +
                     std::to_string(std::numbers::pi / 2 - theta);
            return gamma - (std::numbers::pi / 2 - theta + 1e-8);
        }));

    results.push_back(run_check(
        "cone-containment (DPM/signal: h stays between x and y for any beta > 0)", seed, instances,
        [](Rng& rng, std::string& detail) {
            const Instance inst = draw_instance(rng);
            const double beta = std::pow(10.0, -3.0 + 6.0 * rng.uniform());  // 1e-3 .. 1e3
            const CVector q = hermitian_apply(inst.state.basis, inst.x);
            const CVector y = apply(inst.state.basis, q);
            if (y.norm() < 1e-6 * inst.x.norm()) return kDegenerate;
            CVector h = (1.0 / y.norm()) * y;
            const double scale = beta * q.norm();
            for (std::size_t i = 0; i < h.size(); ++i) h[i] += scale * inst.x[i];
            const double xy = angle_between(inst.x, y);
            const double margin = std::max(angle_between(h, inst.x) - xy - 1e-10,
                                           angle_between(h, y) - xy - 1e-10);
            detail = "cone excess = " + std::to_string(margin);
            return margin;
        }));

    results.push_back(run_check(
        "gamma-consistency (closed form vs measured angle <= 1e-9 rad)", seed, instances,
        [](Rng& rng, std::string& detail) {
            const Instance inst = draw_instance(rng);
            TrackerConfig cfg = draw_config(rng, ClampPolicy::Generic);
            cfg.algo_class = AlgoClass::DPM;
            cfg.mode = TrackingMode::Noise;
            auto [next, rec] = update(inst.state, cfg, inst.x);
            if (rec.skipped || rec.y.norm() < 1e-6 * inst.x.norm()) return kDegenerate;
            const double closed = gamma_angle(inst.x, rec.y, rec.beta_eff);
            CVector h = (1.0 / rec.y.norm()) * rec.y;
            const double scale = rec.beta_eff * rec.q.norm();
            for (std::size_t i = 0; i < h.size(); ++i) h[i] -= scale * inst.x[i];
            const double measured = angle_between(h, rec.y);
            const double err = std::abs(closed - measured);
            detail = "closed = " + std::to_string(closed) + ", measured = " +
                     std::to_string(measured);
            return err - 1e-9;
        }));

    return results;
}

}  // namespace subtrace
