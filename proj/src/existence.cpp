#include "invlab/existence.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "invlab/poisson.hpp"
#include "invlab/rng.hpp"

namespace invlab {

namespace {

struct CenterRange {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    bool empty() const { return lo > hi; }
};

/// Integer centers whose width-w interval stays inside (0,p).
CenterRange center_range(double p, double w) {
    CenterRange r;
    r.lo = static_cast<std::int64_t>(std::floor(w / 2.0)) + 1;
    r.hi = static_cast<std::int64_t>(std::ceil(p - w / 2.0)) - 1;
    return r;
}

/// J sorted values in [lo, hi] with consecutive gaps ≥ gap and total span
/// ≤ span_max. Stars-and-bars with a splitmix stream.
std::vector<std::int64_t> sorted_spaced(SplitMix64& rng, std::int64_t lo, std::int64_t hi,
                                        std::size_t J, std::int64_t gap,
                                        std::int64_t span_max) {
    std::int64_t span = std::min(hi - lo, span_max);
    std::int64_t slack = span - gap * static_cast<std::int64_t>(J - 1);
    std::vector<std::int64_t> draws(J);
    for (auto& d : draws) d = rng.range(0, slack);
    std::sort(draws.begin(), draws.end());
    std::int64_t shift = rng.range(0, (hi - lo) - (draws.back() + gap * static_cast<std::int64_t>(J - 1)));
    std::vector<std::int64_t> out(J);
    for (std::size_t i = 0; i < J; ++i)
        out[i] = lo + shift + draws[i] + gap * static_cast<std::int64_t>(i);
    return out;
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t J, std::size_t trial) {
    SplitMix64 g(seed ^ (static_cast<std::uint64_t>(J) * 0x9e3779b97f4a7c15ull) ^
                 (static_cast<std::uint64_t>(trial) * 0xbf58476d1ce4e5b9ull));
    return g.next();
}

}  // namespace

ExistenceResult solution_exists(const Interval& I1, const Interval& I2,
                                const PrimeModulus& pm) {
    const auto p = static_cast<double>(pm.p());
    if (!(I1.lo > 0.0 && I1.hi < p) || !(I2.lo > 0.0 && I2.hi < p))
        throw std::domain_error("solution_exists: intervals must be contained in (0,p)");
    ExistenceResult out;
    const bool enum_first = I1.int_count() < I2.int_count();
    const Interval& shorter = enum_first ? I1 : I2;
    const Interval& other = enum_first ? I2 : I1;
    for (std::int64_t v = shorter.first_int(); v <= shorter.last_int(); ++v) {
        auto w = static_cast<std::int64_t>(pm.inverse(static_cast<std::uint64_t>(v)));
        if (other.contains(static_cast<double>(w))) {
            out.exists = true;
            out.witness = enum_first ? std::make_pair(v, w) : std::make_pair(w, v);
            return out;
        }
    }
    return out;
}

double x_spacing(const IntervalFamily& fam) {
    if (fam.J() == 0) throw std::domain_error("x_spacing: family is empty");
    const auto p = static_cast<double>(fam.p);
    if (fam.J() == 1) return p / 2.0;
    // centers are integers, so the wrapped distance is exact in int64
    const auto ip = static_cast<std::int64_t>(fam.p);
    std::int64_t best = ip;
    for (std::size_t j = 0; j < fam.J(); ++j)
        for (std::size_t k = j + 1; k < fam.J(); ++k) {
            std::int64_t d = std::llabs(fam.centers[j].first - fam.centers[k].first) % ip;
            best = std::min(best, std::min(d, ip - d));
        }
    return static_cast<double>(best);
}

double thm1_threshold(double p, double H, double K) {
    double lg = std::log(p);
    return p * p * p * lg * lg * lg * lg / (H * H * K * K);
}

double thm3_threshold(double p, double H, double K, double X, double epsilon) {
    return p * p * p * std::pow(std::log(p), 3.0 + epsilon) / (H * K * K * std::min(H, X));
}

Thm4Thresholds thm4_thresholds(double p, double H, double K, double epsilon) {
    Thm4Thresholds out;
    out.X_max = H * K / (std::sqrt(p) * std::pow(std::log(p), 1.0 + epsilon));
    out.J_min = std::pow(p, 1.5) * std::pow(std::log(p), 2.0 + epsilon) / (H * K);
    return out;
}

std::size_t family_capacity(FamilyKind kind, const PrimeModulus& pm, double H, double K,
                            const SpacingParams& spacing) {
    const auto p = static_cast<double>(pm.p());
    CenterRange rm = center_range(p, H);
    CenterRange rn = center_range(p, K);
    if (rm.empty() || rn.empty()) return 0;
    std::int64_t span = rm.hi - rm.lo;
    switch (kind) {
        case FamilyKind::general:
            return pm.p();
        case FamilyKind::disjoint: {
            std::int64_t gap = static_cast<std::int64_t>(std::floor(H)) + 1;
            return static_cast<std::size_t>(span / gap + 1);
        }
        case FamilyKind::x_spaced: {
            auto gap = static_cast<std::int64_t>(std::ceil(std::max(1.0, spacing.X)));
            std::int64_t eff = std::min(span, static_cast<std::int64_t>(pm.p()) - gap);
            if (eff < 0) return 1;
            return static_cast<std::size_t>(eff / gap + 1);
        }
        case FamilyKind::arithmetic: {
            auto X = static_cast<std::int64_t>(spacing.X);
            auto Y = spacing.Y;
            std::size_t cap = pm.p();
            if (X > 0)
                cap = std::min<std::size_t>(cap, static_cast<std::size_t>(span / X + 1));
            if (Y != 0)
                cap = std::min<std::size_t>(
                    cap, static_cast<std::size_t>((rn.hi - rn.lo) / std::llabs(Y) + 1));
            return cap;
        }
    }
    return 0;
}

IntervalFamily generate_family(FamilyKind kind, const PrimeModulus& pm, double H, double K,
                               std::size_t J, const SpacingParams& spacing,
                               std::uint64_t seed) {
    const auto p = static_cast<double>(pm.p());
    CenterRange rm = center_range(p, H);
    CenterRange rn = center_range(p, K);
    if (rm.empty())
        throw std::domain_error("generate_family: no integer center fits width H inside (0,p)");
    if (rn.empty())
        throw std::domain_error("generate_family: no integer center fits width K inside (0,p)");

    IntervalFamily fam;
    fam.p = pm.p();
    fam.H = H;
    fam.K = K;
    fam.kind = kind;
    SplitMix64 rng(seed);

    if (J == 0) {
        fam.validate();
        return fam;
    }

    auto draw_n = [&]() { return rng.range(rn.lo, rn.hi); };

    switch (kind) {
        case FamilyKind::general: {
            for (std::size_t j = 0; j < J; ++j)
                fam.centers.emplace_back(rng.range(rm.lo, rm.hi), draw_n());
            break;
        }
        case FamilyKind::disjoint: {
            std::int64_t gap = static_cast<std::int64_t>(std::floor(H)) + 1;
            if (gap * static_cast<std::int64_t>(J - 1) > rm.hi - rm.lo)
                throw std::domain_error(
                    "generate_family: disjoint capacity exceeded, J·H does not fit in (0,p)");
            auto ms = sorted_spaced(rng, rm.lo, rm.hi, J, gap, rm.hi - rm.lo);
            for (std::size_t j = 0; j < J; ++j) fam.centers.emplace_back(ms[j], draw_n());
            break;
        }
        case FamilyKind::x_spaced: {
            auto gap = static_cast<std::int64_t>(std::ceil(std::max(1.0, spacing.X)));
            std::int64_t span_max = static_cast<std::int64_t>(pm.p()) - gap;
            if (span_max < 0 || gap * static_cast<std::int64_t>(J - 1) > std::min(rm.hi - rm.lo, span_max))
                throw std::domain_error(
                    "generate_family: x_spaced capacity exceeded, J·X does not fit modulo p");
            auto ms = sorted_spaced(rng, rm.lo, rm.hi, J, gap, span_max);
            for (std::size_t j = 0; j < J; ++j) fam.centers.emplace_back(ms[j], draw_n());
            break;
        }
        case FamilyKind::arithmetic: {
            auto X = static_cast<std::int64_t>(spacing.X);
            auto Y = spacing.Y;
            if (X < 0) throw std::domain_error("generate_family: arithmetic X must be ≥ 0");
            std::int64_t sj = static_cast<std::int64_t>(J);
            std::int64_t m_lo = rm.lo - X, m_hi = rm.hi - sj * X;
            std::int64_t n_lo = rn.lo - std::min(Y, sj * Y);
            std::int64_t n_hi = rn.hi - std::max(Y, sj * Y);
            if (m_lo > m_hi)
                throw std::domain_error(
                    "generate_family: arithmetic capacity exceeded, M + J·X + H/2 reaches p");
            if (n_lo > n_hi)
                throw std::domain_error(
                    "generate_family: arithmetic capacity exceeded, N + J·Y + K/2 reaches p");
            fam.M = rng.range(m_lo, m_hi);
            fam.N = rng.range(n_lo, n_hi);
            fam.X = X;
            fam.Y = Y;
            for (std::int64_t j = 1; j <= sj; ++j)
                fam.centers.emplace_back(fam.M + j * X, fam.N + j * Y);
            break;
        }
    }
    fam.validate();
    if (kind == FamilyKind::x_spaced && spacing.X > 0 && x_spacing(fam) < spacing.X)
        throw std::logic_error("generate_family: produced family is not X-spaced");
    return fam;
}

bool family_solvable(const IntervalFamily& fam, const PrimeModulus& pm) {
    for (std::size_t j = 0; j < fam.J(); ++j)
        if (solution_exists(fam.i1(j), fam.i2(j), pm).exists) return true;
    return false;
}

std::vector<AuditRatio> bound_audit(const IntervalFamily& fam, const GaussianScale& sc,
                                    const PrimeModulus& pm) {
    if (fam.kind != FamilyKind::x_spaced && fam.kind != FamilyKind::arithmetic)
        throw std::domain_error("bound_audit: family must be x_spaced or arithmetic kind");
    const auto p = static_cast<double>(pm.p());
    const auto J = static_cast<double>(fam.J());
    double T = t_direct(fam, sc, pm).T;
    double main_term = J * sc.x * sc.y / p;
    double actual = std::abs(T - main_term);

    AuditRatio r;
    r.actual = actual;
    if (fam.kind == FamilyKind::x_spaced) {
        double X = x_spacing(fam);
        r.predicted = std::sqrt(std::log(2.0 * J) * J * sc.x * p * (1.0 / sc.x + 1.0 / X));
    } else {
        auto X = static_cast<double>(fam.X);
        if (X < sc.x)
            throw std::domain_error("bound_audit: arithmetic family requires X ≥ x");
        r.predicted = X * J / std::sqrt(p) + std::sqrt(p) * std::log(p);
    }
    r.ratio = r.actual / r.predicted;
    return {r};
}

ExperimentReport minimal_J_search(FamilyKind kind, const PrimeModulus& pm, double H,
                                  double K, const SpacingParams& spacing, double epsilon,
                                  std::size_t trials, std::uint64_t seed, int jobs) {
    auto t_start = std::chrono::steady_clock::now();
    ExperimentReport rep;
    rep.p = pm.p();
    rep.H = H;
    rep.K = K;
    rep.epsilon = epsilon;
    rep.kind = kind;
    rep.spacing = spacing;
    rep.seed = seed;
    rep.trials = trials;

    const auto pd = static_cast<double>(pm.p());
    switch (kind) {
        case FamilyKind::general:
        case FamilyKind::disjoint:
            rep.threshold_value = thm1_threshold(pd, H, K);
            break;
        case FamilyKind::x_spaced:
            rep.threshold_value = thm3_threshold(pd, H, K, std::max(1.0, spacing.X), epsilon);
            break;
        case FamilyKind::arithmetic:
            rep.threshold_value = thm4_thresholds(pd, H, K, epsilon).J_min;
            break;
    }

    const std::size_t cap = family_capacity(kind, pm, H, K, spacing);
    if (cap == 0) throw std::domain_error("minimal_J_search: no family fits these parameters");

    auto all_trials_succeed = [&](std::size_t J) -> bool {
        std::vector<char> ok(trials, 0);
        auto run = [&](std::size_t t0, std::size_t t1) {
            for (std::size_t t = t0; t < t1; ++t) {
                auto fam = generate_family(kind, pm, H, K, J, spacing, trial_seed(seed, J, t));
                ok[t] = family_solvable(fam, pm) ? 1 : 0;
            }
        };
        const int workers = std::max(1, jobs);
        if (workers == 1 || trials <= 1) {
            run(0, trials);
        } else {
            std::vector<std::thread> pool;
            std::size_t per = (trials + static_cast<std::size_t>(workers) - 1) /
                              static_cast<std::size_t>(workers);
            for (int w = 0; w < workers; ++w) {
                std::size_t a = static_cast<std::size_t>(w) * per;
                std::size_t b = std::min(trials, a + per);
                if (a >= b) break;
                pool.emplace_back(run, a, b);
            }
            for (auto& th : pool) th.join();
        }
        return std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; });
    };

    // Doubling phase, then bisection over (last failure, first success].
    std::size_t lo_fail = 0, hi_ok = 0;
    for (std::size_t J = 1;; J = std::min(cap, J * 2)) {
        if (all_trials_succeed(J)) {
            hi_ok = J;
            break;
        }
        lo_fail = J;
        if (J == cap) break;
    }
    if (hi_ok == 0) {
        rep.saturated = true;
        rep.empirical_min_J = 0;
        rep.c_emp = 0.0;
    } else {
        while (hi_ok - lo_fail > 1) {
            std::size_t mid = lo_fail + (hi_ok - lo_fail) / 2;
            if (all_trials_succeed(mid))
                hi_ok = mid;
            else
                lo_fail = mid;
        }
        rep.empirical_min_J = hi_ok;
        rep.c_emp = static_cast<double>(hi_ok) / rep.threshold_value;
    }

    if (!rep.saturated &&
        (kind == FamilyKind::x_spaced || kind == FamilyKind::arithmetic)) {
        try {
            auto sc = scales(H, K, pm, epsilon);
            auto fam = generate_family(kind, pm, H, K, rep.empirical_min_J, spacing,
                                       trial_seed(seed, rep.empirical_min_J, 0));
            rep.audit_ratios = bound_audit(fam, sc, pm);
        } catch (const std::domain_error&) {
            // Audit preconditions (x ≥ 1 or X ≥ x) not met; report without ratios.
        }
    }

    rep.runtime_s = std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - t_start).count();
    return rep;
}

}  // namespace invlab
