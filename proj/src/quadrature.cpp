#include "dephase/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "dephase/error.hpp"

namespace dephase::quad {

namespace {

// 15-point Kronrod abscissae and weights with the embedded 7-point Gauss
// weights (QUADPACK qk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEpsilon = std::numeric_limits<double>::epsilon();
constexpr double kUnderflow = std::numeric_limits<double>::min();
constexpr int kEvalsPerPanel = 15;

// Six successive contributions whose ratio stays above this count as "not
// shrinking". Integrands ~ w^(s-1) with s > 1.5e-6 shrink by 2^-s per panel.
constexpr double kShrinkRatio = 1.0 - 1e-6;
constexpr int kDivergenceRun = 6;
constexpr int kMaxProbePanels = 1000;
constexpr int kMaxTailBlocks = 64;
constexpr int kPanelsPerBlockNonOscillatory = 16;

struct GkEstimate {
    double value;
    double error;
    double abs_value;
};

double checked_eval(const Integrand& f, double x) {
    const double v = f(x);
    if (!std::isfinite(v)) {
        throw ComputeError("integrand is not finite at w = " + std::to_string(x));
    }
    return v;
}

GkEstimate gauss_kronrod_15(const Integrand& f, double a, double b) {
    const double centr = 0.5 * (a + b);
    const double hlgth = 0.5 * (b - a);
    const double dhlgth = std::abs(hlgth);

    std::array<double, 7> fv1{};
    std::array<double, 7> fv2{};

    const double fc = checked_eval(f, centr);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    double resabs = std::abs(resk);

    for (int j = 0; j < 3; ++j) {
        const int jtw = 2 * j + 1;
        const double absc = hlgth * kXgk[jtw];
        const double f1 = checked_eval(f, centr - absc);
        const double f2 = checked_eval(f, centr + absc);
        fv1[jtw] = f1;
        fv2[jtw] = f2;
        resg += kWg[j] * (f1 + f2);
        resk += kWgk[jtw] * (f1 + f2);
        resabs += kWgk[jtw] * (std::abs(f1) + std::abs(f2));
    }
    for (int j = 0; j < 4; ++j) {
        const int jtwm1 = 2 * j;
        const double absc = hlgth * kXgk[jtwm1];
        const double f1 = checked_eval(f, centr - absc);
        const double f2 = checked_eval(f, centr + absc);
        fv1[jtwm1] = f1;
        fv2[jtwm1] = f2;
        resk += kWgk[jtwm1] * (f1 + f2);
        resabs += kWgk[jtwm1] * (std::abs(f1) + std::abs(f2));
    }

    const double reskh = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j) {
        resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
    }

    GkEstimate est{};
    est.value = resk * hlgth;
    resabs *= dhlgth;
    resasc *= dhlgth;
    double abserr = std::abs((resk - resg) * hlgth);
    if (resasc != 0.0 && abserr != 0.0) {
        abserr = resasc * std::min(1.0, std::pow(200.0 * abserr / resasc, 1.5));
    }
    if (resabs > kUnderflow / (50.0 * kEpsilon)) {
        abserr = std::max(kEpsilon * 50.0 * resabs, abserr);
    }
    est.error = abserr;
    est.abs_value = resabs;
    return est;
}

struct Segment {
    double a;
    double b;
    double value;
    double error;
    double abs_value;
    int tag;
};

bool by_error(const Segment& lhs, const Segment& rhs) { return lhs.error < rhs.error; }

// Global adaptive refinement over a growing set of panels: the panel with the
// largest error estimate is bisected until the summed error meets tolerance.
class PanelSet {
public:
    PanelSet(const Integrand& f, std::int64_t max_evals) : f_(f), max_evals_(max_evals) {}

    // Past the budget the panel is dropped and the set marked truncated.
    GkEstimate add(double a, double b, int tag = 0) {
        if (evals_ + kEvalsPerPanel > max_evals_) {
            truncated_ = true;
            return {};
        }
        const GkEstimate est = gauss_kronrod_15(f_, a, b);
        evals_ += kEvalsPerPanel;
        push({a, b, est.value, est.error, est.abs_value, tag});
        return est;
    }

    void refine(double rel_tol, double abs_tol) {
        int since_resum = 0;
        while (!heap_.empty() && error_ > tolerance_for(value_, rel_tol, abs_tol)) {
            if (exhausted()) {
                return;
            }
            std::pop_heap(heap_.begin(), heap_.end(), by_error);
            const Segment worst = heap_.back();
            heap_.pop_back();
            value_ -= worst.value;
            error_ -= worst.error;
            abs_value_ -= worst.abs_value;

            const double mid = 0.5 * (worst.a + worst.b);
            if (!(mid > worst.a && mid < worst.b) ||
                (worst.b - worst.a) < 8.0 * kEpsilon * std::max(std::abs(mid), kUnderflow)) {
                // Cannot be bisected further in double precision.
                frozen_.push_back(worst);
                value_ += worst.value;
                error_ += worst.error;
                abs_value_ += worst.abs_value;
                continue;
            }
            add(worst.a, mid, worst.tag);
            add(mid, worst.b, worst.tag);
            if (++since_resum >= 4096) {
                resum();
                since_resum = 0;
            }
        }
        resum();
    }

    bool exhausted() const { return evals_ + 2 * kEvalsPerPanel > max_evals_; }
    double value() const { return value_; }
    double error() const { return error_; }
    std::int64_t evals() const { return evals_; }
    bool truncated() const { return truncated_; }

    // Signed and absolute sums over the panels carrying `tag`.
    std::pair<double, double> tag_sums(int tag) const {
        double signed_sum = 0.0;
        double abs_sum = 0.0;
        for (const auto* list : {&heap_, &frozen_}) {
            for (const Segment& s : *list) {
                if (s.tag == tag) {
                    signed_sum += s.value;
                    abs_sum += s.abs_value;
                }
            }
        }
        return {signed_sum, abs_sum};
    }

    void resum() {
        value_ = 0.0;
        error_ = 0.0;
        abs_value_ = 0.0;
        for (const auto* list : {&heap_, &frozen_}) {
            for (const Segment& s : *list) {
                value_ += s.value;
                error_ += s.error;
                abs_value_ += s.abs_value;
            }
        }
    }

private:
    void push(const Segment& s) {
        heap_.push_back(s);
        std::push_heap(heap_.begin(), heap_.end(), by_error);
        value_ += s.value;
        error_ += s.error;
        abs_value_ += s.abs_value;
    }

    const Integrand& f_;
    std::int64_t max_evals_;
    std::int64_t evals_ = 0;
    bool truncated_ = false;
    std::vector<Segment> heap_;
    std::vector<Segment> frozen_;
    double value_ = 0.0;
    double error_ = 0.0;
    double abs_value_ = 0.0;
};

void add_partition(PanelSet& ps, double a, double b, double max_width, int tag = 0) {
    if (!(b > a)) {
        return;
    }
    const double span = b - a;
    const auto n = static_cast<std::int64_t>(
        std::isfinite(max_width) ? std::max(1.0, std::ceil(span / max_width)) : 1.0);
    const double h = span / static_cast<double>(n);
    for (std::int64_t i = 0; i < n; ++i) {
        const double x0 = a + h * static_cast<double>(i);
        const double x1 = (i + 1 == n) ? b : a + h * static_cast<double>(i + 1);
        ps.add(x0, x1, tag);
    }
}

void validate_tolerances(double rel_tol, double abs_tol, std::int64_t max_evals) {
    if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
        throw ConfigError("rel_tol must lie in (0, 1)");
    }
    if (!(abs_tol >= 0.0) || !std::isfinite(abs_tol)) {
        throw ConfigError("abs_tol must be finite and >= 0");
    }
    if (max_evals <= 0) {
        throw ConfigError("max_evals must be positive");
    }
}

IntegrationResult finish(const PanelSet& ps, double extra_error, bool complete,
                         double rel_tol, double abs_tol) {
    IntegrationResult r;
    r.value = ps.value();
    r.error_estimate = ps.error() + extra_error;
    r.evals = ps.evals();
    r.converged = complete && !ps.truncated() && r.error_estimate <= tolerance_for(r.value, rel_tol, abs_tol);
    r.diverged = false;
    return r;
}

}  // namespace

double tolerance_for(double value, double rel_tol, double abs_tol) {
    return std::max(abs_tol, rel_tol * std::abs(value));
}

double IntegrationResult::tolerance(double rel_tol, double abs_tol) const {
    return tolerance_for(value, rel_tol, abs_tol);
}

void IntegrationRequest::validate() const {
    if (!integrand) {
        throw ConfigError("integration request has no integrand");
    }
    if (!(t_scale >= 0.0) || !std::isfinite(t_scale)) {
        throw ConfigError("t_scale must be finite and >= 0");
    }
    if (!(cutoff_scale > 0.0) || !std::isfinite(cutoff_scale)) {
        throw ConfigError("cutoff_scale must be finite and > 0");
    }
    validate_tolerances(rel_tol, abs_tol, max_evals);
    if (!(lower >= 0.0) || !std::isfinite(lower)) {
        throw ConfigError("lower limit must be finite and >= 0");
    }
    if (!(upper > lower)) {
        throw ConfigError("upper limit must exceed the lower limit");
    }
    if (peak && !(peak->width > 0.0 && std::isfinite(peak->center))) {
        throw ConfigError("peak width must be > 0");
    }
}

IntegrationResult integrate_on_interval(const Integrand& f, double a, double b,
                                        double rel_tol, double abs_tol,
                                        std::int64_t max_evals) {
    if (!f) {
        throw ConfigError("integrate_on_interval: no integrand");
    }
    if (!(std::isfinite(a) && std::isfinite(b) && a < b)) {
        throw ConfigError("integrate_on_interval: need finite a < b");
    }
    validate_tolerances(rel_tol, abs_tol, max_evals);

    PanelSet ps(f, max_evals);
    ps.add(a, b);
    ps.refine(rel_tol, abs_tol);
    return finish(ps, 0.0, true, rel_tol, abs_tol);
}

IntegrationResult integrate_semi_infinite(const IntegrationRequest& req) {
    req.validate();

    PanelSet ps(req.integrand, req.max_evals);
    const double t = req.t_scale;
    const double c = req.cutoff_scale;
    const bool oscillatory = t > 0.0;
    const double half_period =
        oscillatory ? std::numbers::pi / t : std::numeric_limits<double>::infinity();
    const double period = 2.0 * half_period;
    const double max_width = std::min(half_period, c);
    const bool open_origin = req.lower == 0.0;
    const bool infinite = std::isinf(req.upper);

    auto align_up = [&](double w) {
        return oscillatory ? std::ceil(w / period) * period : w;
    };

    double body_end = req.upper;
    if (infinite) {
        body_end = req.lower + 8.0 * c;
        if (req.peak) {
            body_end = std::max(body_end, req.peak->center + 16.0 * req.peak->width);
        }
        body_end = align_up(body_end);
    }
    const double body_start = open_origin ? std::min({c, half_period, body_end}) : req.lower;

    std::vector<double> cuts = {body_start, body_end};
    if (req.peak) {
        for (double k : {0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
            for (double sign : {-1.0, 1.0}) {
                const double x = req.peak->center + sign * k * req.peak->width;
                if (x > body_start && x < body_end) {
                    cuts.push_back(x);
                }
            }
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        add_partition(ps, cuts[i], cuts[i + 1], max_width);
    }
    ps.refine(req.rel_tol, req.abs_tol);

    auto diverged_result = [&]() {
        IntegrationResult r;
        r.value = ps.value();
        r.error_estimate = std::numeric_limits<double>::infinity();
        r.evals = ps.evals();
        r.converged = false;
        r.diverged = true;
        return r;
    };
    auto current_tol = [&]() { return 0.1 * tolerance_for(ps.value(), req.rel_tol, req.abs_tol); };

    // Origin probe: dyadic panels [b/2, b] toward w = 0. The geometric
    // remainder of the shrinking contributions bounds what is left.
    struct Probe {
        bool done = false;
        bool diverged = false;
        int non_shrinking = 0;
        int count = 0;
        double prev_mag = 0.0;
        double prev_ratio = std::numeric_limits<double>::infinity();
        double b = 0.0;
        double remainder = 0.0;
    } probe;
    probe.b = body_start;

    auto advance_probe = [&]() {
        probe.done = false;
        while (probe.count < kMaxProbePanels && !ps.exhausted()) {
            const double a = 0.5 * probe.b;
            const double mag = std::abs(ps.add(a, probe.b, -1).value);
            const int k = probe.count++;
            probe.b = a;
            if (k > 0) {
                if (probe.prev_mag == 0.0 && mag == 0.0) {
                    probe.remainder = 0.0;
                    probe.done = true;
                    return;
                }
                const double ratio = probe.prev_mag > 0.0 ? mag / probe.prev_mag
                                                          : std::numeric_limits<double>::infinity();
                probe.non_shrinking = ratio >= kShrinkRatio ? probe.non_shrinking + 1 : 0;
                if (probe.non_shrinking >= kDivergenceRun) {
                    probe.diverged = true;
                    return;
                }
                if (ratio < 1.0 && probe.prev_ratio < 1.0) {
                    const double r = std::max(ratio, probe.prev_ratio);
                    probe.remainder = mag * r / (1.0 - r);
                    if (probe.remainder <= current_tol()) {
                        probe.prev_ratio = ratio;
                        probe.prev_mag = mag;
                        probe.done = true;
                        return;
                    }
                }
                probe.prev_ratio = ratio;
            }
            probe.prev_mag = mag;
        }
    };

    // Tail: doubling blocks [W, 2W] beyond the body, aligned to whole periods.
    // A shrinking block whose signed sum is below tolerance stands in for
    // everything beyond it.
    struct Tail {
        bool done = false;
        bool diverged = false;
        int non_shrinking = 0;
        int count = 0;
        double prev_abs = 0.0;
        double w = 0.0;
        double remainder = 0.0;
    } tail;
    tail.w = body_end;

    auto advance_tail = [&]() {
        tail.done = false;
        while (tail.count < kMaxTailBlocks && !ps.exhausted()) {
            const double w2 = align_up(2.0 * tail.w);
            const int k = tail.count++;
            const int tag = k + 1;
            if (oscillatory) {
                add_partition(ps, tail.w, w2, half_period, tag);
            } else {
                add_partition(ps, tail.w, w2, (w2 - tail.w) / kPanelsPerBlockNonOscillatory, tag);
            }
            tail.w = w2;
            ps.refine(req.rel_tol, req.abs_tol);
            const auto [block_signed, block_abs] = ps.tag_sums(tag);
            if (k > 0) {
                const double ratio = tail.prev_abs > 0.0 ? block_abs / tail.prev_abs
                                                         : (block_abs > 0.0 ? 2.0 : 0.0);
                tail.non_shrinking = ratio >= kShrinkRatio ? tail.non_shrinking + 1 : 0;
                if (tail.non_shrinking >= kDivergenceRun) {
                    tail.diverged = true;
                    return;
                }
            }
            const bool shrinking = k == 0 || block_abs < tail.prev_abs || block_abs == 0.0;
            tail.prev_abs = block_abs;
            tail.remainder = std::abs(block_signed);
            if (shrinking && tail.remainder <= current_tol()) {
                tail.done = true;
                return;
            }
        }
    };

    // Both stopping rules depend on the running total, so they are rechecked
    // against the final value and resumed if it shrank.
    for (int pass = 0; pass < 8; ++pass) {
        if (open_origin && !(probe.done && probe.remainder <= current_tol())) {
            advance_probe();
            if (probe.diverged) {
                return diverged_result();
            }
            ps.refine(req.rel_tol, req.abs_tol);
        }
        if (infinite && !(tail.done && tail.remainder <= current_tol())) {
            advance_tail();
            if (tail.diverged) {
                return diverged_result();
            }
        }
        ps.refine(req.rel_tol, req.abs_tol);
        const bool probe_ok = !open_origin || (probe.done && probe.remainder <= current_tol());
        const bool tail_ok = !infinite || (tail.done && tail.remainder <= current_tol());
        if ((probe_ok && tail_ok) || ps.exhausted()) {
            break;
        }
        if ((open_origin && !probe.done) || (infinite && !tail.done)) {
            break;
        }
    }

    const bool complete = (!open_origin || probe.done) && (!infinite || tail.done);
    const double extra_error = (open_origin ? probe.remainder : 0.0) + (infinite ? tail.remainder : 0.0);
    return finish(ps, extra_error, complete, req.rel_tol, req.abs_tol);
}

IntegrationResult integrate_algebraic_tail(const Integrand& f, double a, double rel_tol,
                                           double abs_tol, std::int64_t max_evals) {
    if (!(a > 0.0) || !std::isfinite(a)) {
        throw ConfigError("integrate_algebraic_tail: need finite a > 0");
    }
    const Integrand mapped = [&f, a](double u) {
        const double w = a / u;
        if (!std::isfinite(w)) {
            return 0.0;
        }
        return f(w) * a / (u * u);
    };
    return integrate_on_interval(mapped, 0.0, 1.0, rel_tol, abs_tol, max_evals);
}

}  // namespace dephase::quad
