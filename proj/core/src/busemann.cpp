#include "pinterp/busemann.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "pinterp/family.hpp"
#include "pinterp/rng.hpp"
#include "pinterp/summation.hpp"

namespace pinterp {

namespace {

// Evaluates a 2D potential at arbitrary points: analytic generator when
// available, otherwise local biquadratic interpolation of the samples.
struct PotentialEval {
    const GridFunction* g;
    const FamilySpec* fam;

    explicit PotentialEval(const GridFunction& w) : g(&w), fam(nullptr) {
        if (w.family() && w.family()->kind() != FamilySpec::Kind::CustomTable)
            fam = w.family().get();
        if (w.lattice().dim() != 2)
            throw std::invalid_argument("busemann: potential must be 2D");
    }

    bool analytic() const { return fam != nullptr; }

    // Largest |u| such that u*dir stays inside the lattice box.
    double box_exit(std::array<double, 2> dir) const {
        if (analytic()) return 1e9;
        const Lattice& lat = g->lattice();
        double u = kPosInf;
        for (int a = 0; a < 2; ++a) {
            if (dir[a] > 0.0) u = std::min(u, lat.hi(a) / dir[a]);
            else if (dir[a] < 0.0) u = std::min(u, lat.lo(a) / dir[a]);
        }
        return u;
    }

    double operator()(double x, double y) const {
        if (fam) {
            const double p[2] = {x, y};
            return fam->eval(std::span<const double>(p, 2));
        }
        const Lattice& lat = g->lattice();
        auto axis = [&](int a, double c, int& ctr, double& s) {
            const double pos = (c - lat.lo(a)) / lat.spacing(a);
            if (pos < 0.0 || pos > lat.count(a) - 1) return false;
            ctr = std::clamp(static_cast<int>(std::lround(pos)), 1, lat.count(a) - 2);
            s = pos - ctr;
            return true;
        };
        int ci, cj;
        double sx, sy;
        if (!axis(0, x, ci, sx) || !axis(1, y, cj, sy)) return kPosInf;
        auto wt = [](double s, double* l) {
            l[0] = 0.5 * s * (s - 1.0);
            l[1] = (1.0 - s) * (1.0 + s);
            l[2] = 0.5 * s * (s + 1.0);
        };
        double lx[3], ly[3];
        wt(sx, lx);
        wt(sy, ly);
        double acc = 0.0;
        for (int a = -1; a <= 1; ++a) {
            for (int b = -1; b <= 1; ++b) {
                const double v = g->at(ci + a, cj + b);
                if (!is_finite_value(v)) return kPosInf;
                acc += lx[a + 1] * ly[b + 1] * v;
            }
        }
        return acc;
    }
};

struct RayIntegrand {
    const PotentialEval* pot;
    std::array<double, 2> dir;
    double w0;

    double wrel(double u) const { return (*pot)(u * dir[0], u * dir[1]) - w0; }
};

// Locates the truncation point: smallest u past the peak of
// (p-1) log u - wrel(u) where the integrand falls 40 e-folds below it.
double truncation_point(const RayIntegrand& ri, double p, double u_cap) {
    const int scan = 1024;
    double gmax = -kPosInf;
    int peak = 0;
    std::vector<double> gs(scan);
    for (int k = 1; k <= scan; ++k) {
        const double u = u_cap * k / scan;
        const double wv = ri.wrel(u);
        const double gv = is_finite_value(wv) ? (p - 1.0) * std::log(u) - wv : -kPosInf;
        gs[k - 1] = gv;
        if (gv > gmax) {
            gmax = gv;
            peak = k - 1;
        }
    }
    for (int k = peak; k < scan; ++k) {
        if (gs[k] < gmax - 40.0) return u_cap * (k + 1) / scan;
    }
    // Not decayed within the cap: superlinear growth is missing.
    const double tail_slope = ri.wrel(u_cap) - ri.wrel(0.95 * u_cap);
    if (!(tail_slope > 1e-9))
        throw std::domain_error("busemann: divergent ray integral (slope check fails)");
    throw std::domain_error("busemann: ray integral not resolved inside the lattice box");
}

double simpson(const std::vector<double>& f, double h) {
    // f.size() odd (even interval count).
    KahanSum s;
    const std::size_t n = f.size() - 1;
    s.add(f[0]);
    s.add(f[n]);
    for (std::size_t k = 1; k < n; ++k) s.add((k % 2 ? 4.0 : 2.0) * f[k]);
    return s.value() * h / 3.0;
}

constexpr int kRaySteps = 8192;

}  // namespace

double ray_integral(const GridFunction& w, std::array<double, 2> dir, double p) {
    if (!(p > 0.0)) throw std::invalid_argument("ray_integral: p must be positive");
    if (dir[0] == 0.0 && dir[1] == 0.0)
        throw std::invalid_argument("ray_integral: zero direction");
    const PotentialEval pot(w);
    const double w0 = pot(0.0, 0.0);
    if (!is_finite_value(w0)) throw std::domain_error("ray_integral: w(0) not finite");
    const RayIntegrand ri{&pot, dir, w0};
    const double u_cap = pot.box_exit(dir);
    const double U = truncation_point(ri, p, u_cap);

    std::vector<double> f(kRaySteps + 1);
    double integral;
    if (p >= 1.0) {
        const double h = U / kRaySteps;
        for (int k = 0; k <= kRaySteps; ++k) {
            const double u = k * h;
            const double wv = k == 0 ? 0.0 : ri.wrel(u);
            const double amp = k == 0 ? (p == 1.0 ? 1.0 : 0.0) : std::pow(u, p - 1.0);
            f[k] = is_finite_value(wv) ? amp * std::exp(-wv) : 0.0;
        }
        integral = simpson(f, h);
    } else {
        // sigma = u^p / p removes the integrable singularity at 0.
        const double smax = std::pow(U, p) / p;
        const double h = smax / kRaySteps;
        for (int k = 0; k <= kRaySteps; ++k) {
            const double sigma = k * h;
            const double u = std::pow(p * sigma, 1.0 / p);
            const double wv = ri.wrel(u);
            f[k] = is_finite_value(wv) ? std::exp(-wv) : 0.0;
        }
        integral = simpson(f, h);
    }
    return std::exp(-w0) * integral;
}

double busemann_h(const GridFunction& w, std::array<double, 2> x, double p) {
    const double r = std::hypot(x[0], x[1]);
    if (r == 0.0) return 0.0;
    const std::array<double, 2> dir{x[0] / r, x[1] / r};
    const double I = ray_integral(w, dir, p);
    if (!(I > 0.0)) throw std::domain_error("busemann_h: vanishing ray integral");
    return r * std::pow(I, -1.0 / p);
}

double busemann_alpha_p(const GridFunction& w, double t, double p) {
    return ray_integral(w, {t, 1.0}, p);
}

CheckReport check_h_convexity(const GridFunction& w, double p, int samples, std::uint64_t seed,
                              double tol) {
    Rng rng(seed);
    double min_margin = kPosInf;
    std::string worst;
    int skipped = 0;
    for (int s = 0; s < samples; ++s) {
        const double r1 = rng.uniform(0.5, 2.0), th1 = rng.uniform(0.0, 6.283185307179586);
        const double r2 = rng.uniform(0.5, 2.0), th2 = rng.uniform(0.0, 6.283185307179586);
        const std::array<double, 2> x{r1 * std::cos(th1), r1 * std::sin(th1)};
        const std::array<double, 2> y{r2 * std::cos(th2), r2 * std::sin(th2)};
        const std::array<double, 2> mid{0.5 * (x[0] + y[0]), 0.5 * (x[1] + y[1])};
        try {
            const double hx = busemann_h(w, x, p);
            const double hy = busemann_h(w, y, p);
            const double hm = busemann_h(w, mid, p);
            const double margin = 0.5 * (hx + hy) - hm;
            if (margin < min_margin) {
                min_margin = margin;
                std::ostringstream os;
                os << "x=(" << format_g12(x[0]) << "," << format_g12(x[1]) << "),y=("
                   << format_g12(y[0]) << "," << format_g12(y[1]) << ")";
                worst = os.str();
            }
        } catch (const std::domain_error&) {
            ++skipped;
        }
    }

    // Local form at t = 0: dtt alpha_p <= (1 + 1/p) (dt alpha_p)^2 / alpha_p.
    const double dt = 1e-2;
    const double a0 = busemann_alpha_p(w, 0.0, p);
    const double ap = busemann_alpha_p(w, dt, p);
    const double am = busemann_alpha_p(w, -dt, p);
    const double dd = (ap - 2.0 * a0 + am) / (dt * dt);
    const double d1 = (ap - am) / (2.0 * dt);
    const double local_margin = (1.0 + 1.0 / p) * d1 * d1 / a0 - dd;
    const double local_tol = std::max(tol, 1e-3 * (1.0 + std::abs(dd)));

    std::ostringstream prov;
    prov << w.provenance() << "; p=" << format_g12(p) << "; pairs=" << samples
         << "; skipped=" << skipped << "; local_624_margin=" << format_g12(local_margin);
    CheckReport rep =
        CheckReport::make("busemann_h_convexity", min_margin, tol, worst, prov.str());
    rep.pass = rep.pass && local_margin >= -local_tol;
    return rep;
}

double HalfLineMeasure::mean(std::span<const double> u) const {
    KahanSum s;
    for (std::size_t k = 0; k < w.size(); ++k) s.add(w[k] * u[k]);
    return s.value();
}

double HalfLineMeasure::variance(std::span<const double> u) const {
    const double e = mean(u);
    KahanSum s;
    for (std::size_t k = 0; k < w.size(); ++k) {
        const double d = u[k] - e;
        s.add(w[k] * d * d);
    }
    return std::max(s.value(), 0.0);
}

HalfLineMeasure half_line_measure(const GridFunction& w, double p, double X, int K) {
    if (!(p > 0.0) || !(X > 0.0))
        throw std::invalid_argument("half_line_measure: need p > 0, X > 0");
    const PotentialEval pot(w);
    if (K <= 0) K = p < 1.0 ? (1 << 16) : 8192;
    const double grade = 1.0 / std::min(p, 1.0);

    HalfLineMeasure mu;
    mu.p = p;
    mu.X = X;
    mu.grading_K = K;
    mu.x.resize(K);
    mu.w.resize(K);
    // Node k sits at the cell midpoint in the graded coordinate; the
    // singular factor x^{p-1} is integrated exactly over each cell.
    KahanSum z;
    double edge_lo = 0.0;
    for (int k = 0; k < K; ++k) {
        const double edge_hi = X * std::pow((k + 1.0) / K, grade);
        const double xm = 0.5 * (edge_lo + edge_hi);
        const double wv = pot(0.0, xm);
        const double cellp = (std::pow(edge_hi, p) - std::pow(edge_lo, p)) / p;
        const double mass = is_finite_value(wv) ? std::exp(-wv) * cellp : 0.0;
        mu.x[k] = xm;
        mu.w[k] = mass;
        z.add(mass);
        edge_lo = edge_hi;
    }
    mu.z = z.value();
    if (!(mu.z > 0.0)) throw std::domain_error("half_line_measure: zero mass");
    for (double& v : mu.w) v /= mu.z;
    mu.first_cell_mass = mu.w[0];
    if (!(mu.first_cell_mass < 1e-4))
        throw std::domain_error("half_line_measure: grading inadequate (first cell mass)");
    return mu;
}

CheckReport check_busemann_variance(const GridFunction& w, const GridFunction& u, double p,
                                    const BusemannVarianceOptions& opt) {
    const PotentialEval pot(w);
    const Lattice& ul = u.lattice();
    if (ul.dim() != 1 || ul.lo(0) != 0.0)
        throw std::invalid_argument("busemann_variance: u must live on [0, X]");
    const double X = ul.hi(0);

    const HalfLineMeasure mu = half_line_measure(w, p, X, opt.grading_K);
    const int K = mu.grading_K;

    // u evaluator: analytic generator when sampled, else linear interpolation.
    const FamilySpec* ufam =
        (u.family() && u.family()->kind() != FamilySpec::Kind::CustomTable) ? u.family().get()
                                                                            : nullptr;
    const double dt_w = pot.analytic() ? 1e-3 : w.lattice().spacing(0);
    auto ueval = [&](double x) -> double {
        if (opt.layered_mode) {
            const double dtw = (pot(dt_w, x) - pot(-dt_w, x)) / (2.0 * dt_w);
            return x * dtw;
        }
        if (ufam) {
            const double q[1] = {x};
            return ufam->eval(std::span<const double>(q, 1));
        }
        const double s = x / ul.spacing(0);
        const int i0 = std::clamp(static_cast<int>(s), 0, ul.count(0) - 2);
        const double fr = s - i0;
        return u[i0] + fr * (u[i0 + 1] - u[i0]);
    };

    if (!opt.layered_mode) {
        if (std::abs(u[0]) > 1e-12 * (1.0 + u.lipschitz_estimate()))
            throw std::invalid_argument("busemann_variance: u(0) must vanish");
    }
    if (std::abs(ueval(mu.x[0]) / mu.x[0]) > 1e8)
        throw std::domain_error("busemann_variance: u/x unbounded near 0 (first-cell ratio)");

    const double dx = 1e-3 * std::max(1.0, X / 10.0);
    bool flat_warning = false;
    std::vector<double> uv(K), integrand_a(K), x2dtt(K);
    for (int k = 0; k < K; ++k) {
        const double x = mu.x[k];
        uv[k] = ueval(x);
        const double d = std::min(dx, 0.5 * x);
        const double up = (ueval(x + d) - ueval(x - d)) / (2.0 * d);
        const double wxx = (pot(0.0, x + d) - 2.0 * pot(0.0, x) + pot(0.0, x - d)) / (d * d);
        if (!(wxx > 1e-6)) {
            flat_warning = true;
            integrand_a[k] = 0.0;  // flat piece: conservative zero contribution
        } else {
            const double t = up - uv[k] / x;
            integrand_a[k] = t * t / wxx;
        }
        if (opt.layered_mode) {
            const double wtt =
                (pot(dt_w, x) - 2.0 * pot(0.0, x) + pot(-dt_w, x)) / (dt_w * dt_w);
            x2dtt[k] = x * x * wtt;
        }
    }
    const double E = mu.mean(uv);
    const double var = mu.variance(uv);
    const double A = mu.mean(integrand_a);
    const double margin654 = A + E * E / p - var;

    std::ostringstream prov;
    prov << w.provenance() << "; p=" << format_g12(p) << "; E=" << format_g12(E)
         << "; var=" << format_g12(var);
    if (opt.layered_mode) {
        const double margin653 = mu.mean(x2dtt) + E * E / p - var;
        prov << "; margin_653=" << format_g12(margin653);
    }
    if (flat_warning) prov << "; warning=flat piece in dxx w (merely convex input)";
    if (mu.first_cell_mass > 0.0)
        prov << "; first_cell_mass=" << format_g12(mu.first_cell_mass);
    return CheckReport::make("busemann_variance", margin654, opt.tol, "", prov.str());
}

}  // namespace pinterp
