#include "nullnet/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nullnet {

const char* model_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::DRG: return "drg";
        case ModelKind::DCM: return "dcm";
        case ModelKind::RCM: return "rcm";
    }
    return "?";
}

ModelKind model_from_name(const std::string& name) {
    if (name == "drg" || name == "DRG") return ModelKind::DRG;
    if (name == "dcm" || name == "DCM") return ModelKind::DCM;
    if (name == "rcm" || name == "RCM") return ModelKind::RCM;
    throw std::invalid_argument("unknown model: " + name);
}

FittedEnsemble fit_drg(const DirectedGraph& g) {
    const int n = g.n();
    if (n < 2) throw std::invalid_argument("fit_drg: n must be >= 2");
    const double pairs = static_cast<double>(n) * (n - 1);
    FittedEnsemble e;
    e.kind = ModelKind::DRG;
    e.n = n;
    e.p = static_cast<double>(g.link_count()) / pairs;
    e.degenerate = (e.p == 0.0 || e.p == 1.0);
    if (e.p < 1.0) e.x.assign(1, e.p / (1.0 - e.p));
    else e.x.assign(1, std::numeric_limits<double>::infinity());
    e.near_saturation = e.p > 1.0 - 1e-9 && !e.degenerate;
    return e;
}

namespace {

double dcm_residual(const std::vector<double>& x, const std::vector<double>& y,
                    const std::vector<int>& k_out, const std::vector<int>& k_in) {
    const int n = static_cast<int>(x.size());
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        double out = 0.0, in = 0.0;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const double wo = x[i] * y[j];
            const double wi = x[j] * y[i];
            out += wo / (1.0 + wo);
            in += wi / (1.0 + wi);
        }
        if (k_out[i] > 0) worst = std::max(worst, std::abs(out - k_out[i]) / k_out[i]);
        else worst = std::max(worst, std::abs(out));
        if (k_in[i] > 0) worst = std::max(worst, std::abs(in - k_in[i]) / k_in[i]);
        else worst = std::max(worst, std::abs(in));
    }
    return worst;
}

struct RcmParams {
    std::vector<double> x, y, z;
};

double rcm_residual(const RcmParams& p, const DegreeVectors& d) {
    const int n = static_cast<int>(p.x.size());
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        double right = 0.0, left = 0.0, both = 0.0;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const double a = p.x[i] * p.y[j];
            const double b = p.x[j] * p.y[i];
            const double c = p.z[i] * p.z[j];
            const double den = 1.0 + a + b + c;
            right += a / den;
            left += b / den;
            both += c / den;
        }
        auto upd = [&worst](double got, int want) {
            if (want > 0) worst = std::max(worst, std::abs(got - want) / want);
            else worst = std::max(worst, std::abs(got));
        };
        upd(right, d.k_right[i]);
        upd(left, d.k_left[i]);
        upd(both, d.k_both[i]);
    }
    return worst;
}

void flag_saturation(FittedEnsemble& e) {
    for (int i = 0; i < e.n && !e.near_saturation; ++i) {
        for (int j = 0; j < e.n; ++j) {
            if (i == j) continue;
            const auto pr = dyad_probabilities(e, i, j);
            if (pr.p_out + pr.p_both > 1.0 - 1e-9) {
                e.near_saturation = true;
                break;
            }
        }
    }
}

}  // namespace

FittedEnsemble fit_dcm(const DirectedGraph& g, FitOptions opts) {
    const int n = g.n();
    if (n < 2) throw std::invalid_argument("fit_dcm: n must be >= 2");
    if (opts.tol <= 0.0) throw std::invalid_argument("fit_dcm: tol must be > 0");
    const DegreeVectors deg = compute_degrees(g);

    const bool complete = std::all_of(deg.k_out.begin(), deg.k_out.end(),
                                      [n](int k) { return k == n - 1; }) &&
                          std::all_of(deg.k_in.begin(), deg.k_in.end(),
                                      [n](int k) { return k == n - 1; });
    if (complete)
        throw DegenerateModelError(
            "fit_dcm: complete graph, likelihood parameters diverge");

    FittedEnsemble e;
    e.kind = ModelKind::DCM;
    e.n = n;
    const double L = static_cast<double>(deg.total_links);
    e.x.assign(n, 0.0);
    e.y.assign(n, 0.0);
    if (L == 0.0) return e;  // all constraints zero: boundary optimum

    const double scale = 1.0 / std::sqrt(L);
    for (int i = 0; i < n; ++i) {
        e.x[i] = deg.k_out[i] * scale;
        e.y[i] = deg.k_in[i] * scale;
    }

    double res = dcm_residual(e.x, e.y, deg.k_out, deg.k_in);
    std::vector<double> nx(n), ny(n);
    int iter = 0;
    while (res > opts.tol && iter < opts.max_iter) {
        ++iter;
        // Jacobi-style synchronous update; zero constraints stay pinned at 0.
        for (int i = 0; i < n; ++i) {
            if (deg.k_out[i] == 0) {
                nx[i] = 0.0;
            } else {
                double s = 0.0;
                for (int j = 0; j < n; ++j)
                    if (j != i) s += e.y[j] / (1.0 + e.x[i] * e.y[j]);
                nx[i] = deg.k_out[i] / s;
            }
            if (deg.k_in[i] == 0) {
                ny[i] = 0.0;
            } else {
                double s = 0.0;
                for (int j = 0; j < n; ++j)
                    if (j != i) s += e.x[j] / (1.0 + e.x[j] * e.y[i]);
                ny[i] = deg.k_in[i] / s;
            }
        }
        double cand = dcm_residual(nx, ny, deg.k_out, deg.k_in);
        if (cand > res) {
            for (int i = 0; i < n; ++i) {
                nx[i] = 0.5 * (e.x[i] + nx[i]);
                ny[i] = 0.5 * (e.y[i] + ny[i]);
            }
            cand = dcm_residual(nx, ny, deg.k_out, deg.k_in);
        }
        e.x.swap(nx);
        e.y.swap(ny);
        res = cand;
    }
    e.residual = res;
    e.iterations = iter;
    e.converged = res <= opts.tol;
    flag_saturation(e);
    return e;
}

FittedEnsemble fit_rcm(const DirectedGraph& g, FitOptions opts) {
    const int n = g.n();
    if (n < 2) throw std::invalid_argument("fit_rcm: n must be >= 2");
    if (opts.tol <= 0.0) throw std::invalid_argument("fit_rcm: tol must be > 0");
    const DegreeVectors deg = compute_degrees(g);

    const bool complete = std::all_of(deg.k_both.begin(), deg.k_both.end(),
                                      [n](int k) { return k == n - 1; });
    if (complete)
        throw DegenerateModelError(
            "fit_rcm: complete graph, likelihood parameters diverge");

    FittedEnsemble e;
    e.kind = ModelKind::RCM;
    e.n = n;
    e.x.assign(n, 0.0);
    e.y.assign(n, 0.0);
    e.z.assign(n, 0.0);

    long l_single = 0, l_both = 0;
    for (int i = 0; i < n; ++i) {
        l_single += deg.k_right[i];
        l_both += deg.k_both[i];
    }
    if (l_single == 0 && l_both == 0) return e;

    const double su = l_single > 0 ? 1.0 / std::sqrt(static_cast<double>(l_single)) : 0.0;
    const double sb = l_both > 0 ? 1.0 / std::sqrt(static_cast<double>(l_both)) : 0.0;
    for (int i = 0; i < n; ++i) {
        e.x[i] = deg.k_right[i] * su;
        e.y[i] = deg.k_left[i] * su;
        e.z[i] = deg.k_both[i] * sb;
    }

    RcmParams cur{e.x, e.y, e.z};
    double res = rcm_residual(cur, deg);
    RcmParams nxt{std::vector<double>(n), std::vector<double>(n), std::vector<double>(n)};
    int iter = 0;
    while (res > opts.tol && iter < opts.max_iter) {
        ++iter;
        for (int i = 0; i < n; ++i) {
            double sx = 0.0, sy = 0.0, sz = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                const double den = 1.0 + cur.x[i] * cur.y[j] + cur.x[j] * cur.y[i] +
                                   cur.z[i] * cur.z[j];
                sx += cur.y[j] / den;
                sy += cur.x[j] / den;
                sz += cur.z[j] / den;
            }
            nxt.x[i] = deg.k_right[i] > 0 ? deg.k_right[i] / sx : 0.0;
            nxt.y[i] = deg.k_left[i] > 0 ? deg.k_left[i] / sy : 0.0;
            nxt.z[i] = deg.k_both[i] > 0 ? deg.k_both[i] / sz : 0.0;
        }
        double cand = rcm_residual(nxt, deg);
        if (cand > res) {
            for (int i = 0; i < n; ++i) {
                nxt.x[i] = 0.5 * (cur.x[i] + nxt.x[i]);
                nxt.y[i] = 0.5 * (cur.y[i] + nxt.y[i]);
                nxt.z[i] = 0.5 * (cur.z[i] + nxt.z[i]);
            }
            cand = rcm_residual(nxt, deg);
        }
        std::swap(cur, nxt);
        res = cand;
    }
    e.x = cur.x;
    e.y = cur.y;
    e.z = cur.z;
    e.residual = res;
    e.iterations = iter;
    e.converged = res <= opts.tol;
    flag_saturation(e);
    return e;
}

DyadProbabilities dyad_probabilities(const FittedEnsemble& e, int i, int j) {
    if (i == j) throw std::invalid_argument("dyad_probabilities: i == j");
    if (i < 0 || i >= e.n || j < 0 || j >= e.n)
        throw std::out_of_range("dyad_probabilities: node index out of range");
    switch (e.kind) {
        case ModelKind::DRG: {
            const double p = e.p;
            return {p * (1.0 - p), p * (1.0 - p), p * p, (1.0 - p) * (1.0 - p)};
        }
        case ModelKind::DCM: {
            const double wij = e.x[i] * e.y[j];
            const double wji = e.x[j] * e.y[i];
            const double pij = wij / (1.0 + wij);
            const double pji = wji / (1.0 + wji);
            return {pij * (1.0 - pji), pji * (1.0 - pij), pij * pji,
                    (1.0 - pij) * (1.0 - pji)};
        }
        case ModelKind::RCM: {
            const double a = e.x[i] * e.y[j];
            const double b = e.x[j] * e.y[i];
            const double c = e.z[i] * e.z[j];
            const double den = 1.0 + a + b + c;
            return {a / den, b / den, c / den, 1.0 / den};
        }
    }
    throw std::logic_error("dyad_probabilities: bad model kind");
}

double log_likelihood(const FittedEnsemble& e, const DirectedGraph& g) {
    if (e.n != g.n()) throw std::invalid_argument("log_likelihood: size mismatch");
    double sum = 0.0;
    for (int i = 0; i < e.n; ++i) {
        for (int j = i + 1; j < e.n; ++j) {
            const auto pr = dyad_probabilities(e, i, j);
            double p = 0.0;
            switch (g.dyad_state(i, j)) {
                case DyadState::Empty: p = pr.p_empty; break;
                case DyadState::OutOnly: p = pr.p_out; break;
                case DyadState::InOnly: p = pr.p_in; break;
                case DyadState::Reciprocated: p = pr.p_both; break;
            }
            if (p <= 0.0) return -std::numeric_limits<double>::infinity();
            sum += std::log(p);
        }
    }
    return sum;
}

}  // namespace nullnet
