#include "oscatlas/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace oscatlas {

namespace {

constexpr double kPi = 3.141592653589793238462643383279503;

// 15-point Kronrod extension of 7-point Gauss (QUADPACK dqk15 constants).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b;
    Complex value;
    double err;
};

Segment gk15(const std::function<Complex(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    Complex fv[15];
    fv[14] = f(c);
    for (int j = 0; j < 7; ++j) {
        double dx = h * kXgk[j];
        fv[2 * j] = f(c - dx);
        fv[2 * j + 1] = f(c + dx);
    }
    Complex resk = kWgk[7] * fv[14];
    Complex resg = kWg[3] * fv[14];
    for (int j = 0; j < 7; ++j) {
        Complex sum = fv[2 * j] + fv[2 * j + 1];
        resk += kWgk[j] * sum;
        if (j % 2 == 1) resg += kWg[j / 2] * sum;
    }
    Complex reskh = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fv[14] - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::abs(fv[2 * j] - reskh) + std::abs(fv[2 * j + 1] - reskh));
    resasc *= std::abs(h);
    double err = std::abs((resk - resg) * h);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    return {a, b, resk * h, err};
}

}  // namespace

QuadResult integrate_adaptive(const std::function<Complex(double)>& f, double a, double b,
                              double abs_tol, double rel_tol,
                              const std::function<double(double)>& max_len,
                              long max_segments) {
    QuadResult out;
    if (a == b) return out;

    auto needs_split = [&](double sa, double sb) {
        if (!max_len) return false;
        return (sb - sa) > std::min(max_len(sa), max_len(sb));
    };

    auto cmp = [](const Segment& s, const Segment& t) { return s.err < t.err; };
    std::priority_queue<Segment, std::vector<Segment>, decltype(cmp)> heap(cmp);

    // Seed: split until every segment respects the oscillation cap.
    std::vector<std::pair<double, double>> stack{{a, b}};
    Complex total(0.0, 0.0);
    double total_err = 0.0;
    long nseg = 0;
    while (!stack.empty()) {
        auto [sa, sb] = stack.back();
        stack.pop_back();
        if (needs_split(sa, sb) && nseg + static_cast<long>(stack.size()) < max_segments) {
            double mid = 0.5 * (sa + sb);
            stack.push_back({sa, mid});
            stack.push_back({mid, sb});
            continue;
        }
        Segment s = gk15(f, sa, sb);
        out.evals += 15;
        total += s.value;
        total_err += s.err;
        heap.push(s);
        ++nseg;
    }

    while (total_err > std::max(abs_tol, rel_tol * std::abs(total)) && nseg < max_segments) {
        Segment worst = heap.top();
        if (worst.err <= 1e-300) break;
        heap.pop();
        double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {  // cannot refine further
            heap.push(worst);
            break;
        }
        Segment left = gk15(f, worst.a, mid);
        Segment right = gk15(f, mid, worst.b);
        out.evals += 30;
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
        ++nseg;
    }

    out.value = total;
    out.err = std::max(total_err, 0.0);  // guard against accumulator drift
    return out;
}

void WynnEpsilon::push(Complex s) {
    history_.push_back(s);
    // New anti-diagonal of the epsilon table from the previous one:
    //   D_N[k+1] = D_{N-1}[k-1] + 1 / (D_N[k] - D_{N-1}[k]).
    std::vector<Complex> next(history_.size());
    next[0] = s;
    for (size_t k = 0; k + 1 < next.size(); ++k) {
        Complex diff = next[k] - row_[k];
        Complex prev = (k == 0) ? Complex(0.0, 0.0) : row_[k - 1];
        if (std::abs(diff) < 1e-290) {
            // Converged column; carry the value through.
            next[k + 1] = (k == 0) ? s : row_[k - 1];
        } else {
            next[k + 1] = prev + 1.0 / diff;
        }
    }

    // Limit approximations live in the even columns.  Pick the even entry
    // that moved least since the previous diagonal.
    Complex best = s;
    double best_err = history_.size() >= 2
                          ? std::abs(history_[history_.size() - 2] - s)
                          : std::abs(s);
    for (size_t k = 2; k < next.size(); k += 2) {
        double moved = (k < row_.size()) ? std::abs(next[k] - row_[k])
                                         : std::abs(next[k] - next[k - 2]);
        double osc = std::abs(next[k] - next[k - 2]);
        double err = moved + 0.25 * osc + 1e-18 * std::abs(next[k]);
        if (err < best_err) {
            best_err = err;
            best = next[k];
        }
    }
    estimate_ = best;
    error_ = best_err;
    row_.swap(next);
}

TailResult integrate_oscillatory_tail(const std::function<Complex(double)>& w, double p,
                                      double lambda, Sign sign, double x0, double tol,
                                      int max_chunks) {
    TailResult out;
    const double s = sign_value(sign);
    const double u0 = lambda * std::pow(x0, p);
    auto boundary = [&](int n) { return std::pow((u0 + n * kPi) / lambda, 1.0 / p); };
    auto integrand = [&](double x) {
        double u = lambda * std::pow(x, p);
        return std::exp(Complex(0.0, s * u)) * w(x);
    };

    Complex partial(0.0, 0.0);
    double quad_err = 0.0;
    WynnEpsilon wynn;
    int consecutive_small = 0;

    for (int n = 0; n < max_chunks; ++n) {
        double xa = boundary(n);
        double xb = boundary(n + 1);
        Segment chunk = gk15(integrand, xa, xb);
        out.evals += 15;
        Complex cv = chunk.value;
        double ce = chunk.err;
        if (ce > 0.02 * tol) {
            QuadResult fine = integrate_adaptive(integrand, xa, xb, 0.01 * tol, 1e-14, {}, 512);
            out.evals += fine.evals;
            cv = fine.value;
            ce = fine.err;
        }
        partial += cv;
        quad_err += ce;
        wynn.push(partial);
        ++out.chunks;

        consecutive_small = (std::abs(cv) < 0.05 * tol) ? consecutive_small + 1 : 0;
        if (consecutive_small >= 3 && n >= 4) {
            out.value = partial;
            out.err = quad_err + 4.0 * std::abs(cv);
            out.accelerated = false;
            return out;
        }
        if (wynn.count() >= 8 && wynn.error() + quad_err < tol) {
            out.value = wynn.estimate();
            out.err = wynn.error() + quad_err;
            out.accelerated = true;
            return out;
        }
    }
    out.value = wynn.count() >= 8 ? wynn.estimate() : partial;
    out.err = wynn.error() + quad_err;
    out.accelerated = true;
    return out;
}

ChebInterp ChebInterp::build(const std::function<Complex(double)>& f, double a, double b,
                             double tol, int max_pts, double* err_out, long* evals_out) {
    ChebInterp interp;
    interp.a_ = a;
    interp.b_ = b;
    long evals = 0;
    double tail = 0.0;
    for (int n = 16; n <= max_pts; n *= 2) {
        std::vector<Complex> fv(static_cast<size_t>(n) + 1);
        for (int j = 0; j <= n; ++j) {
            double t = std::cos(kPi * j / n);
            double x = 0.5 * (a + b) + 0.5 * (b - a) * t;
            fv[static_cast<size_t>(j)] = f(x);
            ++evals;
        }
        std::vector<Complex> c(static_cast<size_t>(n) + 1);
        for (int k = 0; k <= n; ++k) {
            Complex sum(0.0, 0.0);
            for (int j = 0; j <= n; ++j) {
                double wj = (j == 0 || j == n) ? 0.5 : 1.0;
                sum += wj * fv[static_cast<size_t>(j)] * std::cos(kPi * k * j / n);
            }
            c[static_cast<size_t>(k)] = sum * (2.0 / n);
        }
        c[0] *= 0.5;
        c[static_cast<size_t>(n)] *= 0.5;
        tail = 0.0;
        for (int k = std::max(1, n - n / 4); k <= n; ++k)
            tail += std::abs(c[static_cast<size_t>(k)]);
        interp.coef_ = std::move(c);
        if (tail < tol) break;
    }
    if (err_out) *err_out = tail;
    if (evals_out) *evals_out = evals;
    return interp;
}

Complex ChebInterp::eval(double x) const {
    double t = (2.0 * x - (a_ + b_)) / (b_ - a_);
    t = std::clamp(t, -1.0, 1.0);
    Complex bk1(0.0, 0.0), bk2(0.0, 0.0);
    for (int k = static_cast<int>(coef_.size()) - 1; k >= 1; --k) {
        Complex bk = 2.0 * t * bk1 - bk2 + coef_[static_cast<size_t>(k)];
        bk2 = bk1;
        bk1 = bk;
    }
    return t * bk1 - bk2 + coef_[0];
}

}  // namespace oscatlas
