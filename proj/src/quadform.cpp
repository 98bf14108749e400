#include "cubeshape/quadform.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "cubeshape/factor.hpp"

namespace cubeshape {

Mat2 Mat2::inverse() const {
    Int dt = det();
    if (abs(dt) != 1) throw std::domain_error("Mat2::inverse: not unimodular");
    if (dt == 1) return {d, -b, -c, a};
    return {-d, b, c, -a};
}

Mat2 Mat2::pow(int n) const {
    Mat2 base = n >= 0 ? *this : inverse();
    int e = n >= 0 ? n : -n;
    Mat2 acc = Mat2::identity();
    for (int i = 0; i < e; ++i) acc = acc * base;
    return acc;
}

Int BQF::content() const {
    Int g;
    mpz_gcd(g.get_mpz_t(), r.get_mpz_t(), s.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.get_mpz_t());
    return g;
}

std::string BQF::str() const {
    std::ostringstream os;
    os << "(" << r << "," << s << "," << t << ")";
    return os.str();
}

BQF act(const Mat2& g, const BQF& q) {
    Int r2 = q.eval(g.a, g.b);
    Int t2 = q.eval(g.c, g.d);
    Int s2 = q.eval(g.a + g.c, g.b + g.d) - r2 - t2;
    return {r2, s2, t2};
}

int QuadSurd::sign() const {
    int sa = sgn(a), sb = sgn(b);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    Rat lhs = a * a, rhs = b * b * Rat(D);
    int c = cmp(lhs, rhs);
    return sa * (c > 0 ? 1 : (c < 0 ? -1 : 0));
}

double QuadSurd::value() const {
    return to_double(a) + to_double(b) * std::sqrt(to_double(D));
}

QuadSurd operator+(const QuadSurd& x, const QuadSurd& y) { return {x.a + y.a, x.b + y.b, x.D}; }
QuadSurd operator-(const QuadSurd& x, const QuadSurd& y) { return {x.a - y.a, x.b - y.b, x.D}; }
QuadSurd operator*(const QuadSurd& x, const QuadSurd& y) {
    return {x.a * y.a + x.b * y.b * Rat(x.D), x.a * y.b + x.b * y.a, x.D};
}

QuadSurd QuadSurd::pow(int n) const {
    QuadSurd acc(Rat(1), Rat(0), D);
    for (int i = 0; i < n; ++i) acc = acc * (*this);
    return acc;
}

namespace {

// Fundamental solution of x^2 - m y^2 = +-1 (m > 1 nonsquare) by the
// continued fraction expansion of sqrt(m); norm reports which sign.
void pell_pm1(const Int& m, Int& x, Int& y, int& norm) {
    Int a0 = isqrt_floor(m);
    Int mk = 0, dk = 1, ak = a0;
    Int hm1 = 1, h0 = a0, km1 = 0, k0 = 1;
    long k = 0;
    while (true) {
        mk = dk * ak - mk;
        dk = (m - mk * mk) / dk;
        ak = (a0 + mk) / dk;
        ++k;
        if (dk == 1) {
            x = h0;
            y = k0;
            norm = (k % 2 == 0) ? 1 : -1;
            return;
        }
        Int hn = ak * h0 + hm1, kn = ak * k0 + km1;
        hm1 = h0;
        h0 = hn;
        km1 = k0;
        k0 = kn;
        if (k > 100000) throw std::runtime_error("pell: continued fraction did not close");
    }
}

}  // namespace

PellSolution pell_fundamental(const Int& D) {
    if (D <= 0 || is_square(D)) throw std::domain_error("pell_fundamental: D must be positive and nonsquare");
    Int U, W;
    if (D % 4 == 0) {
        Int m = D / 4;
        Int x, y;
        int norm;
        pell_pm1(m, x, y, norm);
        if (norm < 0) {
            Int x2 = x * x + m * y * y, y2 = 2 * x * y;
            x = x2;
            y = y2;
        }
        U = 2 * x;
        W = y;
    } else {
        Int x, y;
        int norm;
        pell_pm1(D, x, y, norm);
        if (norm < 0) {
            Int x2 = x * x + D * y * y, y2 = 2 * x * y;
            x = x2;
            y = y2;
        }
        U = 2 * x;
        W = 2 * y;
        if (D % 4 == 1) {
            // The group of (U + W sqrt(D))/2 with U^2 - D W^2 = 4 can contain a
            // cube root of the Z[sqrt(D)] unit: U' then solves U'^3 - 3U' = 2x.
            Int target = 2 * x;
            Int c;
            mpz_root(c.get_mpz_t(), target.get_mpz_t(), 3);
            for (Int cand = c - 1; cand <= c + 2; ++cand) {
                if (cand < 2) continue;
                if (cand * cand * cand - 3 * cand == target) {
                    Int w2num = cand * cand - 4;
                    if (w2num % D == 0 && is_square(w2num / D)) {
                        U = cand;
                        W = isqrt_floor(w2num / D);
                        break;
                    }
                }
            }
        }
    }
    if (U * U - D * W * W != 4 || U <= 0 || W <= 0)
        throw std::logic_error("pell_fundamental: inconsistent solution");
    double eps = (to_double(U) + to_double(W) * std::sqrt(to_double(D))) / 2.0;
    return {D, U, W, eps, std::log(eps)};
}

Mat2 so_generator(const BQF& q) {
    Int D = q.disc();
    PellSolution p = pell_fundamental(D);
    Int half_minus = (p.U0 - q.s * p.W0) / 2;
    Int half_plus = (p.U0 + q.s * p.W0) / 2;
    Mat2 M{half_minus, q.r * p.W0, -q.t * p.W0, half_plus};
    if (M.det() != 1 || !(act(M, q) == q))
        throw std::logic_error("so_generator: generator does not preserve the form");
    return M;
}

bool is_reduced_indefinite(const BQF& q) {
    Int D = q.disc();
    if (D <= 0 || is_square(D)) return false;
    if (sgn(q.s) <= 0) return false;
    if (q.s * q.s >= D) return false;
    Int twoAbsR = 2 * abs(q.r);
    if (!((twoAbsR + q.s) * (twoAbsR + q.s) > D)) return false;
    Int diff = twoAbsR - q.s;
    if (sgn(diff) > 0 && diff * diff >= D) return false;
    return true;
}

namespace {

// One neighbor step (t, s', t') with its SL2 transform.
std::pair<BQF, Mat2> rho_step(const BQF& q) {
    const Int D = q.disc();
    const Int& t = q.t;
    if (sgn(t) == 0) throw std::domain_error("rho_step: degenerate form");
    Int sqD = isqrt_floor(D);
    Int twoAbsT = 2 * abs(t);
    Int sp;
    if (abs(t) > sqD) {
        // -|t| < s' <= |t|
        Int s0 = mod_floor(-q.s, twoAbsT);
        sp = (s0 > abs(t)) ? s0 - twoAbsT : s0;
    } else {
        // sqrt(D) - 2|t| < s' < sqrt(D)
        sp = sqD - mod_floor(sqD + q.s, twoAbsT);
    }
    Int m = (q.s + sp) / (2 * t);
    Int tp = t * m * m - q.s * m + q.r;
    Mat2 g{0, 1, -1, m};
    return {{t, sp, tp}, g};
}

}  // namespace

std::pair<BQF, Mat2> reduce_indefinite(const BQF& q) {
    Int D = q.disc();
    if (D <= 0 || is_square(D))
        throw std::domain_error("reduce_indefinite: discriminant must be positive and nonsquare");
    BQF cur = q;
    Mat2 g = Mat2::identity();
    for (int iter = 0; iter < 10000; ++iter) {
        if (is_reduced_indefinite(cur)) return {cur, g};
        auto [next, step] = rho_step(cur);
        cur = next;
        g = step * g;
    }
    throw std::logic_error("reduce_indefinite: did not terminate");
}

namespace {

std::vector<std::pair<BQF, Mat2>> cycle_with_transforms(const BQF& reduced) {
    std::vector<std::pair<BQF, Mat2>> cyc;
    BQF cur = reduced;
    Mat2 g = Mat2::identity();
    do {
        cyc.push_back({cur, g});
        auto [next, step] = rho_step(cur);
        cur = next;
        g = step * g;
        if (cyc.size() > 100000) throw std::logic_error("cycle did not close");
    } while (!(cur == reduced));
    return cyc;
}

}  // namespace

std::vector<BQF> reduce_indefinite_cycle(const BQF& q) {
    auto [red, g0] = reduce_indefinite(q);
    auto cyc = cycle_with_transforms(red);
    std::vector<BQF> forms;
    forms.reserve(cyc.size());
    for (auto& [f, g] : cyc) forms.push_back(f);
    auto smallest = std::min_element(forms.begin(), forms.end());
    std::rotate(forms.begin(), smallest, forms.end());
    return forms;
}

std::optional<Mat2> proper_transform(const BQF& q1, const BQF& q2) {
    if (q1.disc() != q2.disc()) return std::nullopt;
    auto [r1, g1] = reduce_indefinite(q1);
    auto [r2, g2] = reduce_indefinite(q2);
    for (auto& [f, h] : cycle_with_transforms(r1)) {
        if (f == r2) {
            // h*g1 . q1 = r2 = g2 . q2
            Mat2 g = g2.inverse() * h * g1;
            if (!(act(g, q1) == q2)) throw std::logic_error("proper_transform: bad transform");
            return g;
        }
    }
    return std::nullopt;
}

bool equivalent(const BQF& q1, const BQF& q2, EquivMode mode) {
    Int d1 = q1.disc(), d2 = q2.disc();
    if (d1 <= 0 || is_square(d1) || d2 <= 0 || is_square(d2))
        throw std::domain_error("equivalent: forms must be indefinite of nonsquare discriminant");
    if (d1 != d2) return false;
    if (proper_transform(q1, q2).has_value()) return true;
    if (mode == EquivMode::proper) return false;
    BQF w{q2.r, -q2.s, q2.t};
    BQF neg{-q2.r, -q2.s, -q2.t};
    BQF negw{-q2.r, q2.s, -q2.t};
    return proper_transform(q1, w).has_value() || proper_transform(q1, neg).has_value() ||
           proper_transform(q1, negw).has_value();
}

std::vector<QuadClass> classes_of_disc(const Int& D) {
    if (D <= 0 || is_square(D) || !(D % 4 == 0 || D % 4 == 1))
        throw std::domain_error("classes_of_disc: need nonsquare D > 0 with D = 0,1 mod 4");

    // All reduced primitive forms: 0 < s < sqrt(D), s = D mod 2, rt = (s^2-D)/4.
    std::vector<BQF> reduced;
    Int sqD = isqrt_floor(D);
    for (Int s = (D % 2 == 0) ? 2 : 1; s * s < D; s += 2) {
        Int rt = (s * s - D) / 4;  // negative
        Int n = -rt;
        for (const Int& r0 : [&] {
                 std::vector<Int> divs;
                 for (Int i = 1; i * i <= n; ++i)
                     if (n % i == 0) {
                         divs.push_back(i);
                         if (i * i != n) divs.push_back(n / i);
                     }
                 std::sort(divs.begin(), divs.end());
                 return divs;
             }()) {
            for (int sign_r : {1, -1}) {
                Int r = sign_r * r0;
                Int t = rt / r;
                BQF f{r, s, t};
                if (!is_reduced_indefinite(f)) continue;
                if (f.content() != 1) continue;
                reduced.push_back(f);
            }
        }
    }
    std::sort(reduced.begin(), reduced.end());

    // proper cycles
    std::map<std::string, int> cycle_of_form;
    std::vector<std::vector<BQF>> cycles;
    for (const BQF& f : reduced) {
        if (cycle_of_form.count(f.str())) continue;
        auto cyc = cycle_with_transforms(f);
        std::vector<BQF> forms;
        for (auto& [g, h] : cyc) {
            forms.push_back(g);
            cycle_of_form[g.str()] = static_cast<int>(cycles.size());
        }
        cycles.push_back(forms);
    }

    auto cycle_id = [&](const BQF& f) {
        auto [red, g] = reduce_indefinite(f);
        auto it = cycle_of_form.find(red.str());
        if (it == cycle_of_form.end()) throw std::logic_error("classes_of_disc: cycle lookup failed");
        return it->second;
    };

    // merge proper cycles under reflection and sign
    int n = static_cast<int>(cycles.size());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    auto unite = [&](int x, int y) { parent[find(x)] = find(y); };
    std::vector<bool> ambiguous(n, false);
    for (int i = 0; i < n; ++i) {
        const BQF& f = cycles[i][0];
        int iw = cycle_id({f.r, -f.s, f.t});
        int ineg = cycle_id({-f.r, -f.s, -f.t});
        int inegw = cycle_id({-f.r, f.s, -f.t});
        ambiguous[i] = (iw == i);
        unite(i, iw);
        unite(i, ineg);
        unite(i, inegw);
    }

    std::map<int, QuadClass> by_root;
    for (int i = 0; i < n; ++i) {
        int root = find(i);
        auto& cls = by_root[root];
        if (cls.reduced_forms.empty()) {
            cls.D = D;
            cls.ambiguous = ambiguous[i];
            cls.proper_cycles = 0;
        }
        cls.proper_cycles += 1;
        for (const BQF& f : cycles[i]) cls.reduced_forms.push_back(f);
    }

    std::vector<QuadClass> out;
    for (auto& [root, cls] : by_root) {
        std::sort(cls.reduced_forms.begin(), cls.reduced_forms.end());
        cls.rep = cls.reduced_forms.front();
        cls.normalized = normalize_rep(cls.rep).first;
        out.push_back(cls);
    }
    std::sort(out.begin(), out.end(),
              [](const QuadClass& x, const QuadClass& y) { return x.rep < y.rep; });
    for (size_t i = 0; i < out.size(); ++i)
        out[i].id = "D" + D.get_str() + "#" + std::to_string(i + 1);
    return out;
}

std::pair<BQF, Mat2> normalize_rep(const BQF& q) {
    Int D = q.disc();
    if (D <= 0 || is_square(D))
        throw std::domain_error("normalize_rep: discriminant must be positive and nonsquare");
    if (sgn(q.r) > 0 && sgn(q.t) > 0) return {q, Mat2::identity()};
    auto [red, g0] = reduce_indefinite(q);
    Int nmax = isqrt_floor(D) + 2;
    for (auto& [f, h] : cycle_with_transforms(red)) {
        if (sgn(f.r) <= 0) continue;
        for (Int nn = 0; nn <= nmax; ++nn) {
            Int tp = f.r * nn * nn + f.s * nn + f.t;
            if (sgn(tp) > 0) {
                Mat2 tr{1, 0, nn, 1};
                Mat2 g = tr * h * g0;
                BQF result = act(g, q);
                if (!(sgn(result.r) > 0 && sgn(result.t) > 0))
                    throw std::logic_error("normalize_rep: bad candidate");
                return {result, g};
            }
        }
    }
    throw std::runtime_error("normalize_rep: bounded search found no representative with r,t > 0");
}

GeodesicContext geodesic_context(const BQF& q) {
    Int D = q.disc();
    if (D <= 0) throw std::domain_error("geodesic_context: form must be indefinite");
    if (is_square(D))
        throw std::domain_error("geodesic_context: square discriminant (vertical geodesic) excluded");
    if (!(sgn(q.r) > 0 && sgn(q.t) > 0))
        throw std::domain_error("geodesic_context: form must be normalized with r, t > 0");
    GeodesicContext ctx{q, D, pell_fundamental(D), Mat2::identity(), Mat2::identity(),
                        Mat2::identity(), QuadSurd(Rat(0), Rat(0), D), QuadSurd(Rat(0), Rat(0), D),
                        0, 0, 0, 0, 0, 0, 0};
    ctx.gen = so_generator(q);
    ctx.gen3 = ctx.gen.pow(3);
    ctx.gen3_inv = ctx.gen3.inverse();
    ctx.eps0 = QuadSurd(make_rat(ctx.pell.U0, Int(2)), make_rat(ctx.pell.W0, Int(2)), D);
    ctx.eps6 = ctx.eps0.pow(6);
    ctx.sqrtD = std::sqrt(to_double(D));
    double s = to_double(q.s), r = to_double(q.r), t = to_double(q.t);
    ctx.theta_plus = (s + ctx.sqrtD) / (2 * t);
    ctx.theta_minus = (s - ctx.sqrtD) / (2 * t);
    ctx.rho_plus = (-s + ctx.sqrtD) / (2 * r);
    ctx.rho_minus = (-s - ctx.sqrtD) / (2 * r);
    ctx.log_eps0 = ctx.pell.log_eps0;
    ctx.period = 2 * ctx.pell.log_eps0;
    return ctx;
}

std::pair<double, double> flow_coordinate(const GeodesicContext& ctx, std::complex<double> z) {
    // P^T maps gamma_Q to the positive imaginary axis (rho_+ -> 0, rho_- -> inf)
    std::complex<double> w = (ctx.theta_plus * z + 1.0) / (ctx.theta_minus * z + 1.0);
    double residual = std::abs(w.real()) / std::abs(w);
    if (!(residual <= 1e-6))
        throw std::domain_error("flow_coordinate: point not on the geodesic (residual " +
                                std::to_string(residual) + ")");
    if (!(w.imag() > 0)) throw std::domain_error("flow_coordinate: image not in upper half plane");
    double u = std::log(w.imag());
    double tau = std::fmod(u / ctx.period, 1.0);
    if (tau < 0) tau += 1.0;
    return {tau, residual};
}

std::complex<double> gauss_reduce_float(std::complex<double> z) {
    for (int i = 0; i < 10000; ++i) {
        double x = z.real(), y = z.imag();
        double k = std::round(x);
        x -= k;
        if (x < 0) x = -x;
        double n = x * x + y * y;
        if (n < 1.0 - 1e-15) {
            z = std::complex<double>(x / n, y / n);  // -1/z followed by reflection
            continue;
        }
        return {x, y};
    }
    throw std::logic_error("gauss_reduce_float: did not terminate");
}

std::vector<std::complex<double>> geodesic_arc_samples(const GeodesicContext& ctx, int n) {
    if (n < 2) throw std::domain_error("geodesic_arc_samples: need n >= 2");
    std::vector<std::complex<double>> out;
    out.reserve(n);
    for (int k = 0; k < n; ++k) {
        // flow position alpha = eps0^{-k/(n-1)}, z = alpha^2 i on gamma_{Q0}
        double y = std::exp(-2.0 * k * ctx.log_eps0 / (n - 1));
        std::complex<double> z(0.0, y);
        std::complex<double> zeta = (z - 1.0) / (ctx.theta_plus - ctx.theta_minus * z);
        out.push_back(gauss_reduce_float(zeta));
    }
    return out;
}

std::complex<double> moebius_star(const Mat2& g, std::complex<double> z) {
    Mat2 h = g.inverse();
    // (h)^T acts by fractional linear transformation
    double a = to_double(h.a), b = to_double(h.c), c = to_double(h.b), d = to_double(h.d);
    if (g.det() < 0) z = std::conj(z);
    return (a * z + b) / (c * z + d);
}

}  // namespace cubeshape
