#include "cubeshape/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <set>
#include <thread>

#include "cubeshape/number_field.hpp"
#include "cubeshape/shape.hpp"

namespace cubeshape {

std::optional<LatticePoint> vq_membership(const Int& b, const Int& c, const BQF& q) {
    Int qp = q.adjoint().eval(b, c);  // t b^2 - s b c + r c^2
    if (sgn(qp) * sgn(q.r * q.t) <= 0) return std::nullopt;
    Int m1 = 3 * abs(q.t), m2 = 3 * abs(q.r);
    if (mod_floor(q.s * b - q.r * c, m1) != 0) return std::nullopt;
    if (mod_floor(q.s * c - q.t * b, m2) != 0) return std::nullopt;
    LatticePoint pt;
    pt.b = b;
    pt.c = c;
    pt.a = (q.s * b - q.r * c) / (3 * q.t);
    pt.d = (q.s * c - q.t * b) / (3 * q.r);
    return pt;
}

Int delta_v(const Int& b, const Int& c, const BQF& q) {
    Int qp = q.adjoint().eval(b, c);
    Int num = -qp * qp * q.disc();
    Int den = 3 * q.r * q.r * q.t * q.t;
    if (num % den != 0) throw std::domain_error("delta_v: non-integral value (membership violated)");
    return num / den;
}

RatioPosition ratio_compare(const Int& b, const Int& c, const GeodesicContext& geo) {
    const BQF& q = geo.q;
    // 2t u = (2tb - sc) - c sqrt(D), 2t w = (2tb - sc) + c sqrt(D); t > 0
    Rat p = Rat(2 * q.t * b - q.s * c);
    QuadSurd u(p, Rat(-c), geo.D);
    QuadSurd w(p, Rat(c), geo.D);
    int su = u.sign();
    if (su == 0 || w.sign() == 0)
        throw std::domain_error("ratio_compare: ratio undefined");
    RatioPosition pos;
    pos.sign_u = su;
    pos.cmp_one = (w - u).sign() * su;
    pos.cmp_eps6 = (w - geo.eps6 * u).sign() * su;
    return pos;
}

LatticePoint canonicalize(const Int& b0, const Int& c0, const GeodesicContext& geo) {
    Int b = b0, c = c0;
    auto member = vq_membership(b, c, geo.q);
    if (!member) throw std::domain_error("canonicalize: point not in V_Z^(Q)");
    RatioPosition pos = ratio_compare(b, c, geo);
    if (pos.sign_u < 0) {
        b = -b;
        c = -c;
        pos = ratio_compare(b, c, geo);
    }
    auto apply = [&](const Mat2& m) {
        Int nb = m.a * b + m.b * c;
        Int nc = m.c * b + m.d * c;
        b = nb;
        c = nc;
    };
    // rough step count from floats, then exact fix-up
    {
        double uf = to_double(b) - geo.theta_plus * to_double(c);
        double wf = to_double(b) - geo.theta_minus * to_double(c);
        if (uf != 0 && wf / uf > 0) {
            double k = std::floor(std::log(wf / uf) / (6.0 * geo.log_eps0));
            if (std::abs(k) > 1 && std::abs(k) < 1e6)
                apply(geo.gen3.pow(static_cast<int>(k)));
        }
    }
    for (int iter = 0; iter < 100000; ++iter) {
        pos = ratio_compare(b, c, geo);
        if (pos.sign_u < 0) {
            b = -b;
            c = -c;
            continue;
        }
        if (pos.cmp_one < 0) {
            apply(geo.gen3_inv);  // multiplies ratio by eps0^6
            continue;
        }
        if (pos.cmp_eps6 >= 0) {
            apply(geo.gen3);  // divides ratio by eps0^6
            continue;
        }
        auto m = vq_membership(b, c, geo.q);
        if (!m) throw std::logic_error("canonicalize: orbit left the lattice");
        return *m;
    }
    throw std::logic_error("canonicalize: did not terminate");
}

namespace {

// progression c = e (mod m) solving both membership congruences for fixed b,
// or nullopt when unsolvable
std::optional<std::pair<Int, Int>> congruence_progression(const Int& b, const BQF& q) {
    auto solve = [](const Int& coef, const Int& rhs, const Int& mod)
        -> std::optional<std::pair<Int, Int>> {
        // coef * c = rhs (mod mod), mod > 0
        Int g;
        mpz_gcd(g.get_mpz_t(), coef.get_mpz_t(), mod.get_mpz_t());
        if (mod_floor(rhs, g) != 0) return std::nullopt;
        Int m = mod / g;
        if (m == 1) return std::make_pair(Int(0), Int(1));
        Int cg = mod_floor(coef / g, m), rg = mod_floor(rhs / g, m);
        Int inv;
        if (mpz_invert(inv.get_mpz_t(), cg.get_mpz_t(), m.get_mpz_t()) == 0)
            throw std::logic_error("congruence_progression: inverse failed");
        return std::make_pair(mod_floor(inv * rg, m), m);
    };
    auto p1 = solve(q.r, q.s * b, 3 * abs(q.t));
    if (!p1) return std::nullopt;
    auto p2 = solve(q.s, q.t * b, 3 * abs(q.r));
    if (!p2) return std::nullopt;
    // CRT merge
    auto [e1, m1] = *p1;
    auto [e2, m2] = *p2;
    Int g;
    mpz_gcd(g.get_mpz_t(), m1.get_mpz_t(), m2.get_mpz_t());
    if (mod_floor(e2 - e1, g) != 0) return std::nullopt;
    Int lcm = m1 / g * m2;
    Int m2g = m2 / g;
    Int inv;
    if (m2g == 1) return std::make_pair(mod_floor(e1, lcm), lcm);
    Int m1g = mod_floor(m1 / g, m2g);
    if (mpz_invert(inv.get_mpz_t(), m1g.get_mpz_t(), m2g.get_mpz_t()) == 0)
        throw std::logic_error("congruence_progression: CRT inverse failed");
    Int k = mod_floor((e2 - e1) / g * inv, m2g);
    return std::make_pair(mod_floor(e1 + m1 * k, lcm), lcm);
}

struct ScanBox {
    Int b_lo, b_hi;
    double B;  // Q' upper bound as a float (candidates re-checked exactly)
};

// bounding box in (b, c) of the sector {0 < Q' <= B, ratio_min <= ratio <
// ratio_max, u > 0}: u <= sqrt(B/(t ratio_min)), w <= sqrt(B ratio_max / t)
ScanBox scan_box(const BQF& q, const Int& xmax, double log_ratio_min, double log_ratio_max) {
    Int D = q.disc();
    double rd = to_double(q.r), td = to_double(q.t), Dd = to_double(D);
    double X = to_double(xmax);
    double B = rd * td * std::sqrt(3.0 * X / Dd);
    double sqD = std::sqrt(Dd);
    double theta_p = (to_double(q.s) + sqD) / (2 * td);
    double theta_m = (to_double(q.s) - sqD) / (2 * td);
    double u_max = std::sqrt(B / td) * std::exp(-0.5 * log_ratio_min);
    double w_max = std::sqrt(B / td) * std::exp(0.5 * log_ratio_max);
    double span = theta_p - theta_m;
    double b_min = (std::min(0.0, theta_p * w_max) + std::min(0.0, -theta_m * u_max)) / span;
    double b_max = (std::max(0.0, theta_p * w_max) + std::max(0.0, -theta_m * u_max)) / span;
    if (!(b_max - b_min < 2e8))
        throw std::runtime_error("enumerate: scan region too large for this D and X");
    ScanBox box;
    box.b_lo = Int(static_cast<long>(std::floor(b_min))) - 2;
    box.b_hi = Int(static_cast<long>(std::ceil(b_max))) + 2;
    box.B = B;
    return box;
}

// the two c-intervals where 0 < Q'(b, c) <= B, padded by one
std::vector<std::pair<Int, Int>> row_intervals(const BQF& q, const Int& b, double B) {
    double rd = to_double(q.r), sd = to_double(q.s), Dd = to_double(q.disc());
    double bd = to_double(b);
    double inner = std::sqrt(std::max(Dd * bd * bd, 0.0));
    double outer = std::sqrt(std::max(Dd * bd * bd + 4 * rd * B, 0.0));
    auto toint = [](double x, bool up) {
        return Int(static_cast<long>(up ? std::ceil(x) : std::floor(x)));
    };
    Int lo1 = toint((sd * bd - outer) / (2 * rd), false) - 1;
    Int hi1 = toint((sd * bd - inner) / (2 * rd), true) + 1;
    Int lo2 = toint((sd * bd + inner) / (2 * rd), false) - 1;
    Int hi2 = toint((sd * bd + outer) / (2 * rd), true) + 1;
    if (lo2 <= hi1 + 1) return {{lo1, hi2}};
    return {{lo1, hi1}, {lo2, hi2}};
}

bool delta_below(const BQF& q, const Int& qp, const Int& xmax) {
    // |Delta| = Q'^2 D / (3 r^2 t^2) < X
    return qp * qp * q.disc() < 3 * q.r * q.r * q.t * q.t * xmax;
}

void validate_enum_form(const BQF& q) {
    Int D = q.disc();
    if (D <= 0 || is_square(D))
        throw std::domain_error(
            "enumerate: discriminant must be positive and nonsquare (pure cubic cases excluded)");
    if (!(sgn(q.r) > 0 && sgn(q.t) > 0))
        throw std::domain_error("enumerate: form must be normalized with r, t > 0");
    if (q.content() != 1) throw std::domain_error("enumerate: form must be primitive");
}

void sort_records(std::vector<FieldRecord>& records) {
    std::sort(records.begin(), records.end(), [](const FieldRecord& x, const FieldRecord& y) {
        Int ax = abs(x.disc_value), ay = abs(y.disc_value);
        if (ax != ay) return ax < ay;
        if (x.point_b != y.point_b) return x.point_b < y.point_b;
        return x.point_c < y.point_c;
    });
}

std::string default_class_id(const BQF& q, const std::string& given) {
    if (!given.empty()) return given;
    return "D" + q.disc().get_str();
}

}  // namespace

FieldRecord build_record(const LatticePoint& pt, const BQF& q, const GeodesicContext& geo,
                         const std::string& class_id) {
    FieldRecord rec;
    rec.form = {pt.a, pt.b, pt.c, pt.d};
    rec.point_b = pt.b;
    rec.point_c = pt.c;
    rec.disc_value = delta_v(pt.b, pt.c, q);
    if (rec.disc_value != disc(rec.form))
        throw std::logic_error("build_record: Delta(b,c) != disc(form)");
    auto [tzf, content] = primitive_tzf(rec.form);
    if (!(tzf == q))
        throw std::logic_error("build_record: primitive trace-zero form differs from Q");
    rec.tzf = tzf;
    rec.content = content;
    rec.resolvent = resolvent_disc(rec.form);
    rec.maximal = is_maximal(rec.form);
    rec.three_class = classify_3_relaxed(rec.form);
    rec.class_id = class_id;
    rec.oriented = true;

    ContextPtr ctx = NumberFieldContext::create(rec.form);
    ShapeGram sg = shape_gram(rec.form, ctx);
    ShapePoint raw = shape_point(sg);
    auto [red, transform] = reduce_to_gauss(sg);
    ShapePoint reduced = shape_point(red);
    rec.shape_x = reduced.x_float;
    rec.shape_y = reduced.y_float;
    auto [tau, residual] =
        flow_coordinate(geo, std::complex<double>(-raw.x_float, raw.y_float));
    rec.tau = tau;
    rec.flow_residual = residual;
    return rec;
}

namespace {

// scan rows [b_lo, b_hi] keeping lattice points that pass `keep`
template <typename Keep>
void scan_rows(const BQF& q, const Int& b_lo, const Int& b_hi, double B, const Int& xmax,
               const Keep& keep, std::vector<LatticePoint>& out) {
    for (Int b = b_lo; b <= b_hi; ++b) {
        auto prog = congruence_progression(b, q);
        if (!prog) continue;
        auto [e, m] = *prog;
        for (auto [clo, chi] : row_intervals(q, b, B)) {
            Int c = clo + mod_floor(e - clo, m);
            for (; c <= chi; c += m) {
                auto member = vq_membership(b, c, q);
                if (!member) continue;
                Int qp = q.adjoint().eval(b, c);
                if (!delta_below(q, qp, xmax)) continue;
                if (!keep(*member)) continue;
                out.push_back(*member);
            }
        }
    }
}

std::vector<FieldRecord> build_all(const std::vector<LatticePoint>& pts, const BQF& q,
                                   const GeodesicContext& geo, const EnumOptions& opts) {
    std::string cid = default_class_id(q, opts.class_id);
    std::vector<FieldRecord> records(pts.size());
    int nthreads = std::max(1, opts.threads);
    if (nthreads == 1) {
        for (size_t i = 0; i < pts.size(); ++i) records[i] = build_record(pts[i], q, geo, cid);
    } else {
        std::vector<std::thread> workers;
        std::atomic<size_t> next{0};
        for (int t = 0; t < nthreads; ++t)
            workers.emplace_back([&] {
                for (size_t i = next.fetch_add(1); i < pts.size(); i = next.fetch_add(1))
                    records[i] = build_record(pts[i], q, geo, cid);
            });
        for (auto& w : workers) w.join();
    }
    return records;
}

}  // namespace

std::vector<FieldRecord> enumerate_oriented(const BQF& q, const Int& xmax,
                                            const EnumOptions& opts) {
    validate_enum_form(q);
    if (sgn(xmax) <= 0) throw std::domain_error("enumerate: xmax must be positive");
    GeodesicContext geo = geodesic_context(q);
    ScanBox box = scan_box(q, xmax, 0.0, 6.0 * geo.log_eps0);

    // independent row ranges per thread, deterministic merge
    int nthreads = std::max(1, opts.threads);
    std::vector<std::vector<LatticePoint>> found(nthreads);
    auto keep = [&](const LatticePoint& pt) {
        RatioPosition pos = ratio_compare(pt.b, pt.c, geo);
        if (pos.sign_u <= 0 || pos.cmp_one < 0 || pos.cmp_eps6 >= 0) return false;
        return is_irreducible({pt.a, pt.b, pt.c, pt.d});
    };
    if (nthreads == 1) {
        scan_rows(q, box.b_lo, box.b_hi, box.B, xmax, keep, found[0]);
    } else {
        Int span = box.b_hi - box.b_lo + 1;
        std::vector<std::thread> workers;
        for (int t = 0; t < nthreads; ++t)
            workers.emplace_back([&, t] {
                Int lo = box.b_lo + span * t / nthreads;
                Int hi = box.b_lo + span * (t + 1) / nthreads - 1;
                scan_rows(q, lo, hi, box.B, xmax, keep, found[t]);
            });
        for (auto& w : workers) w.join();
    }
    std::vector<LatticePoint> pts;
    for (auto& f : found) pts.insert(pts.end(), f.begin(), f.end());

    std::vector<FieldRecord> records = build_all(pts, q, geo, opts);
    if (opts.maximal_only)
        records.erase(std::remove_if(records.begin(), records.end(),
                                     [](const FieldRecord& r) { return !r.maximal; }),
                      records.end());
    sort_records(records);
    return records;
}

std::vector<FieldRecord> brute_force_oracle(const BQF& q, const Int& xmax,
                                            const EnumOptions& opts) {
    validate_enum_form(q);
    if (sgn(xmax) <= 0) throw std::domain_error("brute_force_oracle: xmax must be positive");
    GeodesicContext geo = geodesic_context(q);
    // box covering ratio in [eps0^-6, eps0^12): every orbit contributes at
    // least three points here whatever the cone slicing does
    ScanBox box = scan_box(q, xmax, -6.0 * geo.log_eps0, 12.0 * geo.log_eps0);
    std::set<std::pair<Int, Int>> canonical;
    std::vector<LatticePoint> members;
    scan_rows(q, box.b_lo, box.b_hi, box.B, xmax, [](const LatticePoint&) { return true; },
              members);
    for (const auto& pt : members) {
        LatticePoint can = canonicalize(pt.b, pt.c, geo);
        if (!is_irreducible({can.a, can.b, can.c, can.d})) continue;
        canonical.insert({can.b, can.c});
    }
    std::vector<LatticePoint> pts;
    for (const auto& [b, c] : canonical) {
        auto m = vq_membership(b, c, q);
        if (!m) throw std::logic_error("brute_force_oracle: canonical point not a member");
        pts.push_back(*m);
    }
    std::vector<FieldRecord> records = build_all(pts, q, geo, opts);
    if (opts.maximal_only)
        records.erase(std::remove_if(records.begin(), records.end(),
                                     [](const FieldRecord& r) { return !r.maximal; }),
                      records.end());
    sort_records(records);
    return records;
}

std::vector<FieldRecord> to_unoriented(const std::vector<FieldRecord>& records, const BQF& q,
                                       bool ambiguous) {
    std::vector<FieldRecord> out;
    if (!ambiguous) {
        out = records;
        for (auto& r : out) r.oriented = false;
        return out;
    }
    GeodesicContext geo = geodesic_context(q);
    // improper automorph g of Q: g = h w with h . (wQ) = Q
    BQF wq{q.r, -q.s, q.t};
    auto h = proper_transform(wq, q);
    if (!h) throw std::logic_error("to_unoriented: class marked ambiguous but wQ not equivalent");
    Mat2 w{-1, 0, 0, 1};
    Mat2 g = (*h) * w;
    if (!(act(g, q) == q) || g.det() != -1)
        throw std::logic_error("to_unoriented: bad improper automorph");

    std::map<std::pair<Int, Int>, const FieldRecord*> by_point;
    for (const auto& r : records) by_point[{r.point_b, r.point_c}] = &r;
    for (const auto& r : records) {
        BinaryCubicForm mate = act(g, r.form);
        LatticePoint partner = canonicalize(mate.b, mate.c, geo);
        auto key = std::make_pair(partner.b, partner.c);
        auto self = std::make_pair(r.point_b, r.point_c);
        if (key == self)
            throw std::domain_error(
                "to_unoriented: self-paired record (boundary shape or bug), count would be odd");
        if (!by_point.count(key))
            throw std::domain_error("to_unoriented: orientation partner missing from stream");
        if (self < key) {
            out.push_back(r);
            out.back().oriented = false;
        }
    }
    if (2 * out.size() != records.size())
        throw std::domain_error("to_unoriented: odd oriented count in the ambiguous case");
    sort_records(out);
    return out;
}

}  // namespace cubeshape
