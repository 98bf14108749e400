#include "cubeshape/stats.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cubeshape/quadform.hpp"

namespace cubeshape {

bool WindowSet::contains(double tau) const {
    for (const auto& [lo, hi] : intervals)
        if (tau >= lo && tau < hi) return true;
    return false;
}

double WindowSet::total_length() const {
    double s = 0;
    for (const auto& [lo, hi] : intervals) s += hi - lo;
    return s;
}

WindowSet WindowSet::parse(const std::string& spec) {
    WindowSet w;
    if (spec.empty()) return w;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ',')) {
        auto colon = part.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("window: expected lo:hi at '" + part + "'");
        double lo = std::stod(part.substr(0, colon));
        double hi = std::stod(part.substr(colon + 1));
        if (!(0 <= lo && lo <= hi && hi <= 1))
            throw std::invalid_argument("window: need 0 <= lo <= hi <= 1 in '" + part + "'");
        w.intervals.push_back({lo, hi});
    }
    // disjointness
    auto sorted = w.intervals;
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i].first < sorted[i - 1].second)
            throw std::invalid_argument("window: intervals overlap");
    return w;
}

double cd_constant(const Int& D) {
    if (D <= 0 || is_square(D)) throw std::domain_error("cd_constant: D must be positive nonsquare");
    PellSolution p = pell_fundamental(D);
    int alpha = (D % 3 == 0) ? 1 : 2;
    return 3.0 * std::sqrt(3.0) * p.log_eps0 / (std::pow(3.0, alpha) * to_double(D));
}

double count_vs_asymptotic(const std::vector<FieldRecord>& records, const Int& xmax) {
    if (records.empty()) return 0.0;
    Int D = records.front().tzf.disc();
    double cd = cd_constant(D);
    return static_cast<double>(records.size()) / (cd * std::sqrt(to_double(xmax)));
}

double ks_uniform(std::vector<double> taus) {
    if (taus.empty()) throw std::domain_error("ks_uniform: empty sample");
    std::sort(taus.begin(), taus.end());
    size_t n = taus.size();
    double d = 0;
    for (size_t i = 0; i < n; ++i) {
        d = std::max(d, static_cast<double>(i + 1) / n - taus[i]);
        d = std::max(d, taus[i] - static_cast<double>(i) / n);
    }
    return d;
}

long window_count(const std::vector<FieldRecord>& records, const WindowSet& w) {
    long n = 0;
    for (const auto& r : records)
        if (w.contains(r.tau)) ++n;
    return n;
}

AuditResult tame_wild_audit(const std::vector<FieldRecord>& records) {
    AuditResult res;
    for (const auto& rec : records) {
        if (!rec.maximal) {
            ++res.skipped;
            continue;
        }
        Int resolvent = resolvent_disc(rec.form);
        if (resolvent % 3 != 0) {
            ++res.skipped;
            continue;
        }
        ThreeClass cls;
        try {
            cls = classify_3(rec.form);
        } catch (const std::exception& e) {
            ++res.failed;
            res.failures.push_back({rec.form, e.what()});
            continue;
        }
        auto [tzf, content] = primitive_tzf(rec.form);
        int v3 = ord_p(tzf.disc(), 3);
        bool ok = (cls == ThreeClass::wild && v3 == 0) || (cls == ThreeClass::tame && v3 == 2);
        if (ok) {
            ++res.passed;
        } else {
            ++res.failed;
            std::ostringstream os;
            os << "three_class=" << three_class_name(cls) << " but ord_3(disc tzf)=" << v3;
            res.failures.push_back({rec.form, os.str()});
        }
    }
    return res;
}

double shape_separation(const std::vector<FieldRecord>& records) {
    if (records.size() < 2) throw std::domain_error("shape_separation: need at least 2 records");
    auto same_field = [](const FieldRecord& x, const FieldRecord& y) {
        return x.class_id == y.class_id && x.disc_value == y.disc_value && x.form == y.form;
    };
    double best = -1;
    for (size_t i = 0; i < records.size(); ++i)
        for (size_t j = i + 1; j < records.size(); ++j) {
            if (same_field(records[i], records[j])) continue;
            double dx = records[i].shape_x - records[j].shape_x;
            double dy = records[i].shape_y - records[j].shape_y;
            double d = std::hypot(dx, dy);
            if (best < 0 || d < best) best = d;
        }
    if (best < 0) throw std::domain_error("shape_separation: no pair of distinct fields");
    return best;
}

StatsSummary summarize(const std::vector<FieldRecord>& records, const Int& xmax, int bins,
                       const WindowSet* window) {
    StatsSummary s;
    s.X = xmax;
    std::set<std::string> ids;
    for (const auto& r : records) ids.insert(r.class_id);
    s.class_id = ids.empty() ? "" : (ids.size() == 1 ? *ids.begin() : "pooled");
    if (!records.empty()) {
        s.D = records.front().tzf.disc();
        s.c_d = cd_constant(s.D);
    }
    for (const auto& r : records) (r.oriented ? s.count_oriented : s.count_unoriented) += 1;
    long total = s.count_oriented + s.count_unoriented;
    if (!records.empty() && sgn(xmax) > 0)
        s.count_over_sqrtX = total / (s.c_d * std::sqrt(to_double(xmax)));
    if (!records.empty()) {
        std::vector<double> taus;
        taus.reserve(records.size());
        for (const auto& r : records) taus.push_back(r.tau);
        s.ks_statistic = ks_uniform(taus);
    }
    if (bins > 0) {
        s.histogram.assign(bins, 0);
        for (const auto& r : records) {
            int k = std::min(static_cast<int>(r.tau * bins), bins - 1);
            s.histogram[k] += 1;
        }
    }
    AuditResult audit = tame_wild_audit(records);
    s.audit_passed = audit.passed;
    s.audit_failed = audit.failed;
    if (records.size() >= 2) {
        try {
            s.min_shape_separation = shape_separation(records);
        } catch (const std::domain_error&) {
            s.min_shape_separation = 0;
        }
    }
    if (window) {
        s.window_records = window_count(records, *window);
        s.window_length = window->total_length();
    }
    return s;
}

std::string summary_to_json(const StatsSummary& s) {
    nlohmann::ordered_json j;
    j["D"] = to_i64_checked(s.D);
    j["class_id"] = s.class_id;
    j["X"] = to_i64_checked(s.X);
    j["count_oriented"] = s.count_oriented;
    j["count_unoriented"] = s.count_unoriented;
    j["c_d"] = s.c_d;
    j["count_over_sqrtX"] = s.count_over_sqrtX;
    j["ks_statistic"] = s.ks_statistic;
    j["histogram"] = s.histogram;
    j["tame_wild_audit"] = {{"passed", s.audit_passed}, {"failed", s.audit_failed}};
    j["min_shape_separation"] = s.min_shape_separation;
    if (s.window_records >= 0) {
        j["window_records"] = s.window_records;
        j["window_length"] = s.window_length;
    }
    return j.dump();
}

std::string histogram_csv(const StatsSummary& s) {
    std::ostringstream os;
    os << "bin_start,count\n";
    int bins = static_cast<int>(s.histogram.size());
    for (int i = 0; i < bins; ++i) {
        os << nlohmann::json(static_cast<double>(i) / bins).dump() << "," << s.histogram[i]
           << "\n";
    }
    return os.str();
}

}  // namespace cubeshape
