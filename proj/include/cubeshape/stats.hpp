#pragma once

#include <string>
#include <vector>

#include "cubeshape/enumerate.hpp"

namespace cubeshape {

// disjoint half-open subintervals of [0,1) in the tau coordinate
struct WindowSet {
    std::vector<std::pair<double, double>> intervals;

    bool contains(double tau) const;
    double total_length() const;
    static WindowSet parse(const std::string& spec);  // "lo:hi,lo:hi,..."
};

// C_D = 3 sqrt(3) log(eps0) / (3^{alpha_D} D), alpha_D = 1 if 3|D else 2
double cd_constant(const Int& D);

// count / (C_D sqrt(X)); 0 for an empty batch
double count_vs_asymptotic(const std::vector<FieldRecord>& records, const Int& xmax);

// sup_t |F_emp(t) - t| against the uniform law on [0,1)
double ks_uniform(std::vector<double> taus);

long window_count(const std::vector<FieldRecord>& records, const WindowSet& w);

struct AuditFailure {
    BinaryCubicForm form;
    std::string reason;
};
struct AuditResult {
    long passed = 0;
    long failed = 0;
    long skipped = 0;
    std::vector<AuditFailure> failures;
};

// Theorem-D check: for every maximal record with 3 | resolvent_disc,
// ord_3 of the primitive trace-zero form's discriminant must be 0 when 3 is
// wild and 2 when 3 is tame.
AuditResult tame_wild_audit(const std::vector<FieldRecord>& records);

// minimum distance between reduced shapes of records that differ in
// class_id, disc or form (identical triples are treated as the same field)
double shape_separation(const std::vector<FieldRecord>& records);

struct StatsSummary {
    Int D = 0;
    std::string class_id;
    Int X = 0;
    long count_oriented = 0;
    long count_unoriented = 0;
    double c_d = 0;
    double count_over_sqrtX = 0;
    double ks_statistic = 0;
    std::vector<long> histogram;
    long audit_passed = 0;
    long audit_failed = 0;
    double min_shape_separation = 0;  // 0 when fewer than 2 records
    long window_records = -1;
    double window_length = 0;
};

StatsSummary summarize(const std::vector<FieldRecord>& records, const Int& xmax, int bins,
                       const WindowSet* window = nullptr);

std::string summary_to_json(const StatsSummary& s);
std::string histogram_csv(const StatsSummary& s);

}  // namespace cubeshape
