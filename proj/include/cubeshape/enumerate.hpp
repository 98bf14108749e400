#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cubeshape/cubic_form.hpp"
#include "cubeshape/quadform.hpp"

namespace cubeshape {

// Member of V_Z^(Q) with the derived cubic form coefficients.
struct LatticePoint {
    Int b, c;
    Int a, d;
};

// Membership in V_Z^(Q): Q'(b,c)/(rt) > 0, sb = rc mod 3t, sc = tb mod 3r.
// Returns (a, d) = ((sb-rc)/3t, (sc-tb)/3r) on success.
std::optional<LatticePoint> vq_membership(const Int& b, const Int& c, const BQF& q);

// Delta(b,c) = -Q'(b,c)^2 Delta(Q) / (3 r^2 t^2); throws when not integral.
Int delta_v(const Int& b, const Int& c, const BQF& q);

// Exact position of ratio(v) = (x - theta_- y)/(x - theta_+ y) relative to
// the fundamental cone window [1, eps0^6), plus the sign of x - theta_+ y.
struct RatioPosition {
    int sign_u;    // sign of x - theta_+ y
    int cmp_one;   // sign of ratio - 1
    int cmp_eps6;  // sign of ratio - eps0^6
};
RatioPosition ratio_compare(const Int& b, const Int& c, const GeodesicContext& geo);

// Unique orbit representative with 1 <= ratio < eps0^6 and x - theta_+ y > 0,
// reached by the twisted cubic action of the SO_Q(Z) generator and -1.
LatticePoint canonicalize(const Int& b, const Int& c, const GeodesicContext& geo);

struct FieldRecord {
    BinaryCubicForm form;
    Int point_b, point_c;
    Int disc_value;
    Int resolvent;
    BQF tzf;
    Int content;
    double shape_x = 0, shape_y = 0;  // Gauss-reduced shape
    double tau = 0;
    double flow_residual = 0;
    ThreeClass three_class = ThreeClass::invalid;
    bool maximal = false;
    bool irreducible = true;
    std::string class_id;
    bool oriented = true;
};

struct EnumOptions {
    bool maximal_only = false;
    int threads = 1;
    std::string class_id;  // stamped on records; defaults to "D{D}"
};

// One record per SO_Q(Z)-orbit of irreducible members with |Delta| < xmax,
// sorted by (|Delta|, b, c). Q must be primitive, normalized with r, t > 0,
// of nonsquare discriminant.
std::vector<FieldRecord> enumerate_oriented(const BQF& q, const Int& xmax,
                                            const EnumOptions& opts = {});

// Independent verification path: scans a box covering three fundamental
// windows of the cone, canonicalizes every member and deduplicates. Must
// agree with enumerate_oriented record for record.
std::vector<FieldRecord> brute_force_oracle(const BQF& q, const Int& xmax,
                                            const EnumOptions& opts = {});

// Orientation dedup. For an ambiguous class each field appears twice among
// oriented records (partners swapped by an improper automorph of Q); keep one
// per pair. Non-ambiguous classes pass through. Output marked oriented=false.
std::vector<FieldRecord> to_unoriented(const std::vector<FieldRecord>& records, const BQF& q,
                                       bool ambiguous);

// Full record for one lattice point (exact shape, flow coordinate, filters).
FieldRecord build_record(const LatticePoint& pt, const BQF& q, const GeodesicContext& geo,
                         const std::string& class_id);

}  // namespace cubeshape
