#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hso/spaces.hpp"

namespace hso {

// One face of the polytope Q, addressed by the subset delta of the
// fundamental system F u {highest root}. fund holds the indices i of the
// chosen lambda_i (lambda_i = e_i - e_{i+1} for i < n, lambda_n = e_n);
// with_delta records whether the highest root 2e_1 is in the subset.
// sample is the rational barycenter; the two subsets with fund empty both
// sample the apex H = 0.
struct FaceDescriptor {
    std::vector<int> fund;
    bool with_delta = false;
    OrbitPoint sample;
};

std::vector<FaceDescriptor> faces(const SpaceDescriptor& s);

struct ActiveRoots {
    std::vector<RestrictedRoot> active;     // lambda(H) not a multiple of pi
    std::vector<RestrictedRoot> zero_part;  // lambda(H) = 0
    std::vector<RestrictedRoot> pi_part;    // lambda(H) = pi
};

ActiveRoots active_roots(const SpaceDescriptor& s, const OrbitPoint& H);

struct CRSplit {
    std::vector<RestrictedRoot> cr_complex;
    std::vector<RestrictedRoot> cr_real;
};

// Partition of the active roots by the J-action: 2e_i is always real,
// e_i is always complex, and e_i+-e_j is complex exactly when its partner
// e_i-+e_j is active too.
CRSplit cr_split(const SpaceDescriptor& s, const OrbitPoint& H);

enum class CRType { fixed_point, complex_polar, totally_real_lagrangian, proper_CR };

std::string to_string(CRType t);

// H on the open edge C_i(t) = (1-t) Q_i + t Q_{i+1}, 0 < t < 1
struct SegmentPosition {
    int i = 0;
    Rational t;
};

struct ContactStatus {
    int real_rank = 0;
    bool contact = false;
    std::optional<SegmentPosition> segment;
};

ContactStatus contact_status(const SpaceDescriptor& s, const OrbitPoint& H);

struct OrbitReport {
    std::vector<RestrictedRoot> active;
    std::vector<RestrictedRoot> cr_complex;
    std::vector<RestrictedRoot> cr_real;
    int orbit_dim = 0;
    CRType cr_type = CRType::fixed_point;
    bool hopf = true;
    bool ruled = false;
    bool complex_dist_integrable = false;
    int real_rank = 0;
    bool contact = false;
    std::optional<Rational> sasaki_t;
};

OrbitReport classify(const SpaceDescriptor& s, const OrbitPoint& H, const Rational& d);

// The unique t in (0,1) with tan^2(t pi/2) = 1/d, as a float.
double sasaki_parameter(double d);

// Exact form of the same condition at rational arguments: rational t in (0,1)
// makes tan^2(t pi/2) rational only for t in {1/3, 1/2, 2/3} (values 1/3, 1,
// 3), so the predicate reduces to a three-case table.
bool sasaki_parameter_exact(const Rational& t, const Rational& d);

// (1/d)(1 + 2 cot(t pi/2) cot(t pi)); equals 1 exactly at the parameter
// returned by sasaki_parameter(d)
double k_constant(double d, double t);

}  // namespace hso
