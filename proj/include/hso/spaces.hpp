#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hso/rootsys.hpp"

namespace hso {

enum class Family {
    Grassmannian,          // G_k(C^n); k=1 is CP^{n-1}
    OrientedGrassmannian,  // G~_2(R^n)
    SOquotient,            // SO(2n)/U(n)
    SpQuotient,            // Sp(n)/U(n)
    EIII,
    EVII,
};

std::string to_string(Family f);

// Per restricted-root class: how the full-system roots lying over it pair
// under the involution. 2*n_longest_pairs + n_shortest_fixed = m(class);
// the fiber over any 2e_i is a single fixed root.
struct FiberStructure {
    int n_longest_pairs = 0;
    int n_shortest_fixed = 0;
    int mult() const { return 2 * n_longest_pairs + n_shortest_fixed; }
};

struct SpaceDescriptor {
    Family family;
    int p1 = 0;  // k for Grassmannian, n otherwise, unused for EIII/EVII
    int p2 = 0;  // n for Grassmannian
    int rank = 0;
    RootKind restricted_kind = RootKind::C;
    std::map<RootClass, int> mult;
    std::map<RootClass, FiberStructure> fiber;
    std::string name;  // display form, e.g. "G_2(C^4)", "Sp(3)/U(3)"

    int multiplicity(const RestrictedRoot& r) const { return mult.at(r.cls()); }
};

struct PolarDescriptor {
    std::string polar_space;  // symbolic name of the polar orbit
    int polar_dim = 0;
    bool polar_einstein = true;
};

// Catalog entry for one family with validated parameters. Grassmannian takes
// (k,n) with 1 <= k < n, n >= 3; OrientedGrassmannian n >= 5; SOquotient
// n >= 3; SpQuotient n >= 2; the exceptional spaces take no parameters.
SpaceDescriptor catalog(Family family, int p1 = 0, int p2 = 0);

// rank + sum of multiplicities over the positive system
int dimension(const SpaceDescriptor& s);

PolarDescriptor polar_info(const SpaceDescriptor& s);

// every catalog space with rank <= max_rank and bounded parameters; used by
// the classification sweeps
std::vector<SpaceDescriptor> spaces_up_to_rank(int max_rank);

// "grass:k,n" / "orgrass:n" / "so:n" / "sp:n" / "eiii" / "evii" / "cp:n"
SpaceDescriptor parse_space(const std::string& selector);

}  // namespace hso
