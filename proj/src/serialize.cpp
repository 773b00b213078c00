#include "hso/serialize.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace hso {

double sig12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return std::strtod(buf, nullptr);
}

nlohmann::json json_of(const Rational& r) { return r.str(); }

nlohmann::json json_of(const RestrictedRoot& r) { return r.str(); }

static nlohmann::json json_of_roots(const std::vector<RestrictedRoot>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& r : v) a.push_back(r.str());
    return a;
}

nlohmann::json json_of(const SpaceDescriptor& s) {
    nlohmann::json j;
    j["name"] = s.name;
    j["family"] = to_string(s.family);
    j["rank"] = s.rank;
    j["restricted_kind"] = to_string(s.restricted_kind);
    j["dimension"] = dimension(s);
    nlohmann::json m;
    for (const auto& [cls, mult] : s.mult) m[to_string(cls)] = mult;
    j["multiplicities"] = m;
    nlohmann::json f;
    for (const auto& [cls, fib] : s.fiber) {
        f[to_string(cls)] = {{"pairs", fib.n_longest_pairs},
                             {"fixed", fib.n_shortest_fixed}};
    }
    j["fibers"] = f;
    PolarDescriptor p = polar_info(s);
    j["polar"] = {{"space", p.polar_space},
                  {"dimension", p.polar_dim},
                  {"einstein", p.polar_einstein}};
    return j;
}

nlohmann::json json_of(const ContactStatus& c) {
    nlohmann::json j;
    j["real_rank"] = c.real_rank;
    j["contact"] = c.contact;
    if (c.segment) {
        j["segment"] = {{"index", c.segment->i}, {"t", c.segment->t.str()}};
    } else {
        j["segment"] = nullptr;
    }
    return j;
}

nlohmann::json json_of(const OrbitReport& r) {
    nlohmann::json j;
    j["active_roots"] = json_of_roots(r.active);
    j["cr_complex"] = json_of_roots(r.cr_complex);
    j["cr_real"] = json_of_roots(r.cr_real);
    j["orbit_dim"] = r.orbit_dim;
    j["cr_type"] = to_string(r.cr_type);
    j["hopf"] = r.hopf;
    j["ruled"] = r.ruled;
    j["complex_dist_integrable"] = r.complex_dist_integrable;
    j["real_rank"] = r.real_rank;
    j["contact"] = r.contact;
    j["sasaki"] = r.sasaki_t.has_value();
    j["sasaki_t"] = r.sasaki_t ? nlohmann::json(r.sasaki_t->str())
                               : nlohmann::json(nullptr);
    return j;
}

nlohmann::json json_of(const std::vector<TableRow>& rows) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json j;
        j["space"] = row.space;
        j["params"] = row.params;
        j["instance"] = row.descriptor.name;
        j["d_symbolic"] = row.d_symbolic;
        j["d"] = row.d_solution ? nlohmann::json(row.d_solution->str())
                                : nlohmann::json(nullptr);
        j["d_float"] = row.d_solution
                           ? nlohmann::json(sig12(row.d_solution->to_double()))
                           : nlohmann::json(nullptr);
        a.push_back(j);
    }
    return a;
}

static void flatten(const nlohmann::json& j, const std::string& prefix,
                    std::ostringstream& out) {
    auto join = [&](const std::string& key) {
        return prefix.empty() ? key : prefix + "." + key;
    };
    if (j.is_object()) {
        for (const auto& [key, val] : j.items()) flatten(val, join(key), out);
    } else if (j.is_array()) {
        int i = 0;
        for (const auto& val : j) flatten(val, join(std::to_string(i++)), out);
        if (j.empty()) out << prefix << ",\n";
    } else if (j.is_null()) {
        out << prefix << ",\n";
    } else if (j.is_string()) {
        out << prefix << "," << j.get<std::string>() << "\n";
    } else {
        out << prefix << "," << j.dump() << "\n";
    }
}

std::string csv_from_json(const nlohmann::json& j) {
    std::ostringstream out;
    out << "key,value\n";
    flatten(j, "", out);
    return out.str();
}

}  // namespace hso
