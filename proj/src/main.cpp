#include <CLI11.hpp>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hso/einstein.hpp"
#include "hso/oracle.hpp"
#include "hso/orbits.hpp"
#include "hso/serialize.hpp"
#include "hso/spaces.hpp"

using namespace hso;

namespace {

using nlohmann::json;

OrbitPoint parse_H(const SpaceDescriptor& s, const std::string& arg) {
    std::vector<Rational> t;
    std::stringstream ss(arg);
    std::string tok;
    while (std::getline(ss, tok, ',')) t.push_back(Rational::parse(tok));
    if ((int)t.size() != s.rank)
        throw std::invalid_argument("--H needs " + std::to_string(s.rank) +
                                    " coordinates for " + s.name);
    return OrbitPoint{t};
}

json json_of_report(const hso::oracle::VerifyReport& rep) {
    json j;
    j["space"] = rep.space;
    j["d"] = hso::sig12(rep.d);
    j["pass"] = rep.all_pass();
    json checks = json::array();
    for (const auto& c : rep.checks) {
        checks.push_back({{"name", c.name},
                          {"residual", hso::sig12(c.residual)},
                          {"tolerance", hso::sig12(c.tolerance)},
                          {"pass", c.pass}});
    }
    j["checks"] = checks;
    return j;
}

std::string cell(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "-";
    return v.dump();
}

std::string markdown_of(const json& j) {
    std::ostringstream out;
    if (j.is_array() && !j.empty() && j.front().is_object()) {
        std::vector<std::string> cols;
        for (const auto& [k, v] : j.front().items()) cols.push_back(k);
        out << "|";
        for (const auto& c : cols) out << " " << c << " |";
        out << "\n|";
        for (size_t i = 0; i < cols.size(); ++i) out << " --- |";
        out << "\n";
        for (const auto& row : j) {
            out << "|";
            for (const auto& c : cols)
                out << " " << cell(row.contains(c) ? row[c] : json()) << " |";
            out << "\n";
        }
    } else if (j.is_object()) {
        out << "| field | value |\n| --- | --- |\n";
        std::istringstream flat(hso::csv_from_json(j));
        std::string line;
        std::getline(flat, line);  // header
        while (std::getline(flat, line)) {
            auto comma = line.find(',');
            out << "| " << line.substr(0, comma) << " | "
                << line.substr(comma + 1) << " |\n";
        }
    } else {
        out << j.dump(2) << "\n";
    }
    return out.str();
}

void emit(const json& j, const std::string& format) {
    if (format == "json")
        std::cout << j.dump(2) << "\n";
    else if (format == "csv")
        std::cout << hso::csv_from_json(j);
    else
        std::cout << markdown_of(j);
}

SpaceDescriptor family_selector(const std::string& family, int n, int k) {
    if (family == "su") {
        if (n < 3) throw std::invalid_argument("su needs --n >= 3");
        return catalog(Family::Grassmannian, k > 0 ? k : n / 2, n);
    }
    if (family == "so") return catalog(Family::OrientedGrassmannian, n);
    if (family == "sou") return catalog(Family::SOquotient, n);
    if (family == "sp") return catalog(Family::SpQuotient, n);
    throw std::invalid_argument("unknown family: " + family);
}

std::vector<SpaceDescriptor> oracle_battery() {
    return {
        catalog(Family::Grassmannian, 2, 4),
        catalog(Family::Grassmannian, 2, 5),
        catalog(Family::OrientedGrassmannian, 5),
        catalog(Family::OrientedGrassmannian, 6),
        catalog(Family::OrientedGrassmannian, 7),
        catalog(Family::OrientedGrassmannian, 8),
        catalog(Family::SOquotient, 4),
        catalog(Family::SOquotient, 5),
        catalog(Family::SpQuotient, 2),
        catalog(Family::SpQuotient, 3),
    };
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "isotropy orbits on compact Hermitian symmetric spaces:\n"
        "CR type, contact and Sasaki structure, and the Einstein parameter.\n"
        "Space selectors: grass:k,n  cp:n  orgrass:n  so:n  sp:n  eiii  evii\n"
        "(cp:n is projective space of complex dimension n-1; so:n is\n"
        "SO(2n)/U(n)). H coordinates and d are rationals like 1/4."};
    app.require_subcommand(1);
    app.fallthrough();

    std::string space_sel, H_arg, d_arg = "1", format = "json";
    app.add_option("--format", format, "json, csv or markdown")
        ->check(CLI::IsMember({"json", "csv", "markdown"}))
        ->capture_default_str();

    auto* sc_spaces = app.add_subcommand("spaces", "list the space catalog");
    int max_rank = 4;
    sc_spaces->add_option("--space", space_sel, "show a single space");
    sc_spaces->add_option("--max-rank", max_rank, "rank bound for the list")
        ->capture_default_str();

    auto* sc_classify =
        app.add_subcommand("classify", "full orbit classification at H");
    sc_classify->add_option("--space", space_sel)->required();
    sc_classify->add_option("--H", H_arg, "comma-separated t_i (units of pi)")
        ->required();
    sc_classify->add_option("--d", d_arg, "transverse metric parameter");

    auto* sc_contact =
        app.add_subcommand("contact", "real rank and contact condition at H");
    sc_contact->add_option("--space", space_sel)->required();
    sc_contact->add_option("--H", H_arg)->required();

    auto* sc_sasaki = app.add_subcommand(
        "sasaki", "the distinguished parameter t(d) on the first edge");
    sc_sasaki->add_option("--d", d_arg);

    auto* sc_einstein = app.add_subcommand(
        "einstein", "transverse Einstein data and the solvable d");
    bool table = false;
    sc_einstein->add_option("--space", space_sel);
    sc_einstein->add_option("--d", d_arg);
    sc_einstein->add_flag("--table", table, "the full solution table");

    auto* sc_verify = app.add_subcommand(
        "verify", "numerical matrix-model checks of the bracket relations");
    std::vector<std::string> verify_spaces;
    std::string family;
    int family_n = 0, family_k = 0;
    bool verify_all = false;
    sc_verify->add_option("--space", verify_spaces, "selectors to verify");
    sc_verify->add_flag("--all", verify_all, "the whole classical battery");
    sc_verify->add_option("--family", family, "su, so, sou or sp");
    sc_verify->add_option("--n", family_n, "size parameter for --family");
    sc_verify->add_option("--k", family_k, "plane count for --family su");
    sc_verify->add_option("--d", d_arg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (*sc_spaces) {
            if (!space_sel.empty()) {
                emit(json_of(parse_space(space_sel)), format);
            } else {
                json a = json::array();
                for (const auto& s : spaces_up_to_rank(max_rank)) {
                    json j;
                    j["name"] = s.name;
                    j["rank"] = s.rank;
                    j["kind"] = to_string(s.restricted_kind);
                    j["dimension"] = dimension(s);
                    PolarDescriptor p = polar_info(s);
                    j["polar"] = p.polar_space;
                    j["polar_einstein"] = p.polar_einstein;
                    a.push_back(j);
                }
                emit(a, format);
            }
        } else if (*sc_classify) {
            SpaceDescriptor s = parse_space(space_sel);
            OrbitPoint H = parse_H(s, H_arg);
            Rational d = Rational::parse(d_arg);
            OrbitReport r = classify(s, H, d);
            json j = json_of(r);
            j["space"] = s.name;
            j["H"] = H.str();
            j["d"] = d.str();
            emit(j, format);
        } else if (*sc_contact) {
            SpaceDescriptor s = parse_space(space_sel);
            OrbitPoint H = parse_H(s, H_arg);
            ContactStatus c = contact_status(s, H);
            json j = json_of(c);
            j["space"] = s.name;
            j["H"] = H.str();
            emit(j, format);
        } else if (*sc_sasaki) {
            Rational d = Rational::parse(d_arg);
            if (!(Rational(0) < d))
                throw std::invalid_argument("--d must be positive");
            double dv = d.to_double();
            double t = sasaki_parameter(dv);
            json j;
            j["d"] = d.str();
            j["t"] = hso::sig12(t);
            j["k_constant_at_t"] = hso::sig12(k_constant(dv, t));
            json exact = nullptr;
            for (const char* cand : {"1/3", "1/2", "2/3"}) {
                Rational tc = Rational::parse(cand);
                if (sasaki_parameter_exact(tc, d)) exact = tc.str();
            }
            j["exact_t"] = exact;
            emit(j, format);
        } else if (*sc_einstein) {
            if (table) {
                auto rows = solution_table();
                if (format == "markdown")
                    std::cout << table_markdown(rows);
                else
                    emit(json_of(rows), format);
            } else {
                if (space_sel.empty())
                    throw std::invalid_argument(
                        "einstein needs --space or --table");
                SpaceDescriptor s = parse_space(space_sel);
                Rational d = Rational::parse(d_arg);
                PolarDescriptor p = polar_info(s);
                Rational tau = einstein_constant(s, d);
                json j;
                j["space"] = s.name;
                j["d"] = d.str();
                j["ricci"] = ricci_diagonal(s).str();
                j["tau"] = tau.str();
                j["polar"] = p.polar_space;
                j["polar_dim"] = p.polar_dim;
                j["polar_einstein"] = p.polar_einstein;
                auto sol = solve_sasaki_einstein(s);
                j["d_solution"] = sol ? json(sol->str()) : json(nullptr);
                auto [lam, mu] =
                    eta_einstein_coefficients(tau, 2 * p.polar_dim + 1);
                j["eta_einstein"] = {{"lambda", lam.str()}, {"mu", mu.str()}};
                emit(j, format);
            }
        } else if (*sc_verify) {
            Rational d = Rational::parse(d_arg);
            std::vector<SpaceDescriptor> targets;
            if (verify_all) {
                targets = oracle_battery();
            } else if (!family.empty()) {
                targets.push_back(family_selector(family, family_n, family_k));
            } else if (!verify_spaces.empty()) {
                for (const auto& sel : verify_spaces)
                    targets.push_back(parse_space(sel));
            } else {
                throw std::invalid_argument(
                    "verify needs --space, --family or --all");
            }
            json out = json::array();
            bool ok = true;
            for (const auto& s : targets) {
                auto rep = hso::oracle::verify_space(s, d.to_double());
                ok = ok && rep.all_pass();
                out.push_back(json_of_report(rep));
            }
            emit(out, format);
            return ok ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n"
                  << "run with --help for usage\n";
        return 2;
    }
    return 0;
}
