#include "CLI11.hpp"
#include "almaff/fixtures.hpp"
#include "almaff/reflect.hpp"
#include <nlohmann/json.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace almaff;
using nlohmann::json;

namespace {

json read_pair_doc(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cli", "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return json::parse(ss.str());
    } catch (const json::exception& e) {
        throw Error("cli", std::string("bad json in ") + path + ": " + e.what());
    }
}

OrbitLimits parse_limits(const std::string& spec) {
    OrbitLimits lim;
    if (spec.empty()) return lim;
    std::istringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ',')) {
        auto eq = part.find('=');
        if (eq == std::string::npos)
            throw Error("cli", "limits must look like members=K,height=H");
        std::string key = part.substr(0, eq);
        long val = std::stol(part.substr(eq + 1));
        if (key == "members")
            lim.max_members = (int)val;
        else if (key == "height")
            lim.max_entry_height = val;
        else
            throw Error("cli", "unknown limit: " + key);
    }
    return lim;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Cartan-matrix engine for almost affine classification"};
    app.require_subcommand(1);

    std::string pair_path, limits_spec, format = "json";
    int node = 0;

    auto* cmd_reflect = app.add_subcommand("reflect", "apply one odd reflection");
    cmd_reflect->add_option("pair", pair_path, "pair document (json)")->required();
    cmd_reflect->add_option("--node", node, "node to reflect at (1-based)")
        ->required();

    auto* cmd_orbit = app.add_subcommand("orbit", "odd-reflection orbit of a pair");
    cmd_orbit->add_option("pair", pair_path, "pair document (json)")->required();
    cmd_orbit->add_option("--limits", limits_spec,
                          "overflow limits, members=K,height=H");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (cmd_reflect->parsed()) {
            auto p = normalize(pair_from_json(read_pair_doc(pair_path)));
            if (node < 1 || node > p.n)
                throw Error("cli", "node out of range");
            auto q = odd_reflect(p, node - 1);
            std::cout << pair_to_json(q).dump(2) << "\n";
            std::cerr << "reflected at node " << node << "\n";
        } else if (cmd_orbit->parsed()) {
            auto p = normalize(pair_from_json(read_pair_doc(pair_path)));
            auto o = orbit(p, parse_limits(limits_spec));
            std::cout << orbit_to_json(o).dump(2) << "\n";
            std::cerr << "orbit: " << o.cls.members.size() << " members"
                      << (o.complete ? "" : " (overflow: " + o.overflow + ")")
                      << "\n";
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.module << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: cli: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
