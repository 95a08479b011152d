// Command-line front end. Talks to the library only through the C interface.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "koebe/koebe.h"

namespace {

enum Exit { kOk = 0, kError = 1, kWarning = 2 };

struct Failure {
    int code;
    std::string message;
};

void check(koebe_status s, const std::string& context) {
    if (s == KOEBE_OK) return;
    std::string msg = std::string(koebe_status_string(s)) + ": " + koebe_last_error_message();
    if (!context.empty()) msg = context + ": " + msg;
    throw Failure{kError, msg};
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Failure{kError, "cannot read " + path};
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << text)) throw Failure{kError, "cannot write " + path};
}

// Owns a string allocated by the library.
struct LibString {
    char* p = nullptr;
    ~LibString() { koebe_string_free(p); }
    std::string str() const { return p ? std::string(p) : std::string(); }
};

struct Group {
    koebe_group* g = nullptr;
    ~Group() { koebe_group_free(g); }
};

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != ' ') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string json_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

// Loads a group from either a built group document or a spec document.
void load_group(Group& g, const std::string& group_path, const std::string& spec_path) {
    if (!group_path.empty()) {
        check(koebe_group_load(read_file(group_path).c_str(), &g.g), group_path);
    } else if (!spec_path.empty()) {
        check(koebe_group_build(read_file(spec_path).c_str(), &g.g), spec_path);
    } else {
        throw Failure{kError, "one of --group or --spec is required"};
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Constructible Koebe groups: generators, coordinates, plumbing and limit sets"};
    app.require_subcommand(1);
    bool strict = false;
    double tol = 0.0;
    app.add_flag("--strict", strict, "Exit with status 2 when discreteness is not verified")
        ->configurable(false);
    app.add_option("--tol", tol, "Tolerance for relation checks (default KOEBE_TOL or 1e-8)")
        ->check(CLI::PositiveNumber);
    std::string out_path;

    auto* tri = app.add_subcommand("triangle", "Canonical generators of a triangle group");
    std::string sig_text, params_text = "inf,0,1";
    tri->add_option("--signature", sig_text, "Three values, e.g. 4,4,2 or inf,3,5")->required();
    tri->add_option("--params", params_text, "Three points, e.g. inf,0,1 or 0,1,0.5+0.5i");
    tri->add_option("-o,--output", out_path, "Output file (default stdout)");

    auto* comb = app.add_subcommand("combine", "One amalgamation or HNN extension from a request document");
    std::string input_path;
    comb->add_option("--input", input_path, "Request JSON")->required()->check(CLI::ExistingFile);
    comb->add_option("-o,--output", out_path, "Output file (default stdout)");

    std::string spec_path, group_path;
    auto* build = app.add_subcommand("build", "Build a Koebe group from a spec document");
    build->add_option("--spec", spec_path, "Spec JSON")->required()->check(CLI::ExistingFile);
    build->add_option("-o,--output", out_path, "Group document (default stdout)");

    auto add_source = [&](CLI::App* sub) {
        auto* g = sub->add_option("--group", group_path, "Group document written by build")
                      ->check(CLI::ExistingFile);
        auto* s = sub->add_option("--spec", spec_path, "Spec JSON (built on the fly)")->check(CLI::ExistingFile);
        g->excludes(s);
        sub->add_option("-o,--output", out_path, "Output file (default stdout)");
    };
    auto* coords = app.add_subcommand("coords", "Recover coordinates from node data");
    add_source(coords);
    auto* plumb = app.add_subcommand("plumb", "Plumbing parameters per partition curve");
    add_source(plumb);

    auto* limit = app.add_subcommand("limitset", "Orbit sample of the limit set");
    add_source(limit);
    int length = 8;
    std::size_t max_points = 200000;
    std::string csv_path, svg_path;
    limit->add_option("--length", length, "Maximum word length (at most 12)")->check(CLI::Range(0, 12));
    limit->add_option("--max-points", max_points, "Point cap; reaching it gives a partial sample");
    limit->add_option("--csv", csv_path, "CSV output (default stdout)");
    limit->add_option("--svg", svg_path, "SVG scatter output");

    auto* verify = app.add_subcommand("verify", "Relations, separation and Jorgensen screen");
    add_source(verify);
    int vlength = 4;
    std::size_t budget = 0;
    verify->add_option("--length", vlength, "Word length for the Jorgensen screen")->check(CLI::Range(1, 12));
    verify->add_option("--budget", budget, "Maximum number of word pairs tested");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // Help and version exit 0; every usage error maps to the generic failure code.
        int rc = app.exit(e);
        return rc == 0 ? kOk : kError;
    }

    try {
        if (tol > 0.0) check(koebe_set_tolerance(tol), "--tol");
        int exit_code = kOk;

        if (tri->parsed()) {
            auto nu = split(sig_text);
            auto pts = split(params_text);
            if (nu.size() != 3) throw Failure{kError, "--signature needs three values"};
            if (pts.size() != 3) throw Failure{kError, "--params needs three points"};
            std::string req = "{\"signature\": [";
            for (int i = 0; i < 3; ++i) {
                bool digits = !nu[i].empty() && nu[i].find_first_not_of("0123456789") == std::string::npos;
                req += (i ? ", " : "") + (digits ? nu[i] : json_quote(nu[i]));
            }
            req += "], \"params\": [";
            for (int i = 0; i < 3; ++i) req += (i ? ", " : "") + json_quote(pts[i]);
            req += "]}";
            LibString s;
            check(koebe_triangle_json(req.c_str(), &s.p), "triangle");
            emit(s.str(), out_path);
        } else if (comb->parsed()) {
            LibString s;
            check(koebe_combine_json(read_file(input_path).c_str(), &s.p), input_path);
            emit(s.str(), out_path);
        } else if (build->parsed()) {
            Group g;
            load_group(g, "", spec_path);
            LibString s;
            check(koebe_group_to_json(g.g, &s.p), "build");
            emit(s.str(), out_path);
            int certified = 0;
            check(koebe_group_certified(g.g, &certified), "build");
            if (!certified) {
                std::cerr << "warning: a coordinate lies outside its certified domain; "
                             "discreteness is not verified\n";
                if (strict) exit_code = kWarning;
            }
        } else if (coords->parsed()) {
            Group g;
            load_group(g, group_path, spec_path);
            LibString s;
            check(koebe_group_coordinates_json(g.g, &s.p), "coords");
            emit(s.str(), out_path);
        } else if (plumb->parsed()) {
            Group g;
            load_group(g, group_path, spec_path);
            LibString s;
            check(koebe_group_plumbing_json(g.g, &s.p), "plumb");
            emit(s.str(), out_path);
        } else if (limit->parsed()) {
            Group g;
            load_group(g, group_path, spec_path);
            koebe_orbit* orbit = nullptr;
            check(koebe_group_limit_set(g.g, length, max_points, &orbit), "limitset");
            struct Free {
                koebe_orbit* o;
                ~Free() { koebe_orbit_free(o); }
            } guard{orbit};
            std::string csv = csv_path.empty() ? out_path : csv_path;
            if (csv.empty() || csv == "-") {
                std::cout << "re,im\n";
                std::cout.precision(17);
                for (std::size_t i = 0; i < koebe_orbit_size(orbit); ++i) {
                    koebe_point p;
                    check(koebe_orbit_point(orbit, i, &p), "limitset");
                    if (p.is_infinity) std::cout << "inf,inf\n";
                    else std::cout << p.z.re << ',' << p.z.im << '\n';
                }
            } else {
                check(koebe_orbit_write_csv(orbit, csv.c_str()), csv);
            }
            if (!svg_path.empty()) check(koebe_orbit_write_svg(orbit, svg_path.c_str()), svg_path);
            if (koebe_orbit_budget_exceeded(orbit))
                std::cerr << "note: point budget reached; the sample is partial\n";
        } else if (verify->parsed()) {
            Group g;
            load_group(g, group_path, spec_path);
            LibString s;
            int warnings = 0;
            check(koebe_group_verify_json(g.g, vlength, budget, &s.p, &warnings), "verify");
            emit(s.str(), out_path);
            if (warnings > 0) {
                std::cerr << "warning: " << warnings << " discreteness warning(s); see the report\n";
                if (strict) exit_code = kWarning;
            }
        }
        return exit_code;
    } catch (const Failure& f) {
        std::cerr << "error: " << f.message << "\n";
        return f.code;
    }
}
