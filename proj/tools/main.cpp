#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "selbound/report.hpp"

using namespace selbound;

namespace {

int exit_code_for(bounds::bound_mode m) { return m == bounds::bound_mode::unconditional ? 0 : 2; }

bounds::analysis_options build_options(const report::curve_spec& spec, const std::string& provider, long precision) {
    bounds::analysis_options opt = report::options_from_spec(spec);
    if (provider == "builtin") {
        opt.class_data_imports.clear();
    } else if (provider.rfind("import:", 0) == 0) {
        opt.class_data_imports.assign(1, provider.substr(7));
    } else if (!provider.empty()) {
        throw invalid_input_error("--classgroup-provider must be builtin or import:PATH");
    }
    opt.padic_precision = precision;
    return opt;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"selbound: 2-Selmer rank bounds for Jacobians of odd-degree hyperelliptic curves"};
    app.require_subcommand(1);

    std::string spec_path, provider, place, point, out_path;
    long precision = 0;
    long max_prime = 100;
    int jobs = 1;
    bool conditional_ok = false;
    bool relaxed = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("spec", spec_path, "curve specification file (JSON)")->required();
        cmd->add_option("--padic-precision", precision, "working p-adic precision (0 = automatic)");
        cmd->add_option("--classgroup-provider", provider, "builtin or import:PATH");
    };

    auto* analyze_cmd = app.add_subcommand("analyze", "full hypothesis + class group + bounds report");
    add_common(analyze_cmd);
    analyze_cmd->add_flag("--relaxed-x5ax", relaxed, "use the x^5+ax family bound (a = -p, p = 3 mod 8)");

    auto* local_cmd = app.add_subcommand("local", "place report for one finite place");
    add_common(local_cmd);
    local_cmd->add_option("--place", place, "finite place, e.g. 2 or 5#1")->required();

    auto* delta_cmd = app.add_subcommand("delta", "square class of (x(P) - T) for a rational point");
    add_common(delta_cmd);
    delta_cmd->add_option("--point", point, "rational point as a,b")->required();

    auto* scan_cmd = app.add_subcommand("twist-scan", "scan quadratic twists by primes");
    add_common(scan_cmd);
    scan_cmd->add_option("--max-prime", max_prime, "scan primes up to this bound")->required();
    scan_cmd->add_option("--out", out_path, "append-only NDJSON record file")->required();
    scan_cmd->add_option("--jobs", jobs, "worker threads");
    scan_cmd->add_flag("--conditional-ok", conditional_ok, "scan even when the base analysis is conditional");

    CLI11_PARSE(app, argc, argv);

    try {
        auto spec = report::load_curve_spec(spec_path);
        curve C = report::make_curve(spec);
        auto opt = build_options(spec, provider, precision);

        if (analyze_cmd->parsed()) {
            auto A = relaxed ? bounds::relaxed_bounds_x5ax(C, opt) : bounds::analyze(C, opt);
            std::cout << report::analysis_to_json(C, A).dump(2) << "\n";
            return exit_code_for(A.bounds.mode);
        }
        if (local_cmd->parsed()) {
            zint q;
            int pidx = 0;
            auto hash = place.find('#');
            if (hash == std::string::npos) {
                q = zint(place.c_str());
            } else {
                q = zint(place.substr(0, hash).c_str());
                pidx = std::stoi(place.substr(hash + 1));
            }
            auto rep = hypotheses::analyze_place(C, q, pidx);
            std::cout << report::place_to_json(rep).dump(2) << "\n";
            return rep.order_identity == hypotheses::tristate::holds ? 0 : 2;
        }
        if (delta_cmd->parsed()) {
            auto comma = point.find(',');
            if (comma == std::string::npos) throw invalid_input_error("--point expects a,b");
            qrat a(point.substr(0, comma));
            qrat b(point.substr(comma + 1));
            a.canonicalize();
            b.canonicalize();
            auto e = bounds::delta_square_class(C, a, b);
            std::cout << report::delta_to_json(e).dump(2) << "\n";
            return 0;
        }
        if (scan_cmd->parsed()) {
            twists::scan_options so;
            so.max_prime = max_prime;
            so.out_path = out_path;
            so.jobs = jobs;
            so.conditional_ok = conditional_ok;
            so.analysis = opt;
            so.declared_inert_density = spec.declared_inert_density;
            auto dr = twists::scan(C, so);
            std::cout << report::density_to_json(dr).dump(2) << "\n";
            return 0;
        }
    } catch (const invalid_input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const provider_unavailable_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
