#include "pnsqkd/curves.hpp"
#include "pnsqkd/errors.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using namespace pnsqkd;

namespace {

constexpr int kBadArgs = 2;
constexpr int kInfeasible = 3;

std::string catalog_text() {
    std::ostringstream os;
    os << "\nCurves (id: columns; defaults):\n";
    for (const auto& c : curve_catalog())
        os << "  " << c.id << "  " << c.description << "\n      columns: " << c.columns << "\n      defaults: " << c.defaults
           << "\n";
    os << "\nExit codes: 0 ok, 1 validation failure, 2 bad arguments, 3 infeasible model.\n";
    return os.str();
}

// Writes to --out when given, stdout otherwise.
int emit(const std::string& out, const std::function<void(std::ostream&)>& write) {
    if (out.empty()) {
        write(std::cout);
        return 0;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot open " << out << " for writing\n";
        return kBadArgs;
    }
    write(f);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Security analysis of PNS-resistant coherent-pulse QKD protocols"};
    app.require_subcommand(1);
    app.footer(catalog_text());

    std::string out;
    std::string format = "csv";

    CurveOptions opt;
    std::string curve_id;
    auto* curve = app.add_subcommand("curve", "emit one data series");
    curve->add_option("id", curve_id, "curve id")->required();
    auto num = [&](const char* name, std::optional<double>& slot, const char* help) {
        curve->add_option_function<double>(name, [&slot](const double& v) { slot = v; }, help);
    };
    auto grid = [&](const char* name, std::optional<Grid>& slot, const char* help) {
        curve->add_option_function<std::string>(name, [&slot](const std::string& v) { slot = Grid::parse(v); }, help);
    };
    num("--mu", opt.mu, "mean photon number");
    num("--alpha", opt.alpha, "fibre loss [dB/km]");
    num("--eta-det", opt.eta_det, "detector efficiency");
    num("--pd", opt.p_d, "dark count probability");
    num("--qber-opt", opt.qber_opt, "optical QBER");
    num("--eta", opt.eta, "B92 / 4+2 state angle [rad]");
    num("--distance", opt.distance_km, "single distance [km] (ieclon23)");
    grid("--nb", opt.nb, "number of bases, min:max[:step]");
    grid("--gamma", opt.gamma, "machine parameter grid, min:max:step");
    grid("--d", opt.d, "distance grid [km], min:max:step");
    curve->add_option("--out", out, "output file");
    curve->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    std::string report_id;
    auto* report = app.add_subcommand("report", "case-study record");
    report->add_option("name", report_id, "report name")->required()->check(CLI::IsMember({"geneva-lausanne"}));
    report->add_option("--out", out, "output file");
    report->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    auto* validate = app.add_subcommand("validate", "run acceptance anchors and invariants, JSON summary");
    validate->add_option("--out", out, "output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kBadArgs;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n" << "run with --help for usage\n";
        return kBadArgs;
    }

    try {
        if (*curve) {
            const Table t = run_curve(curve_id, opt);
            return emit(out, [&](std::ostream& os) { format == "json" ? write_json(os, curve_id, t) : write_csv(os, t); });
        }
        if (*report) {
            const Table t = geneva_lausanne_table();
            return emit(out, [&](std::ostream& os) { format == "json" ? write_json(os, report_id, t) : write_csv(os, t); });
        }
        bool ok = false;
        const int rc = emit(out, [&](std::ostream& os) { ok = write_validation(os); });
        if (rc != 0) return rc;
        std::cerr << (ok ? "validate: all checks pass\n" : "validate: some checks fail\n");
        return ok ? 0 : 1;
    } catch (const InfeasibleModel& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kInfeasible;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n" << "run with --help for usage\n";
        return kBadArgs;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadArgs;
    }
}
