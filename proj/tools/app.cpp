#include "app.hpp"

#include "commands.hpp"
#include "run_config.hpp"

#include <CLI11.hpp>

namespace cli {

int run_app(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Simplified Approach solver for the Bose gas"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig cfg;
    register_options(app, cfg);

    struct Entry {
        const char* name;
        const char* help;
        int (*run)(const RunConfig&, std::ostream&, std::ostream&);
    };
    const Entry entries[] = {
        {"solve", "Solve at one density (or energy) and write k,u_hat,r,u", cmd_solve},
        {"scan", "Sweep densities and write rho,e_tilde[,eta]", cmd_scan},
        {"correlation", "Write the two-point correlation C2/rho^2", cmd_correlation},
        {"compare", "Compare against a reference CSV rho,e[,eta]", cmd_compare},
        {"asymptotics", "Ratio tables against the low- and high-density laws", cmd_asymptotics},
    };
    for (const auto& e : entries) app.add_subcommand(e.name, e.help);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::FileError& e) {
        err << "error: " << e.what() << '\n';
        return io;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        err << "run with --help for usage\n";
        return usage;
    }

    for (const auto& e : entries)
        if (app.got_subcommand(e.name)) return run_guarded(e.run, cfg, out, err);
    return usage;
}

}  // namespace cli
