#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "bo/errors.hpp"
#include "bo/experiment.hpp"

int main(int argc, char** argv) {
    CLI::App app{"pseudo-spectral experiments for the Benjamin-Ono equation "
                 "on the circle"};
    app.require_subcommand(1);

    std::string config_path;
    CLI::App* run = app.add_subcommand(
        "run", "run one experiment from a key = value config file");
    run->add_option("config", config_path, "path to the config file")->required();

    std::string kind;
    CLI::App* describe = app.add_subcommand(
        "describe", "print the config schema and output columns of one kind");
    describe->add_option("kind", kind, "experiment kind")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return bo::run_experiment(bo::load_config(config_path), std::cout);
        std::cout << bo::describe_text(kind);
        return 0;
    } catch (const bo::BlowupError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const bo::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
