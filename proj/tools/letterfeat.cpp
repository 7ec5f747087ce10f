// Command line driver for the letter feature-set experiments.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

#include "letterfeat/experiment.hpp"
#include "letterfeat/glyphs.hpp"

using namespace letterfeat;

namespace {

void add_run_flags(CLI::App* cmd, RunConfig& config, std::string& font)
{
    cmd->add_option("--seed", config.seed, "Random seed")->capture_default_str();
    cmd->add_option("--hidden", config.hidden_count, "Hidden nodes")->capture_default_str();
    cmd->add_option("--eta", config.eta, "Learning rate")->capture_default_str();
    cmd->add_option("--epsilon", config.epsilon, "SSE stopping threshold")->capture_default_str();
    cmd->add_option("--max-epochs", config.max_epochs, "Epoch limit")->capture_default_str();
    cmd->add_option("--noise", config.noise_rate, "Pixel flip probability for the noisy condition")
        ->capture_default_str();
    cmd->add_option("--out", config.output_dir, "Output directory")->capture_default_str();
    cmd->add_option("--font", font, "Font file (default: built-in alphabet)");
    cmd->add_option("--cell", config.cell_size, "Heatmap cell size in pixels")->capture_default_str();
    cmd->add_option("--threshold", config.threshold, "Activation threshold for strong letters")
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Train sigmoid networks on a 9x9 alphabet and render hidden-node heatmaps"};
    app.require_subcommand(1);

    RunConfig config;
    std::string font;

    auto* exp1 = app.add_subcommand("exp1", "Letter classifier (26 outputs), weight heatmaps per hidden node");
    add_run_flags(exp1, config, font);
    auto* exp2 = app.add_subcommand("exp2", "Feature-set classifier (10 outputs), with and without input noise");
    add_run_flags(exp2, config, font);

    std::string experiment = "exp1";
    auto* dump = app.add_subcommand("dump-config", "Print the resolved configuration as key=value lines");
    add_run_flags(dump, config, font);
    dump->add_option("--experiment", experiment, "exp1 or exp2")
        ->check(CLI::IsMember({"exp1", "exp2"}))
        ->capture_default_str();

    GradCheckOptions grad;
    auto* gradcheck = app.add_subcommand("gradcheck", "Compare backprop gradients against finite differences");
    gradcheck->add_option("--seed", grad.seed, "Random seed")->capture_default_str();
    gradcheck->add_option("--instances", grad.instances, "Instances per network size")->capture_default_str();

    auto* render_font_cmd = app.add_subcommand("render-font", "Print the alphabet in font file format");
    render_font_cmd->add_option("--font", font, "Font file (default: built-in alphabet)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(ExitCode::usage);
    }

    if (!font.empty())
        config.font_path = font;

    try {
        if (*exp1) {
            config.experiment = Experiment::exp1;
            const RunResult r = run_experiment1(config, std::cerr);
            std::cout << "wrote " << r.artifacts.size() << " artifacts to " << r.directory.string() << '\n';
        } else if (*exp2) {
            config.experiment = Experiment::exp2;
            const RunResult r = run_experiment2(config, std::cerr);
            std::cout << "wrote " << r.artifacts.size() << " artifacts to " << r.directory.string() << '\n';
        } else if (*dump) {
            config.experiment = experiment == "exp2" ? Experiment::exp2 : Experiment::exp1;
            config.validate();
            std::cout << dump_config(config);
        } else if (*gradcheck) {
            return static_cast<int>(run_gradcheck(grad, std::cout));
        } else if (*render_font_cmd) {
            std::cout << render_font(load_alphabet(config.font_path));
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::usage);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::io);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::validation);
    }
    return static_cast<int>(ExitCode::ok);
}
