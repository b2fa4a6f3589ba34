#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "randles/identifiability.hpp"
#include "randles/io.hpp"

namespace {

using nlohmann::ordered_json;

int exit_code_for(randles::Errc code) {
    switch (code) {
        case randles::Errc::RankDeficient:
        case randles::Errc::NotInImage:
        case randles::Errc::DuplicateRoots:
        case randles::Errc::SingularSystem:
        case randles::Errc::PoleOnAxis:
        case randles::Errc::NoAcceptedTrials:
            return 1;
        default:
            return 2;
    }
}

std::string out_path(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) randles::fail(randles::Errc::IoError, "cannot create directory " + dir);
}

const char* classification_name(randles::Classification c) {
    switch (c) {
        case randles::Classification::GloballyIdentifiable: return "globally_identifiable";
        case randles::Classification::LocallyIdentifiable: return "locally_identifiable";
        case randles::Classification::Unidentifiable: return "unidentifiable";
    }
    return "unknown";
}

int cmd_identifiability(int n, bool ordered) {
    randles::IdentifiabilityVerdict verdict = randles::classify(n, ordered);
    ordered_json j{{"n", n},
                   {"ordered", ordered},
                   {"classification", classification_name(verdict.classification)},
                   {"solution_count", verdict.solution_count}};
    std::cout << j.dump(2) << '\n';
    return 0;
}

int cmd_excite(const std::string& config_path, const std::string& out_dir) {
    ordered_json config = randles::load_json_file(config_path);
    randles::MultiSineSpec spec = randles::multisine_from_json(config.at("excitation"));
    double fs = config.at("fs").get<double>();
    double duration = config.at("duration").get<double>();
    int order_n = config.at("order_n").get<int>();

    randles::TimeSeries u = randles::sample(spec, fs, duration);
    randles::ExcitationReport report = randles::check_pe_order(spec, order_n);
    report.crest_factor = randles::crest_factor(u);

    ensure_dir(out_dir);
    randles::write_csv_tu(out_path(out_dir, "input.csv"), u);
    randles::write_json_file(out_path(out_dir, "excitation_report.json"),
                             randles::to_json(report));
    return report.pass ? 0 : 1;
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir,
                 std::optional<std::uint64_t> seed) {
    ordered_json config = randles::load_json_file(config_path);
    randles::CircuitParams truth = randles::circuit_params_from_json(config.at("truth"));
    randles::MultiSineSpec spec = randles::multisine_from_json(config.at("excitation"));
    double fs = config.at("fs").get<double>();
    double duration = config.at("duration").get<double>();

    if (!randles::sampling_rate_adequate(fs, truth))
        std::cerr << "warning: fs is below 5 times the fastest pole rate\n";
    if (!randles::duration_adequate(duration, truth))
        std::cerr << "warning: duration is below 6 times the largest time constant\n";

    randles::TimeSeries u = randles::sample(spec, fs, duration);
    randles::TimeSeries y =
        randles::simulate_response(randles::to_state_space(randles::to_modal(truth)), u);
    if (config.contains("noise") && !config["noise"].is_null()) {
        randles::NoiseSpec noise;
        noise.sigma = config["noise"].at("sigma").get<double>();
        noise.seed = config.value("seed", std::uint64_t{0});
        if (seed) noise.seed = *seed;
        y = randles::add_noise(y, noise);
    }

    ensure_dir(out_dir);
    randles::write_csv_tuy(out_path(out_dir, "data.csv"), u, y);
    return 0;
}

int cmd_study(const std::string& config_path, const std::string& out_dir,
              std::optional<std::uint64_t> seed) {
    ordered_json config = randles::load_json_file(config_path);
    randles::StudyConfig cfg = randles::study_config_from_json(config, seed);
    int bins = config.value("hist_bins", 20);

    randles::StudyOutput output = randles::run_study(cfg);

    ensure_dir(out_dir);
    randles::write_json_file(out_path(out_dir, "stats.json"),
                             randles::to_json(output.stats, cfg.truth));
    ordered_json trials = ordered_json::array();
    for (const auto& trial : output.trials) trials.push_back(randles::to_json(trial));
    randles::write_json_file(out_path(out_dir, "trials.json"), trials);

    auto tables = randles::histogram_export(output.trials, bins);
    for (std::size_t k = 0; k < tables.size(); ++k) {
        std::string csv = "bin_low,bin_high,count\n";
        for (const auto& row : tables[k])
            csv += randles::format_double(row.bin_low) + "," +
                   randles::format_double(row.bin_high) + "," + std::to_string(row.count) + "\n";
        randles::write_text_file(out_path(out_dir, "hist_" + output.stats.param_names[k] + ".csv"),
                                 csv);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Randles circuit identification pipeline"};
    app.require_subcommand(1);

    int order_n = 0;
    bool ordered = false;
    auto* identifiability = app.add_subcommand(
        "identifiability", "Classify structural identifiability for a circuit order");
    identifiability->add_option("--n", order_n, "circuit order (number of RC pairs)")
        ->required()
        ->check(CLI::PositiveNumber);
    identifiability->add_flag("--ordered", ordered, "assume the time-constant ordering convention");

    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;

    auto add_io_options = [&](CLI::App* cmd, bool with_seed) {
        cmd->add_option("--config", config_path, "JSON configuration file")
            ->required()
            ->check(CLI::ExistingFile);
        cmd->add_option("--out", out_dir, "output directory");
        if (with_seed) cmd->add_option("--seed", seed, "master seed override");
    };

    auto* excite = app.add_subcommand("excite", "Sample a multisine and report its excitation order");
    add_io_options(excite, false);
    auto* simulate = app.add_subcommand("simulate", "Simulate the voltage response to a multisine");
    add_io_options(simulate, true);
    auto* study = app.add_subcommand("study", "Run a repeated-trial estimation study");
    add_io_options(study, true);

    try {
        app.parse(argc, argv);
        if (app.got_subcommand(identifiability)) return cmd_identifiability(order_n, ordered);
        if (app.got_subcommand(excite)) return cmd_excite(config_path, out_dir);
        if (app.got_subcommand(simulate)) return cmd_simulate(config_path, out_dir, seed);
        return cmd_study(config_path, out_dir, seed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const randles::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
