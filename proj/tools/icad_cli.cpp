#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"

#include "icad/errors.hpp"
#include "icad/runner.hpp"

namespace {

icad::NcmKind make_ncm(const std::string& name, int k, double loop_lambda) {
    if (name == "knn") {
        return icad::NcmKind::knn(k);
    }
    if (name == "lof") {
        return icad::NcmKind::lof(k);
    }
    return icad::NcmKind::loop(k, loop_lambda);
}

int dispatch(const icad::RunConfig& config) {
    using Command = icad::RunConfig::Command;
    switch (config.command) {
    case Command::kDetect: {
        for (const icad::DetectOutput& item : icad::run_detect(config)) {
            std::printf("%s -> %s (%zu points, max likelihood %.6f)\n",
                        item.input.string().c_str(), item.output.string().c_str(), item.points,
                        item.max_likelihood);
        }
        return 0;
    }
    case Command::kBench: {
        const icad::BenchOutput result = icad::run_bench(config);
        for (const icad::ProfileScore& p : result.profiles) {
            std::printf("%-14s score %8.4f (null %.1f, tp %d, fp %d, fn %d)\n", p.profile.c_str(),
                        p.score, p.null_score, p.detail.tp_count, p.detail.fp_count,
                        p.detail.fn_count);
        }
        std::printf("summary written to %s\n", result.summary.string().c_str());
        return 0;
    }
    case Command::kSweep: {
        const icad::SweepOutput result = icad::run_sweep(config);
        for (const icad::ProfileSweep& p : result.profiles) {
            std::printf("%-14s best threshold %.10g -> score %8.4f\n", p.profile.c_str(),
                        p.best.threshold, p.best.score);
        }
        std::printf("summary written to %s\n", result.summary.string().c_str());
        return 0;
    }
    case Command::kPlotData: {
        for (const icad::DetectOutput& item : icad::run_plotdata(config)) {
            std::printf("%s -> %s (%zu rows)\n", item.input.string().c_str(),
                        item.output.string().c_str(), item.points);
        }
        return 0;
    }
    case Command::kGenCorpus: {
        const icad::CorpusLayout layout = icad::run_gencorpus(config);
        std::printf("wrote %d files under %s\nlabels at %s\n", config.corpus.file_count,
                    layout.data_dir.string().c_str(), layout.labels_file.string().c_str());
        return 0;
    }
    }
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Streaming conformal anomaly detection for one-dimensional time series"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from a key=value file");

    icad::RunConfig config;
    std::string ncm_name = "knn";

    app.add_option("-i,--input", config.inputs, "Series CSV files or directories of them");
    app.add_option("-l,--labels", config.labels, "Anomaly-window label document (JSON)");
    app.add_option("-o,--output", config.output, "Output file or directory");

    app.add_option("-L,--window-length", config.icad.window_length, "Embedding window length")
        ->capture_default_str();
    app.add_option("-T,--training-size", config.icad.training_size, "Proper-training set size")
        ->capture_default_str();
    app.add_option("-C,--calibration-size", config.icad.calibration_size, "Calibration set size")
        ->capture_default_str();
    app.add_option("--ncm", ncm_name, "Non-conformity measure")
        ->check(CLI::IsMember({"knn", "lof", "loop"}))
        ->capture_default_str();
    int k = config.icad.ncm.k;
    double loop_lambda = config.icad.ncm.loop_lambda;
    app.add_option("-k,--neighbors", k, "Neighbor count for the non-conformity measure")
        ->capture_default_str();
    app.add_option("--loop-lambda", loop_lambda, "Scale factor for the loop measure")
        ->capture_default_str();
    app.add_option("--shrinkage", config.icad.shrinkage, "Covariance shrinkage in [0, 1]")
        ->capture_default_str();
    app.add_option("--recalibration-period", config.icad.recalibration_period,
                   "Scored samples between full model refits")
        ->capture_default_str();
    app.add_option("--threshold", config.threshold, "Detection threshold on anomaly likelihood")
        ->capture_default_str();
    app.add_option("--profile", config.profile,
                   "Application profile (standard, reward_low_fp, reward_low_fn)")
        ->capture_default_str();

    app.add_option("--files", config.corpus.file_count, "Synthetic corpus: number of files")
        ->capture_default_str();
    app.add_option("--points", config.corpus.points_per_file, "Synthetic corpus: points per file")
        ->capture_default_str();
    app.add_option("--seed", config.corpus.seed, "Synthetic corpus: generator seed")
        ->capture_default_str();

    CLI::App* detect = app.add_subcommand("detect", "Score series files and write results CSVs");
    CLI::App* bench =
        app.add_subcommand("bench", "Score a labeled corpus under all application profiles");
    CLI::App* sweep =
        app.add_subcommand("sweep", "Find the best detection threshold per profile");
    CLI::App* plotdata =
        app.add_subcommand("plotdata", "Write per-point plot data with window and class columns");
    CLI::App* gencorpus =
        app.add_subcommand("gencorpus", "Generate a labeled synthetic mini-corpus");
    for (CLI::App* sub : {detect, bench, sweep, plotdata, gencorpus}) {
        sub->fallthrough();
    }

    CLI11_PARSE(app, argc, argv);

    using Command = icad::RunConfig::Command;
    if (detect->parsed()) {
        config.command = Command::kDetect;
    } else if (bench->parsed()) {
        config.command = Command::kBench;
    } else if (sweep->parsed()) {
        config.command = Command::kSweep;
    } else if (plotdata->parsed()) {
        config.command = Command::kPlotData;
    } else {
        config.command = Command::kGenCorpus;
    }
    config.icad.ncm = make_ncm(ncm_name, k, loop_lambda);

    try {
        return dispatch(config);
    } catch (const icad::Error& e) {
        std::fprintf(stderr, "icad: error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "icad: unexpected error: %s\n", e.what());
        return 1;
    }
}
