#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "icad/conformal.hpp"
#include "icad/nab.hpp"
#include "icad/synthetic.hpp"

namespace icad {

struct RunConfig {
    enum class Command { kDetect, kBench, kSweep, kPlotData, kGenCorpus };

    Command command = Command::kDetect;
    std::vector<std::filesystem::path> inputs; // series files or directories
    std::filesystem::path labels;              // combined-windows document
    std::filesystem::path output;              // directory (detect/plotdata/gencorpus) or file
    IcadConfig icad;
    std::string profile = "standard";
    double threshold = 0.95;
    SyntheticCorpusConfig corpus;

    void validate() const;
};

/// Expands directories to the .csv files inside them (recursively) and sorts
/// the combined list; plain files pass through.
std::vector<std::filesystem::path> expand_inputs(std::span<const std::filesystem::path> inputs);

void write_results_csv(std::span<const DetectionRecord> records, std::ostream& out);

/// Label-document key for one series file: its path relative to the corpus
/// root when that key exists in the document, else a filename-based fallback.
std::string label_key(const std::filesystem::path& input, const std::filesystem::path& labels,
                      const std::map<std::string, std::vector<nab::AnomalyWindow>>& windows);

struct DetectOutput {
    std::filesystem::path input;
    std::filesystem::path output;
    std::size_t points = 0;
    double max_likelihood = 0.0;
};

/// Runs the detector over every input file and writes one results CSV per
/// file ("timestamp,value,anomaly_likelihood,p_value") into config.output.
std::vector<DetectOutput> run_detect(const RunConfig& config);

struct ProfileScore {
    std::string profile;
    double score = 0.0;      // normalized corpus score at config.threshold
    double null_score = 0.0; // always 0 by construction, reported for the record
    nab::CorpusScore detail;
};

struct BenchOutput {
    std::vector<ProfileScore> profiles; // one entry per application profile
    std::filesystem::path summary;      // JSON summary location
};

/// Detects over the corpus, scores all three application profiles at the
/// configured threshold, and writes a JSON summary.
BenchOutput run_bench(const RunConfig& config);

struct ProfileSweep {
    std::string profile;
    nab::SweepResult best;
};

struct SweepOutput {
    std::vector<ProfileSweep> profiles;
    std::filesystem::path summary;
};

/// Like run_bench but searches for the best threshold per profile.
SweepOutput run_sweep(const RunConfig& config);

/// Columns: timestamp,value,likelihood,in_window,detection_class with one row
/// per record; classes are TP/FP/none under the given detection threshold.
void emit_plot_data(std::span<const DetectionRecord> records,
                    std::span<const nab::AnomalyWindow> windows, double threshold,
                    std::ostream& out);

std::vector<DetectOutput> run_plotdata(const RunConfig& config);

CorpusLayout run_gencorpus(const RunConfig& config);

} // namespace icad
