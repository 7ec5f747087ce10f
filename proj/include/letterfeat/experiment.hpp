#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "letterfeat/kernels.hpp"
#include "letterfeat/trainer.hpp"

namespace letterfeat {

enum class ExitCode : int { ok = 0, usage = 1, io = 2, validation = 3 };

enum class Experiment { exp1, exp2 };

/// Resolved configuration for one experiment run.
struct RunConfig {
    Experiment experiment = Experiment::exp1;
    std::uint64_t seed = 1;
    std::size_t hidden_count = 6;
    double eta = 0.5;
    double epsilon = 0.01;
    std::size_t max_epochs = 5000;
    double noise_rate = 0.1;  // exp2 noisy condition
    std::filesystem::path output_dir = "out";
    std::optional<std::filesystem::path> font_path;
    std::size_t cell_size = 16;
    std::size_t gap = 4;
    double threshold = 0.5;

    std::size_t output_count() const { return experiment == Experiment::exp1 ? kLetterCount : kFeatureSetCount; }
    TrainConfig train_config(double noise) const;
    /// Throws UsageError.
    void validate() const;
};

/// Bad flag values. Maps to ExitCode::usage.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Filesystem failures. Maps to ExitCode::io.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// `key=value` lines, one per RunConfig field, in a fixed order.
std::string dump_config(const RunConfig& config);

struct ArtifactEntry {
    std::string path;  // relative to the output directory, '/' separated
    std::string sha256;
    std::size_t size = 0;
};

/// Writes files under one root and records their hashes for the manifest.
/// Relative paths that are absolute or contain ".." are rejected.
class ArtifactWriter {
public:
    explicit ArtifactWriter(std::filesystem::path root);

    void write(const std::string& relative, std::span<const std::uint8_t> bytes);
    void write(const std::string& relative, const std::string& text);

    /// Re-reads every artifact, checks its hash and, for .ppm files, the image
    /// header; then writes manifest.txt (header lines, then `sha256 size path`
    /// sorted by path). Throws IoError or std::runtime_error on mismatch.
    void finish(const std::string& header);

    const std::vector<ArtifactEntry>& entries() const noexcept { return entries_; }
    const std::filesystem::path& root() const noexcept { return root_; }

private:
    std::filesystem::path resolve(const std::string& relative) const;

    std::filesystem::path root_;
    std::vector<ArtifactEntry> entries_;
};

struct ConditionSummary {
    std::string name;
    double noise_rate = 0.0;
    std::string initial_weights_sha256;
    TrainReport report;
    double clean_accuracy = 0.0;
    double noisy_accuracy = 0.0;
};

struct RunResult {
    std::filesystem::path directory;  // output_dir/exp1 or output_dir/exp2
    std::vector<ArtifactEntry> artifacts;
    std::vector<ConditionSummary> conditions;
};

/// Loads the font (built-in when font_path is empty) and checks it is a full A..Z alphabet.
std::vector<Glyph> load_alphabet(const std::optional<std::filesystem::path>& font_path);

/// 81-H-26 letter network: weights, SSE curve, activation table, strongly
/// activating letters, one weight heatmap per node and a row montage.
RunResult run_experiment1(const RunConfig& config, std::ostream& log);

/// 81-H-10 feature-set network trained without and with input noise from the
/// same initial weights; per-letter per-node overlay heatmaps for every set.
RunResult run_experiment2(const RunConfig& config, std::ostream& log);

/// Number of noisy copies per glyph used for the noisy-input accuracy.
inline constexpr std::size_t kNoisyEvalCopies = 100;

/// Prints the sweep result and returns ok or validation.
ExitCode run_gradcheck(const GradCheckOptions& options, std::ostream& out);

/// Directory name of a letter group inside exp2/{condition}/.
std::string set_directory(char label);

}  // namespace letterfeat
