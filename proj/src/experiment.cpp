#include "letterfeat/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>
#include <system_error>

#include "letterfeat/analysis.hpp"
#include "letterfeat/digest.hpp"
#include "letterfeat/render.hpp"

namespace letterfeat {

namespace fs = std::filesystem;

namespace {

std::span<const std::uint8_t> as_bytes(const std::string& text)
{
    return {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()};
}

std::string read_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot read " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string fixed(double v, int digits)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string node_file(std::size_t node) { return "node" + std::to_string(node + 1) + ".ppm"; }

// Accuracy on kNoisyEvalCopies noisy presentations of every pattern.
double noisy_accuracy(const Mlp& net, const Dataset& dataset, double rate, std::uint64_t seed)
{
    Rng rng(seed);
    std::size_t hits = 0;
    std::size_t total = 0;
    for (std::size_t copy = 0; copy < kNoisyEvalCopies; ++copy) {
        for (const Pattern& p : dataset) {
            const InputVector noisy = apply_noise(p.input, rate, rng);
            hits += classify(net, noisy) == hot_index(p.target) ? 1 : 0;
            ++total;
        }
    }
    return static_cast<double>(hits) / static_cast<double>(total);
}

// Renders every (path, maps) job, in parallel, and returns the bytes in job order.
struct RenderJob {
    std::string path;
    std::vector<Heatmap9x9> maps;
};

std::vector<Bytes> render_jobs(const std::vector<RenderJob>& jobs, const RunConfig& config)
{
    std::vector<Bytes> images(jobs.size());
    const Palette& palette = yellow_red_palette();
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < jobs.size(); ++i)
        images[i] = render_montage(jobs[i].maps, palette, config.cell_size, config.gap);
    return images;
}

void write_jobs(ArtifactWriter& writer, const std::vector<RenderJob>& jobs, const RunConfig& config)
{
    const std::vector<Bytes> images = render_jobs(jobs, config);
    for (std::size_t i = 0; i < jobs.size(); ++i)
        writer.write(jobs[i].path, images[i]);
}

std::string manifest_header(const RunConfig& config)
{
    std::string header;
    std::istringstream lines(dump_config(config));
    for (std::string line; std::getline(lines, line);)
        header += "# " + line + '\n';
    return header;
}

std::string experiment_name(Experiment e) { return e == Experiment::exp1 ? "exp1" : "exp2"; }

}  // namespace

TrainConfig RunConfig::train_config(double noise) const
{
    TrainConfig c;
    c.eta = eta;
    c.epsilon = epsilon;
    c.max_epochs = max_epochs;
    c.seed = seed;
    c.noise_rate = noise;
    c.shuffle = true;
    return c;
}

void RunConfig::validate() const
{
    if (hidden_count < 1)
        throw UsageError("--hidden must be at least 1");
    if (cell_size < 1)
        throw UsageError("cell size must be at least 1");
    if (!(threshold > 0.0 && threshold < 1.0))
        throw UsageError("threshold must be in (0, 1)");
    try {
        train_config(noise_rate).validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

std::string dump_config(const RunConfig& c)
{
    std::string out;
    out += "experiment=" + experiment_name(c.experiment) + '\n';
    out += "seed=" + std::to_string(c.seed) + '\n';
    out += "hidden=" + std::to_string(c.hidden_count) + '\n';
    out += "outputs=" + std::to_string(c.output_count()) + '\n';
    out += "eta=" + format_double(c.eta) + '\n';
    out += "epsilon=" + format_double(c.epsilon) + '\n';
    out += "max_epochs=" + std::to_string(c.max_epochs) + '\n';
    out += "noise=" + format_double(c.noise_rate) + '\n';
    out += "alpha=1\n";
    out += "init=uniform[-0.5,0.5]\n";
    out += "font=" + (c.font_path ? c.font_path->generic_string() : std::string("builtin")) + '\n';
    out += "cell_size=" + std::to_string(c.cell_size) + '\n';
    out += "gap=" + std::to_string(c.gap) + '\n';
    out += "threshold=" + format_double(c.threshold) + '\n';
    out += "out=" + c.output_dir.generic_string() + '\n';
    return out;
}

ArtifactWriter::ArtifactWriter(fs::path root) : root_(std::move(root))
{
    std::error_code ec;
    fs::create_directories(root_, ec);
    if (ec || !fs::is_directory(root_))
        throw IoError("cannot create output directory " + root_.string()
                      + (ec ? ": " + ec.message() : std::string()));
}

fs::path ArtifactWriter::resolve(const std::string& relative) const
{
    const fs::path rel(relative);
    if (relative.empty() || rel.is_absolute() || rel.has_root_name())
        throw std::invalid_argument("artifact path must be relative: " + relative);
    for (const auto& part : rel)
        if (part == "..")
            throw std::invalid_argument("artifact path escapes output directory: " + relative);
    return root_ / rel;
}

void ArtifactWriter::write(const std::string& relative, std::span<const std::uint8_t> bytes)
{
    const fs::path target = resolve(relative);
    std::error_code ec;
    fs::create_directories(target.parent_path(), ec);
    if (ec)
        throw IoError("cannot create " + target.parent_path().string() + ": " + ec.message());
    std::ofstream out(target, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open " + target.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    out.close();
    if (!out)
        throw IoError("write failed for " + target.string());
    entries_.push_back({relative, sha256_hex(bytes), bytes.size()});
}

void ArtifactWriter::write(const std::string& relative, const std::string& text)
{
    write(relative, as_bytes(text));
}

void ArtifactWriter::finish(const std::string& header)
{
    std::sort(entries_.begin(), entries_.end(),
              [](const ArtifactEntry& a, const ArtifactEntry& b) { return a.path < b.path; });
    for (const ArtifactEntry& e : entries_) {
        const std::string content = read_file(resolve(e.path));
        if (content.size() != e.size || sha256_hex(content) != e.sha256)
            throw IoError("artifact changed after writing: " + e.path);
        if (e.path.size() > 4 && e.path.ends_with(".ppm"))
            parse_ppm(as_bytes(content));
    }
    std::string manifest = header;
    for (const ArtifactEntry& e : entries_)
        manifest += e.sha256 + ' ' + std::to_string(e.size) + ' ' + e.path + '\n';
    const fs::path target = root_ / "manifest.txt";
    std::ofstream out(target, std::ios::binary | std::ios::trunc);
    out << manifest;
    out.close();
    if (!out)
        throw IoError("cannot write " + target.string());
}

std::vector<Glyph> load_alphabet(const std::optional<fs::path>& font_path)
{
    if (!font_path)
        return builtin_alphabet();
    std::ifstream in(*font_path);
    if (!in)
        throw IoError("cannot open font file " + font_path->string());
    std::vector<Glyph> glyphs = parse_font(in);
    if (glyphs.size() != kLetterCount)
        throw std::invalid_argument("font file defines " + std::to_string(glyphs.size())
                                    + " letters, a complete alphabet needs 26");
    std::sort(glyphs.begin(), glyphs.end(), [](const Glyph& a, const Glyph& b) { return a.letter < b.letter; });
    for (std::size_t i = 0; i < glyphs.size(); ++i)
        for (std::size_t j = i + 1; j < glyphs.size(); ++j)
            if (glyphs[i].pixels == glyphs[j].pixels)
                throw std::invalid_argument(std::string("font letters ") + glyphs[i].letter + " and "
                                            + glyphs[j].letter + " have identical bitmaps");
    return glyphs;
}

RunResult run_experiment1(const RunConfig& base, std::ostream& log)
{
    RunConfig config = base;
    config.experiment = Experiment::exp1;
    config.validate();
    const std::vector<Glyph> glyphs = load_alphabet(config.font_path);
    const Dataset data = targets_experiment1(glyphs);

    ArtifactWriter writer(config.output_dir / "exp1");

    Rng init_rng(derive_seed(config.seed, 0));
    Mlp net = init_random(config.hidden_count, kLetterCount, init_rng);
    Rng train_rng(derive_seed(config.seed, 1));
    const TrainReport report = train(net, data, config.train_config(0.0), train_rng);
    log << "exp1: epochs " << report.epochs_run << ", final SSE " << format_double(report.final_sse)
        << ", converged " << (report.converged ? "yes" : "no") << ", accuracy " << fixed(report.final_accuracy, 4)
        << '\n';

    writer.write("weights.txt", save_weights(net));
    writer.write("sse_curve.txt", format_sse_curve(report));
    const ActivationTable table = activation_table(net, glyphs);
    writer.write("activations.txt", format_activation_table(table));
    writer.write("strong_letters.txt", format_strong_letters(table, config.threshold));

    std::vector<RenderJob> jobs;
    RenderJob montage{"montage_nodes.ppm", {}};
    for (std::size_t j = 0; j < config.hidden_count; ++j) {
        Heatmap9x9 map = weight_heatmap(net, j);
        map.tag = "exp1";
        jobs.push_back({node_file(j), {map}});
        montage.maps.push_back(map);
    }
    jobs.push_back(std::move(montage));
    write_jobs(writer, jobs, config);

    writer.finish(manifest_header(config));
    ConditionSummary summary{"no_noise", 0.0, {}, report, report.final_accuracy, 0.0};
    return {writer.root(), writer.entries(), {summary}};
}

std::string set_directory(char label) { return std::string("set_") + label; }

RunResult run_experiment2(const RunConfig& base, std::ostream& log)
{
    RunConfig config = base;
    config.experiment = Experiment::exp2;
    config.validate();
    const std::vector<Glyph> glyphs = load_alphabet(config.font_path);
    const Dataset data = targets_experiment2(glyphs);
    const FeatureSetTable& table = builtin_feature_sets();

    ArtifactWriter writer(config.output_dir / "exp2");
    writer.write("feature_sets.txt", format_feature_sets(table));

    Rng init_rng(derive_seed(config.seed, 0));
    const Mlp initial = init_random(config.hidden_count, kFeatureSetCount, init_rng);
    const std::string initial_text = save_weights(initial);
    writer.write("initial_weights.txt", initial_text);

    std::vector<ConditionSummary> summaries;
    std::vector<RenderJob> jobs;
    const std::pair<const char*, double> conditions[] = {{"no_noise", 0.0}, {"noise", config.noise_rate}};
    for (const auto& [name, rate] : conditions) {
        Mlp net = initial;
        ConditionSummary s;
        s.name = name;
        s.noise_rate = rate;
        s.initial_weights_sha256 = sha256_hex(save_weights(net));

        Rng train_rng(derive_seed(config.seed, 1));
        s.report = train(net, data, config.train_config(rate), train_rng);
        s.clean_accuracy = accuracy(net, data);
        s.noisy_accuracy = noisy_accuracy(net, data, config.noise_rate, derive_seed(config.seed, 2));
        log << "exp2 " << name << ": epochs " << s.report.epochs_run << ", final SSE "
            << format_double(s.report.final_sse) << ", clean accuracy " << fixed(s.clean_accuracy, 4)
            << ", noisy accuracy " << fixed(s.noisy_accuracy, 4) << '\n';

        const std::string dir = std::string(name) + '/';
        writer.write(dir + "weights.txt", save_weights(net));
        writer.write(dir + "sse_curve.txt", format_sse_curve(s.report));
        const ActivationTable acts = activation_table(net, glyphs);
        writer.write(dir + "activations.txt", format_activation_table(acts));
        writer.write(dir + "strong_letters.txt", format_strong_letters(acts, config.threshold));

        for (const FeatureSet& set : table.sets) {
            const std::string set_dir = dir + set_directory(set.label) + '/';
            for (char letter : set.letters) {
                const Glyph& glyph = glyphs[static_cast<std::size_t>(letter - 'A')];
                RenderJob row{set_dir + "montage_" + letter + ".ppm", {}};
                for (std::size_t j = 0; j < config.hidden_count; ++j) {
                    Heatmap9x9 map = letter_overlay_heatmap(net, j, glyph);
                    map.tag = std::string("exp2/") + name;
                    jobs.push_back({set_dir + letter + "_node" + std::to_string(j + 1) + ".ppm", {map}});
                    row.maps.push_back(map);
                }
                jobs.push_back(std::move(row));
            }
        }
        summaries.push_back(std::move(s));
    }
    write_jobs(writer, jobs, config);

    std::string summary = "condition noise_rate initial_weights_sha256 epochs converged final_sse clean_accuracy "
                          "noisy_accuracy\n";
    for (const ConditionSummary& s : summaries)
        summary += s.name + ' ' + format_double(s.noise_rate) + ' ' + s.initial_weights_sha256 + ' '
                   + std::to_string(s.report.epochs_run) + ' ' + (s.report.converged ? "yes" : "no") + ' '
                   + format_double(s.report.final_sse) + ' ' + fixed(s.clean_accuracy, 4) + ' '
                   + fixed(s.noisy_accuracy, 4) + '\n';
    writer.write("summary.txt", summary);

    writer.finish(manifest_header(config));
    return {writer.root(), writer.entries(), summaries};
}

ExitCode run_gradcheck(const GradCheckOptions& options, std::ostream& out)
{
    if (options.instances < 1)
        throw UsageError("--instances must be at least 1");
    const GradCheckReport report = gradient_check_sweep_omp(options);
    for (const GradCheckScale& s : report.scales) {
        char line[160];
        std::snprintf(line, sizeof line, "%zu-%zu-%zu: %zu instances, max rel error %.3e, max abs error %.3e\n",
                      s.shape.inputs, s.shape.hidden, s.shape.outputs, s.instances, s.max_relative_error,
                      s.max_absolute_error);
        out << line;
    }
    char line[160];
    std::snprintf(line, sizeof line, "max relative error %.3e (tolerance %.0e): %s\n", report.max_relative_error(),
                  report.rel_tol, report.passed() ? "ok" : "FAILED");
    out << line;
    return report.passed() ? ExitCode::ok : ExitCode::validation;
}

}  // namespace letterfeat
