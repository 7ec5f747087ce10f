#include <gtest/gtest.h>

#include <fstream>
#include <iterator>
#include <map>
#include <sstream>

#include "letterfeat/experiment.hpp"
#include "letterfeat/render.hpp"

using namespace letterfeat;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / ("letterfeat_test_" + name);
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::map<std::string, std::string> tree(const fs::path& root)
{
    std::map<std::string, std::string> files;
    for (const auto& e : fs::recursive_directory_iterator(root))
        if (e.is_regular_file())
            files[fs::relative(e.path(), root).generic_string()] = slurp(e.path());
    return files;
}

RunConfig quick(const fs::path& out)
{
    RunConfig c;
    c.output_dir = out;
    c.max_epochs = 60;
    c.cell_size = 4;
    c.gap = 2;
    return c;
}

}  // namespace

TEST(Experiment1, WritesExactArtifactSet)
{
    const fs::path out = scratch("exp1_set");
    std::ostringstream log;
    const RunResult r = run_experiment1(quick(out), log);
    EXPECT_EQ(r.artifacts.size(), 6u + 1 + 3 + 1);
    const auto files = tree(out / "exp1");
    EXPECT_EQ(files.size(), 12u);
    for (const char* name : {"weights.txt", "sse_curve.txt", "activations.txt", "strong_letters.txt",
                             "montage_nodes.ppm", "manifest.txt", "node1.ppm", "node6.ppm"})
        EXPECT_TRUE(files.count(name)) << name;
    EXPECT_NE(log.str().find("exp1: epochs 60"), std::string::npos);

    const PpmImage montage = parse_ppm(std::span(
        reinterpret_cast<const std::uint8_t*>(files.at("montage_nodes.ppm").data()), files.at("montage_nodes.ppm").size()));
    EXPECT_EQ(montage.width, 6u * 9 * 4 + 5 * 2);

    const Mlp net = load_weights_text(files.at("weights.txt"));
    EXPECT_EQ(net.output_count, 26u);
    EXPECT_EQ(net.hidden_count, 6u);

    const std::string manifest = files.at("manifest.txt");
    EXPECT_EQ(manifest.rfind("# experiment=exp1\n", 0), 0u);
    EXPECT_NE(manifest.find(" node3.ppm\n"), std::string::npos);
}

TEST(Experiment1, RerunIsByteIdentical)
{
    const fs::path a = scratch("exp1_a"), b = scratch("exp1_b");
    std::ostringstream log;
    RunConfig ca = quick(a), cb = quick(b);
    run_experiment1(ca, log);
    run_experiment1(cb, log);
    auto ta = tree(a / "exp1"), tb = tree(b / "exp1");
    // the manifest header records the output directory
    const auto strip = [](std::string m) { return m.substr(m.find("\n", m.find("# out=")) + 1); };
    EXPECT_EQ(strip(ta.at("manifest.txt")), strip(tb.at("manifest.txt")));
    ta.erase("manifest.txt");
    tb.erase("manifest.txt");
    EXPECT_EQ(ta, tb);

    RunConfig other = quick(b);
    other.seed = 2;
    run_experiment1(other, log);
    EXPECT_NE(tree(b / "exp1").at("weights.txt"), ta.at("weights.txt"));
}

TEST(Experiment1, HiddenCountControlsNodeImages)
{
    const fs::path out = scratch("exp1_h3");
    RunConfig c = quick(out);
    c.hidden_count = 3;
    std::ostringstream log;
    const RunResult r = run_experiment1(c, log);
    EXPECT_EQ(r.artifacts.size(), 3u + 1 + 3 + 1);
}

TEST(Experiment2, OverlayCountsFollowFeatureSets)
{
    const fs::path out = scratch("exp2_set");
    std::ostringstream log;
    const RunResult r = run_experiment2(quick(out), log);
    ASSERT_EQ(r.conditions.size(), 2u);
    EXPECT_EQ(r.conditions[0].initial_weights_sha256, r.conditions[1].initial_weights_sha256);
    EXPECT_EQ(r.conditions[0].noise_rate, 0.0);
    EXPECT_EQ(r.conditions[1].noise_rate, 0.1);

    const auto files = tree(out / "exp2");
    for (const char* condition : {"no_noise", "noise"})
        for (const FeatureSet& set : builtin_feature_sets().sets) {
            const std::string prefix = std::string(condition) + "/" + set_directory(set.label) + "/";
            std::size_t overlays = 0, montages = 0;
            for (const auto& [path, content] : files) {
                if (path.rfind(prefix, 0) != 0)
                    continue;
                (path.find("_node") != std::string::npos ? overlays : montages)++;
            }
            EXPECT_EQ(overlays, 6 * set.letters.size()) << prefix;
            EXPECT_EQ(montages, set.letters.size()) << prefix;
        }
    EXPECT_TRUE(files.count("no_noise/set_A/H_node6.ppm"));
    EXPECT_TRUE(files.count("noise/set_I/J_node1.ppm"));
    EXPECT_TRUE(files.count("noise/set_I/montage_Z.ppm"));

    const std::string summary = files.at("summary.txt");
    EXPECT_NE(summary.find("no_noise 0 " + r.conditions[0].initial_weights_sha256), std::string::npos);
    EXPECT_NE(summary.find("noise 0.1 " + r.conditions[0].initial_weights_sha256), std::string::npos);
}

TEST(Experiment2, RerunIsByteIdentical)
{
    const fs::path a = scratch("exp2_a");
    std::ostringstream log;
    run_experiment2(quick(a), log);
    const auto first = tree(a / "exp2");
    run_experiment2(quick(a), log);
    EXPECT_EQ(first, tree(a / "exp2"));
}

TEST(ArtifactWriter, RejectsEscapingPaths)
{
    ArtifactWriter w(scratch("writer"));
    EXPECT_THROW(w.write("../evil.txt", std::string("x")), std::invalid_argument);
    EXPECT_THROW(w.write("/tmp/evil.txt", std::string("x")), std::invalid_argument);
    EXPECT_THROW(w.write("a/../../evil.txt", std::string("x")), std::invalid_argument);
    EXPECT_NO_THROW(w.write("a/ok.txt", std::string("x")));
}

TEST(ArtifactWriter, DetectsTamperingBeforeManifest)
{
    const fs::path dir = scratch("tamper");
    ArtifactWriter w(dir);
    w.write("a.txt", std::string("hello"));
    std::ofstream(dir / "a.txt") << "changed";
    EXPECT_THROW(w.finish(""), IoError);
    EXPECT_FALSE(fs::exists(dir / "manifest.txt"));
}

TEST(Alphabet, FontLoading)
{
    EXPECT_EQ(load_alphabet(std::nullopt), builtin_alphabet());
    EXPECT_EQ(load_alphabet(fs::path(LETTERFEAT_DATA_DIR) / "font.txt"), builtin_alphabet());
    EXPECT_THROW(load_alphabet(fs::path("/nonexistent/font.txt")), IoError);

    const fs::path partial = scratch("font") ;
    fs::create_directories(partial);
    std::ofstream(partial / "short.txt") << render_font({builtin_glyph('A')});
    EXPECT_THROW(load_alphabet(partial / "short.txt"), std::invalid_argument);
}

TEST(Config, DumpAndValidate)
{
    RunConfig c;
    c.experiment = Experiment::exp2;
    c.seed = 7;
    const std::string text = dump_config(c);
    EXPECT_NE(text.find("experiment=exp2\n"), std::string::npos);
    EXPECT_NE(text.find("seed=7\n"), std::string::npos);
    EXPECT_NE(text.find("outputs=10\n"), std::string::npos);
    EXPECT_NE(text.find("eta=0.5\n"), std::string::npos);
    EXPECT_NE(text.find("epsilon=0.01\n"), std::string::npos);
    EXPECT_NE(text.find("max_epochs=5000\n"), std::string::npos);
    EXPECT_NE(text.find("hidden=6\n"), std::string::npos);

    c.hidden_count = 0;
    EXPECT_THROW(c.validate(), UsageError);
    c = {};
    c.noise_rate = 1.5;
    EXPECT_THROW(c.validate(), UsageError);
}

TEST(GradCheck, ExitCodes)
{
    std::ostringstream out;
    GradCheckOptions opt;
    opt.instances = 1;
    EXPECT_EQ(run_gradcheck(opt, out), ExitCode::ok);
    EXPECT_NE(out.str().find("2-2-1: 1 instances"), std::string::npos);
    EXPECT_NE(out.str().find("81-6-10: 1 instances"), std::string::npos);

    opt.slope = [](double s, double alpha) { return alpha * s; };
    EXPECT_EQ(run_gradcheck(opt, out), ExitCode::validation);
    opt.instances = 0;
    EXPECT_THROW(run_gradcheck(opt, out), UsageError);
}
