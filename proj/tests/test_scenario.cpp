// Tests for scenario parsing/validation and the experiment runner's artifact
// contracts: CSV/PGM/JSON layouts, manifests with checksums, determinism.
#include <catch2/catch_amalgamated.hpp>

#include <jcrsim/runner.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

using namespace jcrsim;
namespace fs = std::filesystem;

namespace {

const char *kCheapRanging = R"(# cheap single-target ranging case
[scenario]
name = mini_range
experiment = ranging
seed = 5

[waveform]
sample_rate = 20e9
bit_rate = 105.26315789e6

[link]
tx_model = analytic

[radar]
standoff = 0.9
scatterer = 0.0 0.0 1.0
)";

std::string slurp(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

TEST_CASE("scenario text parses sections, defaults and overrides")
{
    const Scenario s = parse_scenario_text(kCheapRanging, "inline");
    CHECK(s.name == "mini_range");
    CHECK(s.experiment == ExperimentKind::ranging);
    CHECK(s.seed == 5);
    CHECK(s.waveform.sample_rate == Catch::Approx(20e9));
    CHECK(s.waveform.lfm.f0 == Catch::Approx(8.5e9));  // untouched default
    CHECK(s.link.tx_model == TxModel::analytic);
    CHECK(s.radar.standoff == Catch::Approx(0.9));
    REQUIRE(s.radar.scatterers.size() == 1);
    CHECK(s.radar.scatterers[0].reflectivity == 1.0);
    CHECK_NOTHROW(validate_scenario(s));
}

TEST_CASE("scatterer lists accept comma or space separators and check arity")
{
    const auto with_radar = [](const std::string &body) {
        return std::string("[scenario]\nname = t\n[radar]\n") + body + "\n";
    };
    const Scenario a = parse_scenario_text(with_radar("scatterer = 0.2, -0.1, 0.7"), "inline");
    REQUIRE(a.radar.scatterers.size() == 1);
    CHECK(a.radar.scatterers[0].x == Catch::Approx(0.2));
    CHECK(a.radar.scatterers[0].y == Catch::Approx(-0.1));
    CHECK(a.radar.scatterers[0].reflectivity == Catch::Approx(0.7));

    const Scenario b = parse_scenario_text(with_radar("scatterer = 0.2 -0.1 0.7"), "inline");
    CHECK(b.radar.scatterers[0].y == Catch::Approx(-0.1));

    // Repeatable key: several scatterers accumulate.
    const Scenario c = parse_scenario_text(
        with_radar("scatterer = 0 0 1\nscatterer = 0.1 0.2 0.5"), "inline");
    CHECK(c.radar.scatterers.size() == 2);

    CHECK_THROWS_WITH(parse_scenario_text(with_radar("scatterer = 0.2 0.0"), "inline"),
                      Catch::Matchers::ContainsSubstring("expects 3 values, got 2"));
    CHECK_THROWS_WITH(parse_scenario_text(with_radar("scatterer = a b c"), "inline"),
                      Catch::Matchers::ContainsSubstring("expects numbers"));
}

TEST_CASE("parser reports origin and line number for malformed input")
{
    CHECK_THROWS_WITH(parse_scenario_text("[scenario\nname = x\n", "bad.ini"),
                      Catch::Matchers::ContainsSubstring("bad.ini:1") &&
                          Catch::Matchers::ContainsSubstring("malformed section header"));
    CHECK_THROWS_WITH(parse_scenario_text("name = x\n", "bad.ini"),
                      Catch::Matchers::ContainsSubstring("outside of any [section]"));
    CHECK_THROWS_WITH(parse_scenario_text("[scenario]\nname x\n", "bad.ini"),
                      Catch::Matchers::ContainsSubstring("bad.ini:2") &&
                          Catch::Matchers::ContainsSubstring("expected 'key = value'"));
    CHECK_THROWS_WITH(parse_scenario_text("[scenario]\n= x\n", "bad.ini"),
                      Catch::Matchers::ContainsSubstring("missing key before"));
    CHECK_THROWS_WITH(parse_scenario_text("[scenario]\nname = a\ncolor = red\n", "bad.ini"),
                      Catch::Matchers::ContainsSubstring("unknown key 'color'"));
    CHECK_THROWS_WITH(parse_scenario_text("[scenario]\nname = a\n[paint]\nhue = 3\n", "bad.ini"),
                      Catch::Matchers::ContainsSubstring("unknown section [paint]"));
    CHECK_THROWS_WITH(parse_scenario_text("[scenario]\nname = a\nname = b\n", "bad.ini"),
                      Catch::Matchers::ContainsSubstring("duplicate key 'name'"));
    CHECK_THROWS_WITH(parse_scenario_text("[scenario]\nname = a\nseed = -4\n", "bad.ini"),
                      Catch::Matchers::ContainsSubstring("seed must be non-negative"));
    CHECK_THROWS_WITH(parse_scenario_text("[scenario]\nname = a\nseed = 1.5\n", "bad.ini"),
                      Catch::Matchers::ContainsSubstring("expects an integer"));
    CHECK_THROWS_WITH(
        parse_scenario_text("[scenario]\nname = a\n[waveform]\nf0 = fast\n", "bad.ini"),
        Catch::Matchers::ContainsSubstring("'f0' expects a number, got 'fast'"));
    CHECK_THROWS_WITH(parse_scenario_text("[waveform]\nf0 = 1e9\n", "nameless.ini"),
                      Catch::Matchers::ContainsSubstring("missing required key 'name'"));
    CHECK_THROWS_AS(parse_scenario_text("[scenario\n", "bad.ini"), ScenarioError);
}

TEST_CASE("enumerated values parse and reject unknowns with the allowed set")
{
    const auto wrap = [](const std::string &body) {
        return std::string("[scenario]\nname = t\n") + body + "\n";
    };
    CHECK(parse_scenario_text(wrap("experiment = isar"), "x").experiment == ExperimentKind::isar);
    CHECK(parse_scenario_text(wrap("experiment = phase_sweep"), "x").experiment ==
          ExperimentKind::phase_sweep);
    CHECK_THROWS_WITH(parse_scenario_text(wrap("experiment = sonar"), "x"),
                      Catch::Matchers::ContainsSubstring("unknown experiment 'sonar'") &&
                          Catch::Matchers::ContainsSubstring("spectra"));
    CHECK_THROWS_WITH(parse_scenario_text(wrap("[link]\ntx_model = magic"), "x"),
                      Catch::Matchers::ContainsSubstring("expected exact_chain or analytic"));
    CHECK_THROWS_WITH(parse_scenario_text(wrap("[radar]\nwindow = blackman"), "x"),
                      Catch::Matchers::ContainsSubstring("expected rect or hann"));
}

TEST_CASE("snr accepts inf for the noiseless channel")
{
    const Scenario s = parse_scenario_text(
        "[scenario]\nname = t\n[comm]\nsnr_db = inf\n", "inline");
    CHECK(std::isinf(s.comm.channel.snr_db));
    CHECK(s.comm.channel.snr_db > 0.0);
}

TEST_CASE("builtin scenarios all parse and validate")
{
    const auto &builtins = builtin_scenarios();
    REQUIRE(builtins.size() == 9);
    for (const auto &b : builtins)
    {
        INFO(b.name);
        CHECK(is_builtin_scenario(b.name));
        const Scenario s = load_builtin_scenario(b.name);
        CHECK(s.name == b.name);
        CHECK_NOTHROW(validate_scenario(s));
        CHECK_FALSE(s.description.empty());
    }
    CHECK_FALSE(is_builtin_scenario("fig999"));
    CHECK_THROWS_WITH(load_builtin_scenario("fig999"),
                      Catch::Matchers::ContainsSubstring("fig2_spectra") &&
                          Catch::Matchers::ContainsSubstring("sec35_phase_sweep"));
}

TEST_CASE("validation collects every problem into one report")
{
    Scenario s = parse_scenario_text(kCheapRanging, "inline");
    s.link.v_pi = -1.0;
    s.link.ebpf_taps = 10;
    s.outputs.dynamic_range_db = -3.0;
    try
    {
        validate_scenario(s);
        FAIL("expected ScenarioError");
    }
    catch (const ScenarioError &e)
    {
        const std::string msg = e.what();
        CHECK(msg.find("v_pi must be positive") != std::string::npos);
        CHECK(msg.find("ebpf_taps must be odd") != std::string::npos);
        CHECK(msg.find("dynamic_range_db must be positive") != std::string::npos);
    }
}

TEST_CASE("ranging run produces metrics, CSV artifact and deterministic bytes")
{
    const Scenario s = parse_scenario_text(kCheapRanging, "inline");
    const ResultBundle bundle = run_scenario(s);

    CHECK(bundle.metrics["schema_version"] == kMetricsSchemaVersion);
    CHECK(bundle.metrics["scenario"] == "mini_range");
    CHECK(bundle.metrics["experiment"] == "ranging");
    CHECK(bundle.metrics["seed"] == 5);
    const auto &res = bundle.metrics["results"];
    CHECK(res["max_abs_error_m"].get<double>() < 0.05);
    REQUIRE(res["estimated_distances_m"].size() == 1);
    CHECK(res["estimated_distances_m"][0].get<double>() == Catch::Approx(0.9).margin(0.05));

    // Artifact set: the range profile plus the metrics echo.
    REQUIRE(bundle.artifacts.size() == 2);
    const Artifact &csv = bundle.artifacts[0];
    CHECK(csv.filename == "range_profile.csv");
    CHECK(csv.kind == "csv");
    const std::string text(csv.bytes.begin(), csv.bytes.end());
    CHECK(text.rfind("beat_hz,distance_m,magnitude_db\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') > 100);

    const Artifact &mj = bundle.artifacts[1];
    CHECK(mj.filename == "metrics.json");
    const auto parsed = nlohmann::json::parse(std::string(mj.bytes.begin(), mj.bytes.end()));
    CHECK(parsed == bundle.metrics);

    // Same scenario, same seed: byte-identical artifacts.
    const ResultBundle again = run_scenario(s);
    REQUIRE(again.artifacts.size() == bundle.artifacts.size());
    for (std::size_t i = 0; i < bundle.artifacts.size(); ++i)
        CHECK(again.artifacts[i].bytes == bundle.artifacts[i].bytes);
}

TEST_CASE("run options override seed, rate and output directory")
{
    Scenario s = parse_scenario_text(kCheapRanging, "inline");
    RunOptions opts;
    opts.seed = 123;
    opts.out_dir = "custom_dir";
    const ResultBundle bundle = run_scenario(s, opts);
    CHECK(bundle.scenario.seed == 123);
    CHECK(bundle.metrics["seed"] == 123);
    CHECK(bundle.scenario.outputs.directory == "custom_dir");

    // Default directory derives from the scenario name.
    const ResultBundle plain = run_scenario(s);
    CHECK(plain.scenario.outputs.directory == "out/mini_range");
}

TEST_CASE("ISAR run emits a well-formed 16-bit PGM with an axes sidecar")
{
    const char *text = R"(
[scenario]
name = mini_isar
experiment = isar
seed = 3

[waveform]
sample_rate = 20e9
num_periods = 16

[link]
tx_model = analytic

[radar]
standoff = 1.0
omega = 195.3125
num_pulses = 16
scatterer = 0.0 0.0 1.0
range_pad = 2
doppler_pad = 2
window = hann
)";
    const Scenario s = parse_scenario_text(text, "inline");
    const ResultBundle bundle = run_scenario(s);

    const Artifact *pgm = nullptr;
    const Artifact *axes = nullptr;
    for (const auto &a : bundle.artifacts)
    {
        if (a.filename == "isar_image.pgm")
            pgm = &a;
        if (a.filename == "isar_image.axes.json")
            axes = &a;
    }
    REQUIRE(pgm != nullptr);
    REQUIRE(axes != nullptr);
    CHECK(pgm->kind == "pgm");

    // Header: P5, whitespace-separated dims, 16-bit maxval, then raw payload.
    const std::string head(pgm->bytes.begin(),
                           pgm->bytes.begin() + std::min<std::size_t>(64, pgm->bytes.size()));
    REQUIRE(head.rfind("P5\n", 0) == 0);
    std::size_t cols = 0, rows = 0, maxval = 0;
    REQUIRE(std::sscanf(head.c_str(), "P5\n%zu %zu\n%zu\n", &cols, &rows, &maxval) == 3);
    CHECK(maxval == 65535);
    const std::size_t header_len = head.find('\n', head.find('\n', 3) + 1) + 1;
    CHECK(pgm->bytes.size() == header_len + rows * cols * 2);

    const auto meta = nlohmann::json::parse(std::string(axes->bytes.begin(), axes->bytes.end()));
    CHECK(meta["rows"].get<std::size_t>() == rows);
    CHECK(meta["cols"].get<std::size_t>() == cols);
    CHECK(meta["range_axis_m"].size() == rows);
    CHECK(meta["cross_axis_m"].size() == cols);
    CHECK(meta["db_min"].get<double>() == Catch::Approx(-80.0));
    CHECK(meta["predicted_range_resolution_m"].get<double>() > 0.0);

    // The lone scatterer sits at the standoff range near zero cross-range.
    const auto &peaks = bundle.metrics["results"]["peaks"];
    REQUIRE(peaks.size() >= 1);
    CHECK(peaks[0]["range_m"].get<double>() == Catch::Approx(1.0).margin(0.1));
    CHECK(std::abs(peaks[0]["cross_range_m"].get<double>()) < 0.1);
}

TEST_CASE("export writes artifacts plus a manifest with verifiable checksums")
{
    const Scenario s = parse_scenario_text(kCheapRanging, "inline");
    const fs::path dir = fs::temp_directory_path() / "jcrsim_test_export";
    fs::remove_all(dir);

    RunOptions opts;
    opts.out_dir = dir.string();
    const ResultBundle bundle = run_scenario(s, opts);
    const auto written = export_artifacts(bundle);

    REQUIRE(written.size() == 3); // csv + metrics.json + manifest.json
    CHECK(fs::path(written.back()).filename() == "manifest.json");
    for (const auto &p : written)
        CHECK(fs::exists(p));

    const auto manifest = nlohmann::json::parse(slurp((dir / "manifest.json").string()));
    CHECK(manifest["scenario"] == "mini_range");
    CHECK(manifest["wall_time_s"].get<double>() >= 0.0);
    REQUIRE(manifest["artifacts"].size() == 2);
    for (const auto &entry : manifest["artifacts"])
    {
        const std::string data = slurp((dir / entry["file"].get<std::string>()).string());
        CHECK(entry["bytes"].get<std::size_t>() == data.size());
        const auto sum = detail::fnv1a64(reinterpret_cast<const unsigned char *>(data.data()),
                                         data.size());
        CHECK(entry["fnv1a64"].get<std::string>() == detail::hex64(sum));
    }

    // Filtered export keeps only the requested kind (manifest still written).
    fs::remove_all(dir);
    const auto csv_only = export_artifacts(bundle, "csv");
    REQUIRE(csv_only.size() == 2);
    CHECK(fs::path(csv_only[0]).filename() == "range_profile.csv");
    CHECK(fs::path(csv_only[1]).filename() == "manifest.json");
    CHECK_FALSE(fs::exists(dir / "metrics.json"));

    fs::remove_all(dir);
}
