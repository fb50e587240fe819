// Golden-record regression test: every builtin scenario's metrics are pinned
// against a committed JSON snapshot.  Regenerate with
//   JCRSIM_REGEN_GOLDEN=1 ./test_golden
// after an intentional physics or schema change, and review the diff.
#include <catch2/catch_amalgamated.hpp>

#include <jcrsim/runner.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

using namespace jcrsim;
namespace fs = std::filesystem;

#ifndef JCRSIM_GOLDEN_DIR
#error "JCRSIM_GOLDEN_DIR must be defined by the build"
#endif

namespace {

// Numeric leaves must agree to 1e-5 relative or 1e-7 absolute — far looser
// than the deterministic pipeline needs, far tighter than any physical
// regression could hide under.
bool close_enough(double a, double b)
{
    const double diff = std::abs(a - b);
    return diff <= 1e-7 || diff <= 1e-5 * std::max(std::abs(a), std::abs(b));
}

void compare_json(const nlohmann::json &got, const nlohmann::json &want, const std::string &path,
                  std::vector<std::string> &problems)
{
    if (want.is_object())
    {
        if (!got.is_object())
        {
            problems.push_back(path + ": expected object, got " + got.type_name());
            return;
        }
        for (auto it = want.begin(); it != want.end(); ++it)
        {
            if (!got.contains(it.key()))
            {
                problems.push_back(path + "." + it.key() + ": missing");
                continue;
            }
            compare_json(got.at(it.key()), it.value(), path + "." + it.key(), problems);
        }
        for (auto it = got.begin(); it != got.end(); ++it)
            if (!want.contains(it.key()))
                problems.push_back(path + "." + it.key() + ": unexpected new key");
    }
    else if (want.is_array())
    {
        if (!got.is_array() || got.size() != want.size())
        {
            problems.push_back(path + ": array shape mismatch");
            return;
        }
        for (std::size_t i = 0; i < want.size(); ++i)
            compare_json(got.at(i), want.at(i), path + "[" + std::to_string(i) + "]", problems);
    }
    else if (want.is_number() && got.is_number())
    {
        const double a = got.get<double>();
        const double b = want.get<double>();
        if (!close_enough(a, b))
            problems.push_back(path + ": " + std::to_string(a) + " != golden " + std::to_string(b));
    }
    else if (got != want)
    {
        problems.push_back(path + ": " + got.dump() + " != golden " + want.dump());
    }
}

} // namespace

TEST_CASE("builtin scenario metrics match their golden records")
{
    const bool regen = std::getenv("JCRSIM_REGEN_GOLDEN") != nullptr;
    const fs::path golden_dir{JCRSIM_GOLDEN_DIR};

    for (const auto &b : builtin_scenarios())
    {
        DYNAMIC_SECTION(b.name)
        {
            const Scenario s = load_builtin_scenario(b.name);
            const ResultBundle bundle = run_scenario(s);
            const fs::path file = golden_dir / (b.name + std::string(".json"));

            if (regen)
            {
                fs::create_directories(golden_dir);
                std::ofstream out(file, std::ios::binary | std::ios::trunc);
                REQUIRE(out.good());
                out << bundle.metrics.dump(2) << "\n";
                WARN("regenerated " << file.string());
            }
            else
            {
                INFO("golden file: " << file.string());
                REQUIRE(fs::exists(file));
                std::ifstream in(file, std::ios::binary);
                nlohmann::json want;
                in >> want;

                std::vector<std::string> problems;
                compare_json(bundle.metrics, want, b.name, problems);
                for (const auto &p : problems)
                    INFO(p);
                CHECK(problems.empty());
            }
        }
    }
}
