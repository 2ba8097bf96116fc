#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace hyperego;
using namespace hyperego::testing;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "hyperego");
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("validate the fixture") {
    auto dir = scratch_dir("cli-validate");
    write_rows(dir / "sample", eight_papers_rows());
    auto r = invoke({"validate", "--dataset-prefix", (dir / "sample").string()});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.find("8 simplices, 8 nodes, 0 trivial") != std::string::npos);
    CHECK(r.out.find("1995..2001") != std::string::npos);
}

TEST_CASE("malformed input exits with code 2") {
    auto dir = scratch_dir("cli-bad");
    write_rows(dir / "bad", eight_papers_rows());
    {
        std::ofstream extra(DatasetFiles::from_prefix(dir / "bad").times, std::ios::app);
        extra << "2002\n";
    }
    auto r = invoke({"validate", "--dataset-prefix", (dir / "bad").string()});
    CHECK(r.code == cli::kMalformedInput);
    CHECK_FALSE(r.err.empty());

    write_rows(dir / "empty", {});
    CHECK(invoke({"validate", "--dataset-prefix", (dir / "empty").string()}).code == cli::kMalformedInput);
    CHECK(invoke({"validate", "--dataset-prefix", (dir / "missing").string()}).code == cli::kMalformedInput);
}

TEST_CASE("usage errors exit with code 1") {
    CHECK(invoke({}).code == cli::kUsage);
    CHECK(invoke({"frobnicate"}).code == cli::kUsage);
    CHECK(invoke({"validate", "--kind", "cubic"}).code == cli::kUsage);
    auto dir = scratch_dir("cli-usage");
    write_rows(dir / "sample", eight_papers_rows());
    CHECK(invoke({"stats", "--dataset-prefix", (dir / "sample").string(), "--out", dir.string()}).code == cli::kUsage);
}

TEST_CASE("no eligible egos exits with code 3") {
    auto dir = scratch_dir("cli-none");
    write_rows(dir / "sample", eight_papers_rows());
    auto r = invoke({"extract", "--dataset-prefix", (dir / "sample").string(), "--min-length", "50", "--out",
                     (dir / "out").string()});
    CHECK(r.code == cli::kNoEligibleEgos);
}

TEST_CASE("extract writes ego files") {
    auto dir = scratch_dir("cli-extract");
    write_rows(dir / "sample", eight_papers_rows());
    auto r = invoke({"extract", "--dataset-prefix", (dir / "sample").string(), "--kind", "radial", "--ego", "1",
                     "--min-length", "1", "--out", (dir / "out").string()});
    CHECK(r.code == cli::kOk);
    bool found = false;
    for (const auto& entry : fs::recursive_directory_iterator(dir / "out")) found = found || entry.is_regular_file();
    CHECK(found);
}

TEST_CASE("synth, stats and theorem are deterministic") {
    auto dir = scratch_dir("cli-det");
    const auto prefix = (dir / "loc").string();
    REQUIRE(invoke({"synth", "--dataset-prefix", prefix, "--egos", "40", "--seed", "3"}).code == cli::kOk);
    for (const char* out : {"a", "b"}) {
        auto r = invoke({"stats", "--dataset-prefix", prefix, "--seed", "9", "--measure", "intersection,spread",
                         "--out", (dir / out).string()});
        REQUIRE(r.code == cli::kOk);
    }
    std::size_t files = 0;
    for (const auto& entry : fs::directory_iterator(dir / "a")) {
        ++files;
        CHECK(slurp(entry.path()) == slurp(dir / "b" / entry.path().filename()));
    }
    CHECK(files >= 2);
    CHECK(fs::exists(dir / "a" / "star-intersection-ordered.csv"));
    CHECK(slurp(dir / "a" / "star-intersection-ordered.csv").rfind("length,variant,mean,count\n", 0) == 0);

    auto t = invoke({"theorem", "--max-simplices", "3", "--universe", "3", "--out", (dir / "thm").string()});
    CHECK(t.code == cli::kOk);
    CHECK(slurp(dir / "thm" / "theorem.csv").rfind("instance_id,m,c,d,bound,worst_local,optimum,holds\n", 0) == 0);
}

TEST_CASE("config file defaults and flag precedence") {
    auto dir = scratch_dir("cli-config");
    const auto prefix = (dir / "loc").string();
    REQUIRE(invoke({"synth", "--dataset-prefix", prefix, "--egos", "30", "--seed", "2"}).code == cli::kOk);
    std::ofstream(dir / "c.toml") << "[cv]\nseed = 9\nfolds = 3\nhidden = [8]\nepochs = 10\n";
    const auto config = (dir / "c.toml").string();
    auto from_file = invoke({"--config", config, "cv", "--dataset-prefix", prefix, "--out", (dir / "a").string()});
    REQUIRE(from_file.code == cli::kOk);
    CHECK(from_file.out.find("3-fold") != std::string::npos);
    auto overridden = invoke(
        {"--config", config, "cv", "--dataset-prefix", prefix, "--folds", "4", "--out", (dir / "b").string()});
    REQUIRE(overridden.code == cli::kOk);
    CHECK(overridden.out.find("4-fold") != std::string::npos);
}

TEST_CASE("train then reconstruct with a saved model") {
    auto dir = scratch_dir("cli-train");
    const auto prefix = (dir / "loc").string();
    REQUIRE(invoke({"synth", "--dataset-prefix", prefix, "--egos", "40", "--seed", "4"}).code == cli::kOk);
    auto tr = invoke({"train", "--dataset-prefix", prefix, "--seed", "1", "--hidden", "8", "--epochs", "20", "--out",
                      (dir / "m").string()});
    REQUIRE(tr.code == cli::kOk);
    REQUIRE(fs::exists(dir / "m" / "model.txt"));
    auto rc = invoke({"reconstruct", "--dataset-prefix", prefix, "--seed", "2", "--sample", "5", "--restarts", "2",
                      "--model", (dir / "m" / "model.txt").string(), "--no-timing", "--out", (dir / "r").string()});
    CHECK(rc.code == cli::kOk);
    CHECK(slurp(dir / "r" / "reconstruction.csv").rfind("ego,kind,method,accuracy,steps,seconds\n", 0) == 0);

    auto radial = invoke({"reconstruct", "--dataset-prefix", prefix, "--seed", "2", "--kind", "radial", "--sample", "3",
                          "--model", (dir / "m" / "model.txt").string(), "--out", (dir / "r2").string()});
    CHECK(radial.code == cli::kReconstructionFailed);
}

TEST_SUITE_END();
