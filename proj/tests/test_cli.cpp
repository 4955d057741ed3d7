#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "periodlab/cli.hpp"

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / "periodlab_cli" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

int run(std::initializer_list<std::string> args) {
    return periodlab::run_cli(std::vector<std::string>(args));
}

}  // namespace

TEST_CASE("usage errors exit 2") {
    CHECK(run({"nonsense"}) == 2);
    CHECK(run({"moments"}) == 2);            // missing required --c
    CHECK(run({"periods"}) == 2);            // missing required --cusp
    fs::path dir = fresh_dir("usage");
    CHECK(run({"ltwist", "--cusp", "nonsense", "--s", "3", "--out-dir", dir.string()}) == 2);
}

TEST_CASE("form: build, export, reload, validate") {
    fs::path dir = fresh_dir("form");
    CHECK(run({"form", "--form", "delta", "--coeffs", "50", "--validate", "--export", "d.qexp",
               "--out-dir", dir.string()}) == 0);
    CHECK(fs::exists(dir / "d.qexp"));
    CHECK(fs::exists(dir / "manifest.json"));

    // reload through --form <path>
    fs::path dir2 = fresh_dir("form2");
    CHECK(run({"form", "--form", (dir / "d.qexp").string(), "--validate", "--out-dir",
               dir2.string()}) == 0);
}

TEST_CASE("form: invariant violation exits 1") {
    fs::path dir = fresh_dir("badform");
    {
        std::ofstream out(dir / "bad.qexp");
        out << "weight=12 level=1 eigenform=1 count=2\n1 1\n2 -100000\n";
    }
    CHECK(run({"form", "--form", (dir / "bad.qexp").string(), "--out-dir", dir.string()}) == 1);
}

TEST_CASE("moments: byte-identical reruns") {
    fs::path d1 = fresh_dir("m1"), d2 = fresh_dir("m2");
    CHECK(run({"moments", "--form", "delta", "--coeffs", "2000", "--spec", "a0=1,b0=1", "--c",
               "53,101", "--out-dir", d1.string()}) == 0);
    CHECK(run({"moments", "--form", "delta", "--coeffs", "2000", "--spec", "a0=1,b0=1", "--c",
               "53,101", "--out-dir", d2.string()}) == 0);
    CHECK(slurp(d1 / "moments.csv") == slurp(d2 / "moments.csv"));
    CHECK(slurp(d1 / "moments_alt.csv") == slurp(d2 / "moments_alt.csv"));
    CHECK(!slurp(d1 / "moments.csv").empty());
}

TEST_CASE("moments: thread count does not change bytes") {
    fs::path d1 = fresh_dir("mt1"), d2 = fresh_dir("mt2");
    CHECK(run({"moments", "--threads", "1", "--form", "delta", "--coeffs", "2000", "--spec",
               "a0=1,b0=1", "--c", "101", "--out-dir", d1.string()}) == 0);
    CHECK(run({"moments", "--threads", "3", "--form", "delta", "--coeffs", "2000", "--spec",
               "a0=1,b0=1", "--c", "101", "--out-dir", d2.string()}) == 0);
    CHECK(slurp(d1 / "moments.csv") == slurp(d2 / "moments.csv"));
}

TEST_CASE("kernel override changes backend, not correctness") {
    fs::path d1 = fresh_dir("k1");
    CHECK(run({"kloosterman", "--kernel", "scalar", "--m", "1", "--n", "1", "--c", "997",
               "--out-dir", d1.string()}) == 0);
    std::string manifest = slurp(d1 / "manifest.json");
    CHECK(manifest.find("\"kernel\": \"scalar\"") != std::string::npos);
}

TEST_CASE("zeros: csv schema and determinism under fixed seed") {
    fs::path d1 = fresh_dir("z1"), d2 = fresh_dir("z2");
    CHECK(run({"zeros", "--form", "delta", "--coeffs", "2000", "--c", "101", "--per-c", "4",
               "--seed", "7", "--out-dir", d1.string()}) == 0);
    CHECK(run({"zeros", "--form", "delta", "--coeffs", "2000", "--c", "101", "--per-c", "4",
               "--seed", "7", "--out-dir", d2.string()}) == 0);
    std::string csv = slurp(d1 / "zeros.csv");
    CHECK(csv == slurp(d2 / "zeros.csv"));
    CHECK(csv.rfind("a,c,root_re,root_im,deviation,normalized_ratio,residual\n", 0) == 0);
}

TEST_CASE("kloosterman weil table exits by check result") {
    fs::path dir = fresh_dir("weil");
    CHECK(run({"kloosterman", "--weil", "--cmax", "60", "--mmax", "3", "--nmax", "3", "--out-dir",
               dir.string()}) == 0);
    std::string csv = slurp(dir / "weil.csv");
    CHECK(csv.rfind("m,n,c,S,weil_bound,slack\n", 0) == 0);
}

TEST_CASE("ltwist calibrate reports the sign conventions") {
    fs::path dir = fresh_dir("cal");
    CHECK(run({"ltwist", "--calibrate", "--form", "eigenform:18", "--coeffs", "3000", "--out-dir",
               dir.string()}) == 0);
    std::string manifest = slurp(dir / "manifest.json");
    CHECK(manifest.find("\"fe_sign\": -1") != std::string::npos);
    CHECK(manifest.find("\"fe_sign_matches\": \"i^k\"") != std::string::npos);
}

TEST_CASE("dist: outputs and ks in manifest") {
    fs::path dir = fresh_dir("dist");
    CHECK(run({"dist", "--form", "delta", "--coeffs", "2000", "--c", "101", "--proj", "re_u0",
               "--grid-y", "500", "--grid-z", "2", "--out-dir", dir.string()}) == 0);
    CHECK(fs::exists(dir / "dist.csv"));
    CHECK(fs::exists(dir / "limitlaw.csv"));
    CHECK(fs::exists(dir / "hist.csv"));
    CHECK(slurp(dir / "manifest.json").find("\"ks\"") != std::string::npos);
}

TEST_CASE("verify subcommand passes end to end") {
    fs::path dir = fresh_dir("verify");
    CHECK(run({"verify", "--form", "delta", "--coeffs", "3000", "--out-dir", dir.string()}) == 0);
    std::string manifest = slurp(dir / "manifest.json");
    CHECK(manifest.find("\"checks\"") != std::string::npos);
}
