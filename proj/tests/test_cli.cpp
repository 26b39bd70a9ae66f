#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

std::string g_binary;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("regretlab_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
    std::string file(const char* name) const { return (path / name).string(); }
};

int run_cli(const std::string& args) {
    const std::string cmd = g_binary + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

long count_lines(const std::string& path) {
    std::ifstream in(path);
    std::string line;
    long n = 0;
    while (std::getline(in, line)) ++n;
    return n;
}

} // namespace

TEST_CASE("run: quadratic OGD smoke run writes T rows and exits 0") {
    TempDir tmp;
    const std::string out = tmp.file("trace.csv");
    const int rc = run_cli("run --algo ogd --alpha 1.0 --T 100 --seed 3 --out " + out);
    CHECK(rc == 0);
    CHECK(count_lines(out) == 101); // header + 100 rows
}

TEST_CASE("run: unknown algorithm is a usage error (exit 2)") {
    TempDir tmp;
    CHECK(run_cli("run --algo warp_drive --T 10 --out " + tmp.file("x.csv")) == 2);
    CHECK(run_cli("definitely-not-a-subcommand") == 2);
}

TEST_CASE("config round trip: saved effective config reproduces the CSV exactly") {
    TempDir tmp;
    const std::string out1 = tmp.file("a.csv");
    const std::string out2 = tmp.file("b.csv");
    const std::string cfg = tmp.file("effective.cfg");
    CHECK(run_cli("run --algo sadam --alpha 0.5 --T 64 --seed 11 --out " + out1 +
                  " --save-config " + cfg) == 0);
    CHECK(run_cli("run --config " + cfg + " --out " + out2) == 0);
    const std::string a = slurp(out1), b = slurp(out2);
    CHECK(!a.empty());
    CHECK(a == b);
}

TEST_CASE("sweep: singleton alpha writes one trace per algorithm plus a summary") {
    TempDir tmp;
    const std::string cfg = tmp.file("sweep.cfg");
    {
        std::ofstream out(cfg);
        out << "[experiment]\nT = 32\nseed = 4\n"
            << "[stream]\nkind = quadratic_sequence\ndim = 2\n"
            << "[sweep]\nalgos = sadam,ogd\nalphas = 0.5\nout_dir = " << tmp.file("grid") << "\n";
    }
    CHECK(run_cli("sweep --config " + cfg) == 0);
    CHECK(fs::exists(tmp.file("grid") + std::string("/summary.csv")));
    CHECK(count_lines(tmp.file("grid") + std::string("/summary.csv")) == 3); // header + 2
    CHECK(fs::exists(tmp.file("grid") + std::string("/sadam_a0.5.csv")));
    CHECK(fs::exists(tmp.file("grid") + std::string("/ogd_a0.5.csv")));
}

TEST_CASE("sweep: empty alpha list is a usage error") {
    TempDir tmp;
    const std::string cfg = tmp.file("sweep.cfg");
    {
        std::ofstream out(cfg);
        out << "[experiment]\nT = 8\n[stream]\nkind = quadratic_sequence\n";
    }
    CHECK(run_cli("sweep --config " + cfg) == 2);
}

TEST_CASE("verify: small suites pass and write a report CSV") {
    TempDir tmp;
    const std::string report = tmp.file("report.csv");
    CHECK(run_cli("verify --suite lemmas --trials 5 --seed 2 --out " + report) == 0);
    CHECK(count_lines(report) >= 2);
    CHECK(run_cli("verify --suite conditions --trials 5 --seed 2") == 0);
    CHECK(run_cli("verify --suite nonsense --trials 5") == 2);
    CHECK(run_cli("verify --suite lemmas --trials 0") == 2);
}

TEST_CASE("compare-bounds: zero-gradient stream has flat cor2 and growing mukkamala") {
    TempDir tmp;
    const std::string out = tmp.file("cmp.csv");
    CHECK(run_cli("run --help") == 0);
    // p = 0 sparse stream: gradients identically zero
    const std::string cfg = tmp.file("cmp.cfg");
    {
        std::ofstream f(cfg);
        f << "[experiment]\nalgo = sc_rmsprop\nT = 200\nseed = 5\n"
          << "[schedule]\nalpha = 2.0\ndelta_kind = constant\ndelta = 0.01\n"
          << "[stream]\nkind = sparse_synthetic\ndim = 1\np = 0\ng_mag = 1\n";
    }
    CHECK(run_cli("compare-bounds --config " + cfg + " --out " + out) == 0);
    std::ifstream in(out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "t,regret,cor2_bound,mukkamala_bound");
    double prev_mk = -1.0, first_cor2 = -1.0;
    bool cor2_flat = true, mk_growing = true;
    long rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        std::istringstream ss(line);
        std::string cell;
        std::getline(ss, cell, ',');
        std::getline(ss, cell, ',');
        std::getline(ss, cell, ',');
        const double cor2 = std::stod(cell);
        std::getline(ss, cell, ',');
        const double mk = std::stod(cell);
        if (first_cor2 < 0) first_cor2 = cor2;
        if (cor2 != first_cor2) cor2_flat = false;
        if (mk <= prev_mk) mk_growing = false;
        prev_mk = mk;
    }
    CHECK(rows == 200);
    CHECK(cor2_flat);
    CHECK(mk_growing);
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: test_cli <path-to-regret_lab>\n");
        return 1;
    }
    g_binary = argv[1];
    doctest::Context ctx;
    ctx.applyCommandLine(argc - 1, argv + 1);
    return ctx.run();
}
