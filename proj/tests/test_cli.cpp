#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args, bool keep_stderr = false) {
    const std::string cmd =
        std::string(SWAPDIST_CLI_PATH) + " " + args + (keep_stderr ? "" : " 2>/dev/null");
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

const std::string kData = std::string(SWAPDIST_DATA_DIR) + "/example_word_orders.csv";

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("help and argument errors") {
    const auto help = run("--help");
    CHECK(help.exit_code == 0);
    CHECK(contains(help.out, "analyze"));
    CHECK(contains(help.out, "power"));
    CHECK(contains(help.out, "spectra"));
    CHECK(contains(help.out, "wilcoxon"));
    CHECK(contains(help.out, "graph"));

    CHECK(run("").exit_code == 2);                          // subcommand required
    CHECK(run("analyze").exit_code == 2);                   // --input required
    CHECK(run("analyze -i missing.csv --bogus 1").exit_code == 2);
    CHECK(run("analyze -i /nonexistent/rows.csv --trials 10").exit_code == 2);
    CHECK(run("analyze -i " + kData + " --null zz --trials 10").exit_code == 2);
    CHECK(run("analyze -i " + kData + " --format yaml").exit_code == 2);
    CHECK(run("power --n 5 --m 2").exit_code == 2);         // outside the desk-scale gate
    CHECK(run("power --n 4 --m 6").exit_code == 2);         // sequence count too large
    CHECK(run("spectra --n 7").exit_code == 2);             // needs --allow-large
    CHECK(run("spectra --n 9 --allow-large").exit_code == 2);
}

TEST_CASE("analyze is reproducible byte for byte") {
    const std::string base = "analyze -i " + kData + " --trials 400 --seed 7";
    const auto a = run(base);
    REQUIRE(a.exit_code == 0);
    CHECK(run(base).out == a.out);
    CHECK(run(base + " --threads 1").out == a.out);
    CHECK(run(base + " --threads 3").out == a.out);
    CHECK(run("analyze -i " + kData + " --trials 400 --seed 8").out != a.out);

    CHECK(contains(a.out, "# trials=400 seed=7"));
    CHECK(contains(a.out, "demo-atlas\tdominant order\t3\tSOV\tlangs"));
    CHECK(contains(a.out, "demo-single"));
    // 4 dataset rows -> comment + header + 4 lines
    int newlines = 0;
    for (char c : a.out)
        if (c == '\n') ++newlines;
    CHECK(newlines == 6);
}

TEST_CASE("analyze options reshape the report") {
    const auto json = run("analyze -i " + kData + " --trials 300 --seed 7 --format json");
    REQUIRE(json.exit_code == 0);
    CHECK(json.out.front() == '{');
    CHECK(contains(json.out, "\"rows\""));
    CHECK(contains(json.out, "\"correction\": \"holm\""));

    const auto none = run("analyze -i " + kData + " --trials 300 --correction none");
    REQUIRE(none.exit_code == 0);
    CHECK(contains(none.out, "correction=none"));

    // restricting the models drops their columns
    const auto dr = run("analyze -i " + kData + " --trials 300 --null dr");
    REQUIRE(dr.exit_code == 0);
    CHECK(contains(dr.out, "models=dr"));
    CHECK(contains(dr.out, "d_dr"));
    CHECK(!contains(dr.out, "d_rp"));
    CHECK(!contains(dr.out, "H_pu"));

    // --no-exact switches the relabeling test to Monte Carlo
    const auto mc = run("analyze -i " + kData + " --trials 300 --null rp --no-exact --format json");
    REQUIRE(mc.exit_code == 0);
    CHECK(contains(mc.out, "\"exact\": false"));
    const auto exact = run("analyze -i " + kData + " --trials 300 --null rp --format json");
    REQUIRE(exact.exit_code == 0);
    CHECK(contains(exact.out, "\"exact\": true"));
}

TEST_CASE("output lands in a file when requested") {
    const auto path =
        (std::filesystem::temp_directory_path() / "swapdist_cli_out.tsv").string();
    const std::string base = "analyze -i " + kData + " --trials 300 --seed 9";
    const auto direct = run(base);
    REQUIRE(direct.exit_code == 0);
    const auto filed = run(base + " -o " + path);
    REQUIRE(filed.exit_code == 0);
    CHECK(filed.out.empty());
    std::ifstream in(path, std::ios::binary);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(content == direct.out);
    std::remove(path.c_str());
    CHECK(run(base + " -o /nonexistent/dir/out.tsv").exit_code == 2);
}

TEST_CASE("power tables and the counterexample") {
    const auto t = run("power --n 3 --m 2");
    REQUIRE(t.exit_code == 0);
    CHECK(contains(t.out, "# n=3 m=2 sequences=5"));
    CHECK(contains(t.out, "1/5\t0.2\t1\t1\t3\t123 321"));

    const auto t4 = run("power --n 4 --m 4 --format json");
    REQUIRE(t4.exit_code == 0);
    CHECK(contains(t4.out, "\"1/5313\""));

    const auto ce = run("power --n 4 --counterexample");
    REQUIRE(ce.exit_code == 0);
    CHECK(contains(ce.out, "1,1,2,2,3,3\t2/5313\t1234 1243 1342 1432"));
    CHECK(contains(ce.out, "1,1,2,2,3,3\t4/5313\t1234 1243 1324 2314"));
}

TEST_CASE("spectra output") {
    const auto s = run("spectra --n 3");
    REQUIRE(s.exit_code == 0);
    CHECK(contains(s.out, "# n=3 shift=1.5 negative_semidefinite=1"));
    CHECK(contains(s.out, "\t2\n"));
    CHECK(contains(s.out, "\t3\n"));
    const auto sj = run("spectra --n 4 --format json");
    REQUIRE(sj.exit_code == 0);
    CHECK(contains(sj.out, "\"negative_semidefinite\": true"));
    CHECK(contains(sj.out, "\"multiplicity\": 18"));
}

TEST_CASE("graph export") {
    const auto bare = run("graph --n 3");
    REQUIRE(bare.exit_code == 0);
    CHECK(contains(bare.out, "graph permutohedron_3 {"));
    CHECK(contains(bare.out, "\"123\""));
    CHECK(contains(bare.out, "\"321\""));

    const auto weighted = run("graph -i " + kData + " --row 0");
    REQUIRE(weighted.exit_code == 0);
    CHECK(contains(weighted.out, "\"SOV\""));
    CHECK(contains(weighted.out, "weight="));

    const auto by_id = run("graph -i " + kData + " --row demo-single/experiments/ABC/frequency");
    REQUIRE(by_id.exit_code == 0);
    CHECK(contains(by_id.out, "\"ABC\""));

    CHECK(run("graph -i " + kData + " --row 99").exit_code == 2);
    CHECK(run("graph -i " + kData + " --row no/such/row/id").exit_code == 2);
}

TEST_CASE("wilcoxon sweep") {
    const std::string base = "wilcoxon -i " + kData + " --score d --null dr";
    const auto r = run(base);
    REQUIRE(r.exit_code == 0);
    CHECK(contains(r.out, "# score=d null=dr"));
    CHECK(contains(r.out, "rows\tn_eff\tV\tp_exact\tp_normal"));
    CHECK(run(base).out == r.out);

    const auto filtered = run(base + " --filter n=3");
    REQUIRE(filtered.exit_code == 0);
    CHECK(filtered.out.substr(0, filtered.out.find('\n')) ==
          "# score=d null=dr filter=n=3");

    CHECK(run(base + " --filter database=missing").exit_code == 2);
    CHECK(run(base + " --filter bogus=1").exit_code == 2);
    CHECK(run("wilcoxon -i " + kData + " --score H --null rp").exit_code == 2);
}

}  // TEST_SUITE
