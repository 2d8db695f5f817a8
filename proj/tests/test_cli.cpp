#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>
#include <string>

#include <json.hpp>

using json = nlohmann::json;

namespace {

struct CommandResult {
    int exit_code;
    std::string stdout_text;
};

CommandResult run_cli(const std::string& args) {
    std::string cmd = std::string(SHAPECORR_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buffer{};
    std::string output;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::size_t got;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) output.append(buffer.data(), got);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), output};
}

std::string write_temp_csv(const std::string& name, const std::string& content) {
    std::string path = std::string("/tmp/shapecorr_test_") + name + ".csv";
    std::ofstream out(path);
    out << content;
    return path;
}

std::string monotone_csv(int n = 10) {
    std::string text = "x,y\n";
    for (int i = 1; i <= n; ++i)
        text += std::to_string(i) + "," + std::to_string(i * i) + "\n";
    return write_temp_csv("monotone" + std::to_string(n), text);
}

}  // namespace

TEST_CASE("corr on a monotone toy file gives the forced values") {
    std::string path = monotone_csv();
    CommandResult r = run_cli("corr --input " + path + " --x x --y y --seed 1");
    REQUIRE(r.exit_code == 0);
    json out = json::parse(r.stdout_text);
    int n = out["n"].get<int>();
    CHECK(n == 10);
    CHECK(out["chatterjee"].get<double>() == doctest::Approx(1.0 - 3.0 / (n + 1)));
    CHECK(out["cmon"].get<double>() == 1.0);
    CHECK(out["spearman"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("corr emits the combined field under --lambda") {
    std::string path = monotone_csv();
    CommandResult r = run_cli("corr --input " + path + " --lambda 0.5 --seed 3");
    REQUIRE(r.exit_code == 0);
    json out = json::parse(r.stdout_text);
    REQUIRE(out.contains("combined"));
    CHECK(out["combined"]["lambda"].get<double>() == 0.5);
    double expected = 0.5 * out["chatterjee"].get<double>() +
                      0.5 * std::sqrt(out["cmon"].get<double>());
    CHECK(out["combined"]["value"].get<double>() == doctest::Approx(expected).epsilon(1e-15));
}

TEST_CASE("corr --statistic restricts the emitted fields") {
    std::string path = monotone_csv();
    CommandResult r = run_cli("corr --input " + path + " --statistic cn --seed 1");
    REQUIRE(r.exit_code == 0);
    json out = json::parse(r.stdout_text);
    CHECK(out.contains("chatterjee"));
    CHECK_FALSE(out.contains("cmon"));
    CHECK_FALSE(out.contains("spearman"));
    CHECK_FALSE(out.contains("combined"));
}

TEST_CASE("json round-trip: derived fields recompute exactly") {
    std::string path = write_temp_csv("roundtrip", "x,y\n0.3,1.2\n0.9,0.4\n0.5,2.2\n0.1,0.7\n0.8,1.0\n");
    CommandResult r = run_cli("corr --input " + path + " --seed 9");
    REQUIRE(r.exit_code == 0);
    json out = json::parse(r.stdout_text);
    double cmon = out["cmon"].get<double>();
    double cmon_sqrt = out["cmon_sqrt"].get<double>();
    CHECK(cmon_sqrt == std::sqrt(cmon));  // bit-exact after the round trip
}

TEST_CASE("same seed twice gives byte-identical output") {
    std::string path = write_temp_csv("ties", "x,y\n1,4\n1,2\n1,6\n2,5\n2,1\n3,3\n");
    CommandResult a = run_cli("corr --input " + path + " --seed 42 --stream 7");
    CommandResult b = run_cli("corr --input " + path + " --seed 42 --stream 7");
    CHECK(a.exit_code == 0);
    CHECK(a.stdout_text == b.stdout_text);
}

TEST_CASE("exit codes: usage=1, data=2, verification uses 3") {
    CHECK(run_cli("corr --no-such-flag").exit_code == 1);
    CHECK(run_cli("frobnicate").exit_code == 1);
    CHECK(run_cli("corr --input /nonexistent.csv").exit_code == 2);
    std::string blank = write_temp_csv("blank", "x,y\n1,2\n3,\n5,6\n");
    CHECK(run_cli("corr --input " + blank).exit_code == 2);
}

TEST_CASE("test command: ties demand the permutation method") {
    std::string tied = write_temp_csv("tied", "x,y\n1,4\n1,2\n2,5\n3,3\n2,9\n4,1\n");
    CommandResult asym = run_cli("test --input " + tied + " --statistic cn");
    CHECK(asym.exit_code == 2);
    CommandResult perm =
        run_cli("test --input " + tied + " --statistic cn --method permutation --reps 199 --seed 5");
    REQUIRE(perm.exit_code == 0);
    json out = json::parse(perm.stdout_text);
    CHECK(out["results"][0]["law"].get<std::string>() == "permutation");
    double p = out["results"][0]["p_value"].get<double>();
    CHECK(p > 0.0);
    CHECK(p <= 1.0);
}

TEST_CASE("test command: monotone data rejects under the mixture law") {
    // n*cmon = n must clear the mixture's upper tail, which sits near
    // E chi2(N_n) = H_n; n = 30 leaves no mass anywhere close.
    std::string path = monotone_csv(30);
    CommandResult r =
        run_cli("test --input " + path + " --statistic cmon --method mixture --reps 2000 --seed 11");
    REQUIRE(r.exit_code == 0);
    json out = json::parse(r.stdout_text);
    CHECK(out["results"][0]["law"].get<std::string>() == "chisq-cycle-mixture");
    CHECK(out["results"][0]["p_value"].get<double>() < 0.01);
}

TEST_CASE("test command: asymptotic laws on continuous data") {
    std::string path = write_temp_csv(
        "cont", "x,y\n0.11,0.52\n0.23,0.17\n0.37,0.95\n0.41,0.33\n0.59,0.78\n0.62,0.06\n"
                "0.71,0.44\n0.83,0.61\n0.97,0.29\n0.05,0.88\n");
    CommandResult r = run_cli("test --input " + path +
                              " --statistic cn --statistic spearman --statistic combined --seed 2");
    REQUIRE(r.exit_code == 0);
    json out = json::parse(r.stdout_text);
    REQUIRE(out["results"].size() == 3);
    for (const auto& entry : out["results"]) {
        CHECK(entry["law"].get<std::string>() == "normal");
        CHECK(entry["p_value"].get<double>() >= 0.0);
        CHECK(entry["p_value"].get<double>() <= 1.0);
    }
}

TEST_CASE("simulate emits the header, rows, and a summary file") {
    CommandResult r = run_cli(
        "simulate --n 50 --reps 120 --seed 6 --summary-file /tmp/shapecorr_test_summary.json");
    REQUIRE(r.exit_code == 0);
    // Header plus one line per replicate.
    std::size_t lines = 0;
    for (char c : r.stdout_text)
        if (c == '\n') ++lines;
    CHECK(lines == 121);
    CHECK(r.stdout_text.rfind("sqrt_n_cn,n_cmon,sqrt_n_cs,combined\n", 0) == 0);
    std::ifstream summary_in("/tmp/shapecorr_test_summary.json");
    REQUIRE(summary_in.good());
    json summary = json::parse(summary_in);
    CHECK(summary["n"].get<int>() == 50);
    CHECK(summary["reps"].get<int>() == 120);
    CHECK(summary["sqrt_n_cn"].contains("variance"));

    CHECK(run_cli("simulate --n 5 --reps 120").exit_code == 1);
    CHECK(run_cli("simulate --n 50 --reps 9").exit_code == 1);
}

TEST_CASE("power command reports the score self-test and cancellation rows") {
    CommandResult r = run_cli(
        "power --family gauss-trend --statistic score --n 60 --reps 1200 --seed 8 --format csv");
    REQUIRE(r.exit_code == 0);
    CHECK(r.stdout_text.find("efficiency-rho-sq,score,gauss-trend,60,1200,1,0") != std::string::npos);
    CHECK(r.stdout_text.find("cancellation,") != std::string::npos);
    CHECK(run_cli("power --family unknown-family").exit_code == 2);

    // The cancellation estimate itself is statistically zero; pull the
    // row out of the CSV and test the gate end to end.
    std::istringstream rows(r.stdout_text);
    std::string line;
    bool checked = false;
    while (std::getline(rows, line)) {
        if (line.rfind("cancellation,", 0) != 0) continue;
        std::vector<std::string> fields;
        std::istringstream fields_in(line);
        std::string field;
        while (std::getline(fields_in, field, ',')) fields.push_back(field);
        REQUIRE(fields.size() == 9);
        double estimate = std::stod(fields[5]);
        double se = std::stod(fields[6]);
        CHECK(std::abs(estimate) < 3 * se);
        checked = true;
        break;
    }
    CHECK(checked);
}

TEST_CASE("simulate summary matches the emitted rows") {
    CommandResult r = run_cli(
        "simulate --n 200 --reps 300 --seed 12 --summary-file /tmp/shapecorr_test_sum2.json");
    REQUIRE(r.exit_code == 0);
    std::istringstream rows(r.stdout_text);
    std::string line;
    std::getline(rows, line);  // header
    std::vector<double> col1;
    while (std::getline(rows, line)) {
        std::size_t comma = line.find(',');
        REQUIRE(comma != std::string::npos);
        col1.push_back(std::stod(line.substr(0, comma)));
    }
    REQUIRE(col1.size() == 300);
    double mean = 0;
    for (double v : col1) mean += v;
    mean /= static_cast<double>(col1.size());
    double var = 0;
    for (double v : col1) var += (v - mean) * (v - mean);
    var /= static_cast<double>(col1.size());
    std::ifstream summary_in("/tmp/shapecorr_test_sum2.json");
    json summary = json::parse(summary_in);
    CHECK(summary["sqrt_n_cn"]["mean"].get<double>() == doctest::Approx(mean).epsilon(1e-12));
    CHECK(summary["sqrt_n_cn"]["variance"].get<double>() == doctest::Approx(var).epsilon(1e-12));
}

TEST_CASE("verify passes and honors --max-n") {
    CommandResult r = run_cli("verify --max-n 5 --seed 1");
    CHECK(r.exit_code == 0);
    json out = json::parse(r.stdout_text);
    bool saw_bijection = false;
    for (const auto& entry : out) {
        CHECK(entry["pass"].get<bool>());
        if (entry["name"].get<std::string>() == "bijection-n5") saw_bijection = true;
    }
    CHECK(saw_bijection);
    bool has_n6 = r.stdout_text.find("bijection-n6") != std::string::npos;
    CHECK_FALSE(has_n6);
}
