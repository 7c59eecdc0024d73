#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <nlohmann/json.hpp>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

const fs::path kWork = fs::temp_directory_path() / "ecoepi_cli_test";

int run(const std::string& args) {
    const std::string cmd = std::string(ECOEPI_CLI) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string fixture(const std::string& name) { return std::string(ECOEPI_FIXTURES) + "/" + name; }

fs::path write_config(const std::string& name, const std::string& base, const std::string& extra) {
    const auto path = kWork / name;
    std::ofstream(path) << slurp(fixture(base)) << extra;
    return path;
}

std::vector<double> last_row(const std::string& csv) {
    auto end = csv.find_last_not_of('\n');
    auto start = csv.rfind('\n', end);
    std::stringstream row(csv.substr(start + 1, end - start));
    std::vector<double> out;
    std::string cell;
    while (std::getline(row, cell, ',')) out.push_back(std::stod(cell));
    return out;
}

const nlohmann::json* find_eq(const nlohmann::json& rep, const std::string& label) {
    for (const auto& e : rep["equilibria"])
        if (e["label"] == label && e["status"] == "exists") return &e;
    return nullptr;
}

struct Workdir {
    Workdir() {
        fs::remove_all(kWork);
        fs::create_directories(kWork);
    }
    ~Workdir() { fs::remove_all(kWork); }
};

}  // namespace

TEST_CASE("analyze reports for the fixtures") {
    Workdir w;
    REQUIRE(run("analyze --config " + fixture("case_i.cfg") + " --out " + (kWork / "a.json").string()) == 0);
    const auto a = nlohmann::json::parse(slurp(kWork / "a.json"));
    CHECK(std::abs(a["r0"]["value"].get<double>() - 5.822817) < 1e-4);
    REQUIRE(find_eq(a, "E4"));
    CHECK((*find_eq(a, "E4"))["stability"]["verdict"] == "stable");
    CHECK_FALSE(find_eq(a, "E5"));
    CHECK(a["timestamp"].is_null());
    for (const auto& e : a["equilibria"])
        if (e["status"] == "exists") CHECK(e["residual"].get<double>() < 1e-6);

    REQUIRE(run("analyze --config " + fixture("case_ii.cfg") + " --out " + (kWork / "b.json").string()) == 0);
    const auto b = nlohmann::json::parse(slurp(kWork / "b.json"));
    CHECK(std::abs(b["r0"]["value"].get<double>() - 1.95876) < 1e-4);
    CHECK_FALSE(find_eq(b, "E2"));
    REQUIRE(find_eq(b, "E4"));
    CHECK((*find_eq(b, "E4"))["stability"]["verdict"] == "stable");

    REQUIRE(run("analyze --config " + fixture("eq31.cfg") + " --out " + (kWork / "c.json").string()) == 0);
    const auto c = nlohmann::json::parse(slurp(kWork / "c.json"));
    CHECK(c["model"] == "disease_free");
    const auto* e2 = find_eq(c, "E^2");
    REQUIRE(e2);
    CHECK((*e2)["stability"]["verdict"] == "stable");
    const auto coeffs = (*e2)["stability"]["char_coeffs"].get<std::vector<double>>();
    REQUIRE(coeffs.size() == 4);
    CHECK(std::abs(coeffs[2] - 2.98129) < 1e-4);
    CHECK(std::abs(coeffs[1] - 0.806172) < 1e-4);
    CHECK(std::abs(coeffs[0] - 0.079073) < 1e-4);

    REQUIRE(run("analyze --config " + fixture("case_i.cfg") + " --timestamp 2024-01-01T00:00:00Z --out " +
                (kWork / "t.json").string()) == 0);
    CHECK(nlohmann::json::parse(slurp(kWork / "t.json"))["timestamp"] == "2024-01-01T00:00:00Z");
}

TEST_CASE("repeated runs are byte-identical") {
    Workdir w;
    for (const std::string name : {"case_i.cfg", "case_ii.cfg", "eq31.cfg"}) {
        for (const std::string cmd : {"analyze", "simulate"}) {
            const auto a = kWork / (cmd + "_1");
            const auto b = kWork / (cmd + "_2");
            REQUIRE(run(cmd + " --config " + fixture(name) + " --out " + a.string()) == 0);
            REQUIRE(run(cmd + " --config " + fixture(name) + " --out " + b.string()) == 0);
            CHECK(slurp(a) == slurp(b));
            CHECK_FALSE(slurp(a).empty());
        }
    }
}

TEST_CASE("simulate output") {
    Workdir w;
    REQUIRE(run("simulate --config " + fixture("case_i.cfg") + " --out " + (kWork / "s.csv").string()) == 0);
    const auto csv = slurp(kWork / "s.csv");
    CHECK(csv.rfind("t,S,I,V,P\n", 0) == 0);
    const auto row = last_row(csv);
    REQUIRE(row.size() == 5);
    CHECK(std::abs(row[1] - 0.345473) < 1e-3);
    CHECK(std::abs(row[2] - 0.359982) < 1e-3);
    CHECK(std::abs(row[3] - 0.302164) < 1e-3);
    CHECK(std::abs(row[4]) < 1e-3);

    REQUIRE(run("simulate --config " + fixture("eq31.cfg") + " --out " + (kWork / "r.csv").string()) == 0);
    CHECK(slurp(kWork / "r.csv").rfind("t,S,V,P\n0,1,1,1\n", 0) == 0);

    const auto zero = write_config("zero.cfg", "case_i.cfg", "");
    {
        auto text = slurp(zero);
        text.replace(text.find("t_end = 500"), 11, "t_end = 0");
        std::ofstream(zero) << text;
    }
    REQUIRE(run("simulate --config " + zero.string() + " --out " + (kWork / "z.csv").string()) == 0);
    CHECK(slurp(kWork / "z.csv") == "t,S,I,V,P\n0,0.5,0.5,0.5,0.5\n");
}

TEST_CASE("sweep and r0 subcommands") {
    Workdir w;
    const auto out = kWork / "sw.csv";
    REQUIRE(run("sweep --config " + fixture("case_i.cfg") + " --param phi --from 0 --to 1.2 --steps 3 --out " +
                out.string()) == 0);
    const auto csv = slurp(out);
    CHECK(csv.rfind("phi,r0,", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);

    CHECK(run("r0 --config " + fixture("case_i.cfg")) == 0);
}

TEST_CASE("exit codes") {
    Workdir w;
    // usage and config errors
    CHECK(run("") == 2);
    CHECK(run("analyze --config " + fixture("case_i.cfg")) == 2);
    const auto bad = write_config("bad.cfg", "case_i.cfg", "gamma = 1\n");
    CHECK(run("analyze --config " + bad.string() + " --out " + (kWork / "x.json").string()) == 2);
    CHECK_FALSE(fs::exists(kWork / "x.json"));
    const auto q = write_config("q.cfg", "case_i.cfg", "");
    {
        auto text = slurp(q);
        text.replace(text.find("q1 = 0.75"), 9, "q1 = 1.5");
        std::ofstream(q) << text;
    }
    CHECK(run("r0 --config " + q.string()) == 2);
    CHECK(run("r0 --allow-q-ge-one --config " + q.string()) == 0);
    CHECK(run("sweep --config " + fixture("case_i.cfg") + " --param gamma --from 0 --to 1 --steps 3 --out " +
              (kWork / "y.csv").string()) == 2);
    CHECK(run("sweep --config " + fixture("case_i.cfg") + " --param phi --from 0 --to 1 --steps 1 --out " +
              (kWork / "y.csv").string()) == 2);

    // I/O errors
    CHECK(run("analyze --config " + (kWork / "missing.cfg").string() + " --out " + (kWork / "x.json").string()) ==
          4);
    CHECK(run("analyze --config " + fixture("case_i.cfg") + " --out " + (kWork / "no/such/dir/x.json").string()) ==
          4);

    // numerical failures
    const auto extinct = write_config("extinct.cfg", "case_i.cfg", "");
    {
        auto text = slurp(extinct);
        text.replace(text.find("r = 1.1"), 7, "r = 0.1");
        std::ofstream(extinct) << text;
    }
    CHECK(run("r0 --config " + extinct.string()) == 3);

    const auto tight = write_config("tight.cfg", "case_i.cfg", "");
    {
        auto text = slurp(tight);
        text.replace(text.find("rtol = 1e-8"), 11, "rtol = 1e-300");
        text.replace(text.find("atol = 1e-10"), 12, "atol = 1e-300");
        std::ofstream(tight) << text;
    }
    CHECK(run("simulate --config " + tight.string() + " --out " + (kWork / "f.csv").string()) == 3);
    CHECK_FALSE(fs::exists(kWork / "f.csv"));
}
