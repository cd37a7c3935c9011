#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <json.hpp>

#include "r31/config.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Sandbox {
    fs::path dir;
    Sandbox() {
        dir = fs::temp_directory_path() / ("r31_cli_" + std::to_string(::getpid()));
        fs::create_directories(dir);
    }
    ~Sandbox() { fs::remove_all(dir); }

    fs::path write(const std::string& name, const std::string& text) const {
        std::ofstream(dir / name) << text;
        return dir / name;
    }

    // Runs the CLI with stdout captured; returns the exit status.
    int run(const std::string& args, std::string* out = nullptr) const {
        const fs::path log = dir / "stdout.txt";
        const std::string cmd = std::string(R31_CLI_PATH) + " " + args + " > " + log.string() + " 2> " +
                                (dir / "stderr.txt").string();
        const int st = std::system(cmd.c_str());
        if (out) {
            std::ifstream in(log);
            std::stringstream ss;
            ss << in.rdbuf();
            *out = ss.str();
        }
        return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    }
};

json read_json(const fs::path& p) {
    std::ifstream in(p);
    return json::parse(in);
}

}  // namespace

TEST_CASE("cli: decompose") {
    Sandbox sb;
    const auto cfg = sb.write("id.json", R"({"system":{"type":"generic","M":[[1,0],[0,1]],"K":[1,4]}})");
    std::string out;
    REQUIRE(sb.run("decompose --config " + cfg.string() + " --out " + sb.dir.string(), &out) == 0);
    const json doc = json::parse(out);
    CHECK(doc["command"] == "decompose");
    CHECK(doc["result"]["modal"]["omega_minus"].get<double>() == doctest::Approx(1));
    CHECK(doc["result"]["modal"]["omega_plus"].get<double>() == doctest::Approx(2));
    CHECK(fs::exists(sb.dir / "decompose.json"));

    const auto hx = sb.write("x.json", R"({"system":{"type":"honeycomb","Mtilde":0.146,"Ktilde":5.73,"point":"X"}})");
    REQUIRE(sb.run("decompose --config " + hx.string(), &out) == 0);
    CHECK(json::parse(out)["result"]["modal"].contains("sigma"));
}

TEST_CASE("cli: configuration errors exit with 2") {
    Sandbox sb;
    const auto bad = sb.write("bad.json", R"({"system":{"type":"honeycomb","Mtilde":"x"}})");
    CHECK(sb.run("decompose --config " + bad.string()) == 2);
    const auto unknown = sb.write("unk.json", R"({"system":{"type":"generic","M":[[1,0],[0,1]],"K":[1,4]},"bogus":1})");
    CHECK(sb.run("decompose --config " + unknown.string()) == 2);
    const auto neg = sb.write("neg.json", R"({"effective":{"a1":1,"a2":2},"thresholds":{"C1":-1}})");
    CHECK(sb.run("classify --config " + neg.string()) == 2);
    const auto broken = sb.write("broken.json", "{not json");
    CHECK(sb.run("decompose --config " + broken.string()) == 2);
    CHECK(sb.run("decompose --config " + (sb.dir / "missing.json").string()) == 2);
    CHECK(sb.run("decompose") == 2);
    CHECK(sb.run("nosuchcommand --config x") == 2);
}

TEST_CASE("cli: rejections exit with 1") {
    Sandbox sb;
    // wave numbers outside the irreducible triangle
    const auto cfg = sb.write("r.json", R"({"system":{"type":"honeycomb","k1":5}})");
    CHECK(sb.run("decompose --config " + cfg.string()) == 1);
}

TEST_CASE("cli: portrait") {
    Sandbox sb;
    const auto cfg = sb.write("p.json", R"({"effective":{"a1":1,"a2":-3},"energies":[-0.3,0.1,-0.15]})");
    std::string out;
    REQUIRE(sb.run("portrait --config " + cfg.string() + " --out " + sb.dir.string(), &out) == 0);
    const json doc = json::parse(out);
    const json& s = doc["result"];
    CHECK(s["zone"] == "Z12minus");
    CHECK(s["regions"].size() == 4);
    int csv = 0;
    for (const auto& e : fs::directory_iterator(sb.dir))
        if (e.path().filename().string().rfind("portrait_E", 0) == 0) {
            ++csv;
            std::ifstream in(e.path());
            std::string header;
            std::getline(in, header);
            CHECK(header.rfind("psi,x", 0) == 0);
        }
    CHECK(csv == 4);  // -0.15 lies in both III and IV

    const auto deg = sb.write("d.json", R"({"effective":{"a1":0,"a2":1}})");
    REQUIRE(sb.run("portrait --config " + deg.string(), &out) == 0);
    CHECK(json::parse(out)["result"]["zone"] == "OnG");
}

TEST_CASE("cli: frequencies") {
    Sandbox sb;
    std::string out;
    const auto zero = sb.write(
        "z.json", R"({"system":{"type":"generic","M":[[1,0],[0,1]],"K":[1,4],"N3":-1},"amplitudes":{"a_minus":0,"a_plus":0}})");
    REQUIRE(sb.run("freqs --config " + zero.string(), &out) == 0);
    const json f = json::parse(out)["result"]["frequencies"];
    CHECK(f["w_minus"].get<double>() == 1.0);
    CHECK(f["w_plus"].get<double>() == 2.0);

    const auto res = sb.write(
        "r.json", R"({"system":{"type":"generic","M":[[1,0],[0,1]],"K":[1,9],"N3":-1},"amplitudes":{"a_minus":0.01,"a_plus":0.01}})");
    REQUIRE(sb.run("freqs --config " + res.string(), &out) == 0);
    CHECK(json::parse(out)["result"]["frequencies"]["regime"] == "resonant_exact");
}

TEST_CASE("cli: emitted documents round-trip and runs are deterministic") {
    Sandbox sb;
    const auto cfg = sb.write(
        "c.json", R"({"system":{"type":"honeycomb","Mtilde":0.2,"Ktilde":1.1,"k1":2.6},"amplitudes":{"a_minus":0.002,"a_plus":0.001},"thresholds":{"epsilon":0.002}})");
    std::string a, b, c;
    REQUIRE(sb.run("freqs --config " + cfg.string() + " --out " + sb.dir.string(), &a) == 0);
    REQUIRE(sb.run("freqs --config " + cfg.string() + " --out " + sb.dir.string(), &b) == 0);
    CHECK(a == b);
    // feed the emitted document back in as the config
    const fs::path emitted = sb.dir / "freqs.json";
    REQUIRE(fs::exists(emitted));
    const json first = read_json(emitted);
    CHECK(first["version"].is_string());
    REQUIRE(sb.run("freqs --config " + emitted.string() + " --out " + sb.dir.string(), &c) == 0);
    const json second = json::parse(c);
    CHECK(second["config"] == first["config"]);
    CHECK(second["result"] == first["result"]);
    // and the library parser reproduces the same config object
    CHECK(r31::parse_config(first["config"]).to_json() == first["config"]);
}

TEST_CASE("cli: csv output") {
    Sandbox sb;
    const auto cfg = sb.write("id.json", R"({"system":{"type":"generic","M":[[1,0],[0,1]],"K":[1,4]}})");
    REQUIRE(sb.run("decompose --format csv --config " + cfg.string() + " --out " + sb.dir.string()) == 0);
    CHECK(fs::exists(sb.dir / "decompose.csv"));
}
