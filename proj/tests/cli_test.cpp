// End-to-end tests of the command-line tool: golden bytes, exit codes, and
// schema validity of every JSON output.  Run as
//   digs_cli_tests <path-to-digs> <schema-dir>
#define DOCTEST_CONFIG_IMPLEMENT

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string g_bin;
std::string g_schemas;
fs::path g_tmp;

struct CliResult {
    int exit_code = -1;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    std::string cmd = "'" + g_bin + "' " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    CliResult r;
    std::array<char, 4096> buf;
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
    int status = pclose(p);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string write_input(const std::string& name, const std::string& text) {
    fs::path p = g_tmp / name;
    std::ofstream f(p);
    f << text;
    f.close();
    return p.string();
}

json load_schema(const std::string& name) {
    std::ifstream f(fs::path(g_schemas) / name);
    REQUIRE(f.good());
    return json::parse(f);
}

bool type_matches(const json& inst, const std::string& t) {
    if (t == "integer") return inst.is_number_integer() || inst.is_number_unsigned();
    if (t == "number") return inst.is_number();
    if (t == "string") return inst.is_string();
    if (t == "boolean") return inst.is_boolean();
    if (t == "array") return inst.is_array();
    if (t == "object") return inst.is_object();
    if (t == "null") return inst.is_null();
    return false;
}

bool int_string(const std::string& s) {
    size_t k = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (k >= s.size()) return false;
    for (; k < s.size(); ++k)
        if (s[k] < '0' || s[k] > '9') return false;
    return true;
}

// Just enough of JSON Schema for the published files: $ref, type, required,
// properties, items, enum, pattern (only the integer-string one), bounds.
bool validate(const json& inst, const json& schema, const json& root, std::string* why) {
    if (schema.contains("$ref")) {
        std::string ref = schema["$ref"];
        if (ref.rfind("#/", 0) == 0) {
            json target = root.at(json::json_pointer(ref.substr(1)));
            return validate(inst, target, root, why);
        }
        json other = load_schema(ref);
        return validate(inst, other, other, why);
    }
    if (schema.contains("type")) {
        const json& t = schema["type"];
        bool ok = false;
        if (t.is_string()) {
            ok = type_matches(inst, t.get<std::string>());
        } else {
            for (const auto& alt : t) ok = ok || type_matches(inst, alt.get<std::string>());
        }
        if (!ok) {
            *why = "type mismatch at " + inst.dump();
            return false;
        }
    }
    if (schema.contains("enum")) {
        bool ok = false;
        for (const auto& v : schema["enum"]) ok = ok || v == inst;
        if (!ok) {
            *why = "enum mismatch at " + inst.dump();
            return false;
        }
    }
    if (schema.contains("pattern") && inst.is_string()) {
        if (!int_string(inst.get<std::string>())) {
            *why = "pattern mismatch at " + inst.dump();
            return false;
        }
    }
    if (inst.is_number()) {
        double v = inst.get<double>();
        if (schema.contains("minimum") && v < schema["minimum"].get<double>()) {
            *why = "below minimum: " + inst.dump();
            return false;
        }
        if (schema.contains("maximum") && v > schema["maximum"].get<double>()) {
            *why = "above maximum: " + inst.dump();
            return false;
        }
    }
    if (inst.is_object()) {
        if (schema.contains("required")) {
            for (const auto& k : schema["required"])
                if (!inst.contains(k.get<std::string>())) {
                    *why = "missing required key " + k.get<std::string>();
                    return false;
                }
        }
        if (schema.contains("properties")) {
            for (const auto& [k, sub] : schema["properties"].items())
                if (inst.contains(k) && !validate(inst.at(k), sub, root, why)) {
                    *why = "in property " + k + ": " + *why;
                    return false;
                }
        }
    }
    if (inst.is_array()) {
        if (schema.contains("minItems") && inst.size() < schema["minItems"].get<size_t>()) {
            *why = "too few items";
            return false;
        }
        if (schema.contains("maxItems") && inst.size() > schema["maxItems"].get<size_t>()) {
            *why = "too many items";
            return false;
        }
        if (schema.contains("items")) {
            for (const auto& el : inst)
                if (!validate(el, schema["items"], root, why)) {
                    *why = "in array item: " + *why;
                    return false;
                }
        }
    }
    return true;
}

void check_against_schema(const std::string& text, const std::string& schema_name) {
    json inst = json::parse(text);
    json schema = load_schema(schema_name);
    std::string why;
    bool ok = validate(inst, schema, schema, &why);
    CHECK_MESSAGE(ok, schema_name, ": ", why);
}

const char* kSingleEdge = "0 1\n1 0\n";          // v0 receives, v1 sends
const char* kOnes3 = "1 1\n1 1\n1 1\n";
const char* kOnes4 = "1 1\n1 1\n1 1\n1 1\n";
const char* kMixed5 = "1 2\n2 1\n1 1\n1 1\n1 1\n";  // "out in" lines

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("sample: golden bytes for the unique-graph instance") {
    std::string in = write_input("single.txt", kSingleEdge);
    CliResult r = run_cli("sample --in '" + in + "' --seed 7");
    CHECK(r.exit_code == 0);
    CHECK(r.out ==
          "# seed=7\n"
          "# run=0 retries=1 log_prob=0 log_N=0 N=1\n"
          "1 0\n");
}

TEST_CASE("sample: identical invocations give identical bytes") {
    std::string in = write_input("mixed.txt", kMixed5);
    std::string cmd = "sample --in '" + in + "' --seed 99 --samples 5 --canonical";
    CliResult a = run_cli(cmd);
    CliResult b = run_cli(cmd);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("# run=4 ") != std::string::npos);

    CliResult j1 = run_cli(cmd + " --format json --jobs 1");
    CliResult j4 = run_cli(cmd + " --format json --jobs 4");
    CHECK(j1.exit_code == 0);
    CHECK(j1.out == j4.out);
    check_against_schema(j1.out, "sample.schema.json");
}

TEST_CASE("sample: degree file with an id column maps ids back") {
    std::string in = write_input("ids.txt", "# id out in\n10 0 1\n20 1 0\n");
    CliResult r = run_cli("sample --in '" + in + "' --seed 7");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("20 10\n") != std::string::npos);
}

TEST_CASE("check: reports and exit codes") {
    std::string good = write_input("good.txt", kOnes3);
    CliResult r = run_cli("check --in '" + good + "'");
    CHECK(r.exit_code == 0);
    check_against_schema(r.out, "check.schema.json");
    json v = json::parse(r.out);
    CHECK(v["digraphical"] == true);
    CHECK(v["n"] == 3);
    CHECK(v["m"] == 3);

    std::string bad = write_input("bad.txt", "2 0\n0 2\n");
    CliResult rb = run_cli("check --in '" + bad + "'");
    CHECK(rb.exit_code == 2);
    json vb = json::parse(rb.out);
    CHECK(vb["digraphical"] == false);
}

TEST_CASE("malformed inputs exit 1") {
    std::string ragged = write_input("ragged.txt", "1 0\n1 2 3 4\n");
    CHECK(run_cli("check --in '" + ragged + "'").exit_code == 1);
    std::string mismatch = write_input("mismatch.txt", "2 0\n0 1\n");
    CHECK(run_cli("check --in '" + mismatch + "'").exit_code == 1);
    CHECK(run_cli("sample --in '/nonexistent/degrees.txt'").exit_code == 1);
    CHECK(run_cli("sample --no-such-flag").exit_code == 1);
}

TEST_CASE("sample: not digraphical exits 2, oversized degrees exit 4 unless forced") {
    std::string bad = write_input("bad2.txt", "2 0\n0 2\n");
    CHECK(run_cli("sample --in '" + bad + "'").exit_code == 2);

    std::string heavy = write_input("heavy.txt", "5 1\n1 5\n1 1\n1 1\n1 1\n1 1\n1 1\n");
    CHECK(run_cli("sample --in '" + heavy + "'").exit_code == 4);
    // Only one realization avoids the clamped pair, so attempts succeed at
    // ~0.7%; give the retry loop room.
    CliResult forced = run_cli("sample --in '" + heavy +
                               "' --seed 3 --force --max-retries 5000 --format json");
    CHECK(forced.exit_code == 0);
    check_against_schema(forced.out, "sample.schema.json");
    json v = json::parse(forced.out);
    CHECK(v["runs"][0]["bias_warning"] == true);
}

TEST_CASE("sample: retries exhausted exits 3") {
    std::string in = write_input("ones3.txt", kOnes3);
    bool saw_exit3 = false;
    for (int seed = 0; seed < 40 && !saw_exit3; ++seed) {
        CliResult r = run_cli("sample --in '" + in + "' --max-retries 1 --seed " +
                              std::to_string(seed));
        CHECK((r.exit_code == 0 || r.exit_code == 3));
        saw_exit3 = r.exit_code == 3;
    }
    CHECK(saw_exit3);  // P(all 40 seeds succeed) = (2/3)^40 ~ 1e-7
}

TEST_CASE("count: estimate, exact, and asymptotic agree on a small instance") {
    std::string in = write_input("ones3c.txt", kOnes3);
    CliResult r = run_cli("count --in '" + in + "' --seed 12 --samples 2000");
    CHECK(r.exit_code == 0);
    check_against_schema(r.out, "count.schema.json");
    json v = json::parse(r.out);
    CHECK(v["exact"] == 2);
    CHECK(std::fabs(v["estimate"]["mean_N"].get<double>() - 2.0) < 0.2);
    CHECK(v["asymptotic"]["count"].get<double>() ==
          doctest::Approx(6.0 * std::exp(-0.75)).epsilon(1e-6));

    CliResult j1 = run_cli("count --in '" + in + "' --seed 12 --samples 2000 --jobs 1");
    CliResult j4 = run_cli("count --in '" + in + "' --seed 12 --samples 2000 --jobs 4");
    CHECK(j1.out == j4.out);
}

TEST_CASE("verify: passes on uniform instances, flags budget limits") {
    std::string single = write_input("singlev.txt", kSingleEdge);
    CliResult r = run_cli("verify --in '" + single + "' --seed 5 --samples 300");
    CHECK(r.exit_code == 0);
    check_against_schema(r.out, "verify.schema.json");
    json v = json::parse(r.out);
    CHECK(v["pass"] == true);
    CHECK(v["uniformity"]["tv_distance"].get<double>() == 0.0);

    std::string ones4 = write_input("ones4v.txt", kOnes4);
    CliResult r4 = run_cli("verify --in '" + ones4 + "' --seed 5 --samples 6000 --jobs 4");
    CHECK(r4.exit_code == 0);
    check_against_schema(r4.out, "verify.schema.json");

    CliResult rb = run_cli("verify --in '" + ones4 + "' --max-vertices 3");
    CHECK(rb.exit_code == 5);
}

TEST_CASE("bench: table schema") {
    CliResult r = run_cli("bench --sizes 32,64 --reps 2 --seed 2 --reference-max-n 32");
    CHECK(r.exit_code == 0);
    check_against_schema(r.out, "bench.schema.json");
    json v = json::parse(r.out);
    CHECK(v["table"]["points"].size() == 2);
    CHECK(v["table"]["points"][0]["seconds_reference"].get<double>() > 0.0);
}

TEST_CASE("psi-diag: per-step records with the frozen initial state") {
    std::string in = write_input("ones3p.txt", kOnes3);
    CliResult r = run_cli("psi-diag --in '" + in + "' --seed 4");
    CHECK(r.exit_code == 0);
    check_against_schema(r.out, "psi_diag.schema.json");
    json v = json::parse(r.out);
    const json& first = v["steps"][0];
    CHECK(first["r"] == 0);
    CHECK(first["scaled_psi"] == "42");
    CHECK(first["scaled_denominator"] == "60");
    if (v["outcome"] == "success") {
        CHECK(v["steps"].size() == 4);
        CHECK(v["steps"][3]["scaled_denominator"] == "0");
    } else {
        CHECK(v["failure_step"] == 2);
    }
}

}  // TEST_SUITE

int main(int argc, char** argv) {
    doctest::Context ctx;
    ctx.applyCommandLine(argc, argv);
    // Positional arguments (doctest leaves them alone): binary, schema dir.
    std::vector<std::string> pos;
    for (int k = 1; k < argc; ++k)
        if (argv[k][0] != '-') pos.push_back(argv[k]);
    if (pos.size() < 2) {
        std::fprintf(stderr, "usage: digs_cli_tests <digs-binary> <schema-dir>\n");
        return 2;
    }
    g_bin = pos[0];
    g_schemas = pos[1];
    g_tmp = fs::temp_directory_path() / ("digs_cli_test_" + std::to_string(getpid()));
    fs::create_directories(g_tmp);
    int rc = ctx.run();
    fs::remove_all(g_tmp);
    return rc;
}
