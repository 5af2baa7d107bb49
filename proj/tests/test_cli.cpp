#include "support.hpp"

#include "okb/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace okb;
using namespace okb::test;

namespace {

const char* const kShipped[] = {"p2",      "f0",       "f1",   "f2",      "bl2p2_flagH", "bl2p2_flagA", "bad_signature",
                                "boxfold", "p1p1p1",   "fullflag", "p1p2", "lagrangian_grassmannian"};

Json read_json(const std::string& path) {
    std::ifstream in(path);
    return Json::parse(in);
}

cli::RunReport run(const std::string& command, const std::string& name, std::optional<std::string> divisor = {}) {
    cli::Options o;
    o.command = command;
    o.instance = instance_path(name);
    o.divisor = std::move(divisor);
    return cli::run(o);
}

std::filesystem::path scratch(const std::string& leaf) {
    auto dir = std::filesystem::temp_directory_path() / "okb_cli_test";
    std::filesystem::create_directories(dir);
    return dir / leaf;
}

}  // namespace

TEST_CASE("shipped instances round-trip") {
    for (const char* name : kShipped) {
        const std::string instance_name = name;
            CAPTURE(instance_name);
        const auto path = instance_path(name);
        const auto doc = read_json(path);
        const auto inst = parse_instance(doc);
        CHECK(serialize_instance(inst) == doc);
        CHECK(serialize_instance(parse_instance(serialize_instance(inst))) == doc);
    }
}

TEST_CASE("parse errors carry field paths") {
    auto doc = read_json(instance_path("bl2p2_flagH"));
    doc.erase("gram");
    doc["eff_generators"][1][2] = "x/y";
    try {
        parse_instance(doc);
        FAIL("expected InstanceError");
    } catch (const InstanceError& e) {
        std::set<std::string> fields;
        for (const auto& i : e.issues()) fields.insert(i.field);
        CHECK(fields.count("gram") == 1);
        CHECK(fields.count("eff_generators[1][2]") == 1);
    }

    const auto path = scratch("broken.json");
    std::ofstream(path) << "{\n  \"rank\": 1,\n  \"gram\": [[1]\n}\n";
    try {
        load_instance(path);
        FAIL("expected InstanceError");
    } catch (const InstanceError& e) {
        REQUIRE(e.issues().size() == 1);
        CHECK(e.issues()[0].field.find("broken.json:") != std::string::npos);
    }
}

TEST_CASE("rationals and divisors") {
    CHECK(to_json(Rational(3)) == Json(3));
    CHECK(to_json(Rational(-7, 2)) == Json("-7/2"));
    CHECK(rational_from_json(Json("6/4"), "x") == q(3, 2));
    CHECK(rational_from_json(Json(-2), "x") == -2);
    CHECK_THROWS_AS(rational_from_json(Json(0.5), "x"), InputError);
    CHECK(parse_divisor("3,-1,-1", 3) == v({3, -1, -1}));
    CHECK(parse_divisor(" 1/2 , 0 ", 2) == Vector{q(1, 2), 0});
    CHECK_THROWS_AS(parse_divisor("1,2", 3), InputError);
    CHECK_THROWS_AS(parse_divisor("1,a,2", 3), InputError);
}

TEST_CASE("cli: chambers lists the five chambers") {
    const auto r = run("chambers", "bl2p2_flagH");
    CHECK(r.exit_code == cli::ExitCode::ok);
    const auto j = Json::parse(r.json);
    CHECK(j["command"] == "chambers");
    CHECK(j["instance"] == "bl2p2_flagH");
    CHECK(j["chambers"].size() == 5);
    CHECK(j["golden"]["match"] == true);
}

TEST_CASE("cli: body") {
    const auto r = run("body", "bl2p2_flagH", "3,-1,-1");
    CHECK(r.exit_code == cli::ExitCode::ok);
    const auto j = Json::parse(r.json);
    CHECK(j["vertices"] == Json::parse("[[0,0],[2,0],[1,2],[0,3]]"));
    CHECK(j["area"] == "7/2");
    CHECK(j["volume"] == 7);
}

TEST_CASE("cli: validate rejects a bad signature") {
    const auto r = run("validate", "bad_signature");
    CHECK(r.exit_code == cli::ExitCode::bad_input);
    const auto j = Json::parse(r.json);
    bool found = false;
    for (const auto& x : j["violations"]) found = found || x["code"] == "signature";
    CHECK(found);
    // other commands refuse the instance with the same list
    const auto z = run("zariski", "bad_signature", "1,0");
    CHECK(z.exit_code == cli::ExitCode::bad_input);
    CHECK(Json::parse(z.json).contains("violations"));
}

TEST_CASE("cli: input and domain errors exit 2") {
    CHECK(run("body", "bl2p2_flagH").exit_code == cli::ExitCode::bad_input);
    CHECK(run("body", "bl2p2_flagH", "-1,0,0").exit_code == cli::ExitCode::bad_input);
    CHECK(run("body", "bl2p2_flagH", "1,0").exit_code == cli::ExitCode::bad_input);
    CHECK(run("lift3", "bl2p2_flagH").exit_code == cli::ExitCode::bad_input);
    CHECK(run("nonsense", "bl2p2_flagH").exit_code == cli::ExitCode::bad_input);
    CHECK(run("chambers", "does_not_exist").exit_code == cli::ExitCode::bad_input);
}

TEST_CASE("cli: golden mismatch exits 1") {
    auto doc = read_json(instance_path("bl2p2_flagH"));
    doc["golden"]["mbase"]["movable"].erase(0);
    const auto path = scratch("tampered.json");
    std::ofstream(path) << doc.dump(2);
    cli::Options o;
    o.command = "mbase";
    o.instance = path.string();
    const auto r = cli::run(o);
    CHECK(r.exit_code == cli::ExitCode::failed);
    CHECK(Json::parse(r.json)["golden"]["match"] == false);
}

TEST_CASE("cli: every command on every applicable instance") {
    for (const char* name : kShipped) {
        if (std::string(name) == "bad_signature") continue;
        const auto inst = instance(name);
        // a big class: sum of the effective generators
        Vector big = zero_vector(inst.surface.rank);
        for (const auto& g : inst.surface.eff_generators) big = add(big, g);
        std::string d;
        for (std::size_t i = 0; i < big.size(); ++i) d += (i ? "," : "") + to_string(big[i]);
        for (const auto& command : cli::commands()) {
            if (command == "lift3" || command == "fiber3") continue;
            const std::string instance_name = name;
            CAPTURE(instance_name);
            CAPTURE(command);
            const auto r = run(command, name, d);
            CHECK(r.exit_code == cli::ExitCode::ok);
            CHECK_FALSE(Json::parse(r.json).contains("error"));
        }
        if (inst.threefold) {
            Vector sum = zero_vector(inst.threefold->rank);
            for (const auto& g : inst.threefold->eff_generators) sum = add(sum, g);
            std::string s;
            for (std::size_t i = 0; i < sum.size(); ++i) s += (i ? "," : "") + to_string(sum[i]);
            CHECK(run("lift3", name).exit_code == cli::ExitCode::ok);
            const auto f = run("fiber3", name, s);
            CHECK(f.exit_code == cli::ExitCode::ok);
            CHECK(Json::parse(f.json)["volume_matches"] == true);
        }
    }
}

TEST_CASE("cli: output files and figures") {
    cli::Options o;
    o.command = "body";
    o.instance = instance_path("bl2p2_flagH");
    o.divisor = "3,-1,-1";
    o.out = scratch("body.json").string();
    o.svg = scratch("body.svg").string();
    const auto r = cli::run(o);
    CHECK(r.exit_code == cli::ExitCode::ok);
    std::ifstream out(*o.out), svg(*o.svg);
    std::stringstream a, b;
    a << out.rdbuf();
    b << svg.rdbuf();
    CHECK(a.str() == r.json);
    CHECK(b.str().find("<svg") != std::string::npos);
    CHECK(b.str().find("<polygon") != std::string::npos);

    o.command = "mchambers";
    o.divisor.reset();
    o.svg = scratch("fan.svg").string();
    CHECK(cli::run(o).exit_code == cli::ExitCode::ok);
    CHECK(std::filesystem::file_size(*o.svg) > 0);
}

TEST_CASE("cli: output is deterministic and independent of --jobs") {
    for (const char* command : {"chambers", "mbase", "mchambers", "global", "verify", "report"}) {
        CAPTURE(command);
        cli::Options o;
        o.command = command;
        o.instance = instance_path("bl2p2_flagA");
        o.seed = 42;
        const auto a = cli::run(o);
        const auto b = cli::run(o);
        CHECK(a.json == b.json);
        o.jobs = 4;
        CHECK(cli::run(o).json == a.json);
    }
    cli::Options o;
    o.command = "verify";
    o.instance = instance_path("bl2p2_flagA");
    o.seed = 42;
    const auto s42 = cli::run(o).json;
    o.seed = 43;
    CHECK(cli::run(o).json != s42);
}
