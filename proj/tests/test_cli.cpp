#include <gtest/gtest.h>

#include <deltachow/script.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace deltachow;
using script::execute;
using script::Options;
using nlohmann::json;

namespace {

json run_ok(const std::string& src, const Options& opts = {}) {
    const script::Report r = execute(src, opts);
    EXPECT_EQ(r.exit_code, 0) << r.document.dump();
    return r.document;
}

struct Process {
    int status = -1;
    std::string out;
};

#ifdef DELTACHOW_CLI_PATH
Process run_cli(const std::string& args) {
    Process p;
    const std::string cmd = std::string("'") + DELTACHOW_CLI_PATH + "' " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return p;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) p.out.append(buf.data(), got);
    const int st = pclose(pipe);
    p.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return p;
}
#endif

}  // namespace

TEST(ScriptParse, DifferentialChowRequest) {
    const script::Script s = script::parse("vars y; poly f = y^2*y' + 1; dchow f d=0 h=1;");
    EXPECT_EQ(s.names.names(), std::vector<std::string>{"y"});
    ASSERT_EQ(s.polys.size(), 1u);
    EXPECT_EQ(s.command, "dchow");
    ASSERT_EQ(s.args.size(), 3u);
    EXPECT_EQ(s.args[0].kind, script::Arg::Kind::name);
    EXPECT_EQ(s.args[1].key, "d");
    EXPECT_EQ(s.args[2].value, "1");
    EXPECT_EQ(*s.find("f"), parse_polynomial("y^2*y' + 1", s.names));
}

TEST(ScriptParse, DNotationEqualsApostrophes) {
    const script::Script s = script::parse("vars x; poly f = D(x,2)^2 - x; poly g = x''^2 - x; derive f;");
    EXPECT_EQ(*s.find("f"), *s.find("g"));
}

TEST(ScriptParse, GroupsAndMultiplicities) {
    const script::Script s = script::parse("vars y;\npoly f = y';\npoly g = y;\ncyclechow 3*[f, g] [g];");
    ASSERT_EQ(s.args.size(), 2u);
    EXPECT_EQ(s.args[0].kind, script::Arg::Kind::group);
    EXPECT_EQ(s.args[0].multiplicity, 3u);
    EXPECT_EQ(s.args[0].names, (std::vector<std::string>{"f", "g"}));
    EXPECT_EQ(s.args[1].multiplicity, 1u);
}

TEST(ScriptParse, UnknownOperatorPosition) {
    try {
        (void)script::parse("vars x; poly f = x ⊕ 1;");
        FAIL();
    } catch (const SyntaxError& e) {
        EXPECT_EQ(e.line(), 1u);
        EXPECT_EQ(e.column(), 20u);
    }
}

TEST(ScriptParse, Errors) {
    EXPECT_THROW(script::parse("poly f = 1; vars x; derive f;"), SyntaxError);
    EXPECT_THROW(script::parse("vars x; poly f = x; poly f = x'; derive f;"), SyntaxError);
    EXPECT_THROW(script::parse("vars x; poly x = 1; derive x;"), SyntaxError);
    EXPECT_THROW(script::parse("vars x; poly f = x;"), SyntaxError);
    EXPECT_THROW(script::parse("vars x; poly f = x; frobnicate f;"), SyntaxError);
    EXPECT_THROW(script::parse("vars x; poly f = x; derive g;"), SyntaxError);
    EXPECT_THROW(script::parse("vars x; poly f = x; derive f; derive f;"), SyntaxError);
}

TEST(ScriptParse, CommentsAndLines) {
    try {
        (void)script::parse("# header\nvars x;\npoly f = x +;\nderive f;");
        FAIL();
    } catch (const SyntaxError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
}

TEST(ScriptRun, DifferentialChowGolden) {
    const json doc = run_ok("vars y; poly f = y^2*y' + 1; dchow f d=0 h=1;");
    EXPECT_EQ(doc["schema_version"], 1);
    EXPECT_EQ(doc["command"], "dchow");
    EXPECT_EQ(doc["result"]["chow_form"], "u00^2*u01*u00' - u00^3*u01' - u01^4");
    EXPECT_EQ(doc["result"]["index"], json::array({0, 1, 1, 4}));
    EXPECT_FALSE(doc.contains("error"));
    for (const char* k : {"parse", "run", "total"}) EXPECT_TRUE(doc["timings_ms"][k].is_number());
}

TEST(ScriptRun, Kolchin) {
    const json doc = run_ok("vars x1, x2; poly a = x1'; poly b = x2''; kolchin a b;");
    EXPECT_EQ(doc["result"], (json{{"d", 0}, {"h", 3}, {"omega", "3"}}));
}

TEST(ScriptRun, Admissible) {
    EXPECT_EQ(run_ok("vars x1, x2; poly a = x1'; poly b = x2''; admissible a b h=2;")["result"], false);
    EXPECT_EQ(run_ok("vars x1, x2; poly a = x1'; poly b = x1''; poly c = x2''; admissible a b c h=2;")["result"], true);
}

TEST(ScriptRun, EveryCommand) {
    const std::vector<std::pair<std::string, std::string>> cases{
        {"derive", "vars y; poly f = y''^2 - y; derive f;"},
        {"reduce", "vars x; poly g = x'' - 2; poly a = x'^2 - 4*x; reduce g a;"},
        {"charset", "vars x; poly f = x'^2 - 4*x; charset f;"},
        {"bh", "vars x; poly f = x'^2 - 4*x; bh f h=2;"},
        {"dominant", "vars x; poly f = x'^2 - 4*x; dominant f;"},
        {"prolongseq", "vars x; poly f = x'^2 - 4*x; prolongseq f l=2 mode=naive;"},
        {"chow", "vars y1, y2; poly a = y1 - y2; chow a;"},
        {"index", "vars y; poly f = u01*u00' - u00*u01'; index f;"},
        {"bound", "vars y; bound n=1 d=0 h=1 m=4;"},
        {"cyclechow", "vars y; poly f = y'; cyclechow 2*[f];"},
    };
    for (const auto& [cmd, src] : cases) {
        const json doc = run_ok(src);
        EXPECT_EQ(doc["command"], cmd);
        EXPECT_FALSE(doc["result"].is_null()) << cmd;
    }
}

TEST(ScriptRun, DeriveResult) {
    EXPECT_EQ(run_ok("vars y; poly f = y''^2 - y; derive f;")["result"]["polynomial"], "2*y''*y''' - y'");
}

TEST(ScriptRun, BoundValues) {
    const json r = run_ok("vars y; bound n=1 d=0 h=1 m=4;")["result"];
    EXPECT_EQ(r["upper"], 64);
    EXPECT_EQ(r["lower"], "2");
}

TEST(ScriptRun, ResultPolynomialsReparse) {
    const json doc = run_ok("vars x; poly f = x'^2 - 4*x; poly g = x; prolongseq [f] [g] l=2;");
    const VariableNames names({"x"});
    for (const auto& g : doc["result"]["generators"]) {
        const std::string text = g.get<std::string>();
        EXPECT_EQ(to_string(parse_polynomial(text, names), names), text);
    }
}

TEST(ScriptRun, Deterministic) {
    const std::string src = "vars y; poly f = y'; poly g = y^2*y' + 1; cyclechow 2*[f] [g];";
    EXPECT_EQ(run_ok(src)["result"].dump(), run_ok(src)["result"].dump());
}

TEST(ScriptErrors, StructuredDomainError) {
    const script::Report r = execute("vars x; poly f = 1; charset f;", {});
    EXPECT_EQ(r.exit_code, 1);
    EXPECT_EQ(r.document["error"]["kind"], "domain");
    EXPECT_EQ(r.document["error"]["message"], "improper ideal");
    EXPECT_TRUE(r.document["result"].is_null());
}

TEST(ScriptErrors, StructuredSyntaxError) {
    const script::Report r = execute("vars x; poly f = x ⊕ 1;", {});
    EXPECT_EQ(r.exit_code, 2);
    EXPECT_EQ(r.document["error"]["kind"], "syntax");
    EXPECT_EQ(r.document["error"]["line"], 1);
    EXPECT_EQ(r.document["error"]["column"], 20);
}

TEST(ScriptErrors, ResourceLimit) {
    Options opts;
    opts.limits.degree_cap = 3;
    const script::Report r = execute("vars y; poly f = y^2*y' + 1; dchow f;", opts);
    EXPECT_EQ(r.exit_code, 3);
    EXPECT_EQ(r.document["error"]["kind"], "resource");
}

TEST(ScriptErrors, NotOrderUnmixed) {
    const script::Report r = execute("vars y; poly f = y'; poly g = y; cyclechow [f] [g];", {});
    EXPECT_EQ(r.exit_code, 1);
    EXPECT_EQ(r.document["error"]["message"], "not order-unmixed");
}

TEST(ScriptErrors, NeverCrashOnGarbage) {
    const std::vector<std::string> inputs{"", ";;;", "vars", "vars x; poly f = x^; derive f;",
                                          "vars x; poly f = (x; derive f;", "vars x; derive;",
                                          "vars x; poly f = x'; reduce f;", "vars x; poly f = x; bh f h=-1;",
                                          "vars x; poly f = x; bh f h=abc;", "vars x; poly f = x; dchow f d=5;"};
    for (const auto& in : inputs) {
        const script::Report r = execute(in, {});
        EXPECT_NE(r.exit_code, 0) << in;
        EXPECT_TRUE(r.document.contains("error")) << in;
    }
}

#ifdef DELTACHOW_CLI_PATH
TEST(Binary, ExitCodes) {
    EXPECT_EQ(run_cli("-e \"vars y; poly f = y'; dchow f;\"").status, 0);
    EXPECT_EQ(run_cli("-e \"vars x; poly f = 1; charset f;\"").status, 1);
    EXPECT_EQ(run_cli("-e \"vars x; poly f = x +; derive f;\"").status, 2);
    EXPECT_EQ(run_cli("--degree-cap 3 -e \"vars y; poly f = y^2*y' + 1; dchow f;\"").status, 3);
    EXPECT_EQ(run_cli("--no-such-flag").status, 2);
}

TEST(Binary, PrettyOutputParses) {
    const Process p = run_cli("--pretty -e \"vars y; poly f = y'; dchow f;\"");
    ASSERT_EQ(p.status, 0);
    EXPECT_NE(p.out.find("\n  "), std::string::npos);
    EXPECT_EQ(json::parse(p.out)["result"]["chow_form"], "u01*u00' - u00*u01'");
}

TEST(Binary, SamplesRunAndAreDeterministic) {
    int count = 0;
    for (const auto& entry : std::filesystem::directory_iterator(DELTACHOW_SAMPLES_DIR)) {
        if (entry.path().extension() != ".dcs") continue;
        ++count;
        const Process a = run_cli("'" + entry.path().string() + "'");
        const Process b = run_cli("'" + entry.path().string() + "'");
        ASSERT_EQ(a.status, 0) << entry.path();
        EXPECT_EQ(json::parse(a.out)["result"].dump(), json::parse(b.out)["result"].dump()) << entry.path();
    }
    EXPECT_GT(count, 0);
}
#endif
