// Copyright 2026 The sheafctx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "sheafctx/cli.hpp"
#include "sheafctx/io.hpp"

using namespace sheafctx;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
    Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string &name, const std::string &content) {
    std::string path = std::string(P_tmpdir) + "/sheafctx_test_" + name;
    std::ofstream(path) << content;
    return path;
}

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("closure of two commuting operators") {
        Run r = run({"--format", "json", "closure", "XI", "IZ"});
        CHECK(r.code == kExitOk);
        Json j = r.json();
        CHECK(j["members"].size() == 4);
        CHECK(j["consistent"] == true);
    }

    TEST_CASE("closure of the local operators is inconsistent") {
        Run r = run({"--format", "json", "closure", "XI", "IX", "ZI", "IZ"});
        CHECK(r.code == kExitOk);
        Json j = r.json();
        CHECK(j["members"].size() == 20);
        CHECK(j["consistent"] == false);
        CHECK(j["si_avn_closure"] == true);
        CHECK(j.contains("certificate"));
    }

    TEST_CASE("closure of the identity alone") {
        Run r = run({"--format", "json", "closure", "I"});
        CHECK(r.code == kExitOk);
        CHECK(r.json()["members"] == Json::array({"I"}));
    }

    TEST_CASE("signed operators after a separator") {
        Run r = run({"--format", "json", "si-avn", "--", "-XX", "ZZ", "YY"});
        CHECK(r.code == kExitOk);
    }

    TEST_CASE("corpus listing and lookup") {
        Run list = run({"--format", "json", "corpus", "list"});
        CHECK(list.code == kExitOk);
        CHECK(list.json().size() == 8);
        CHECK(run({"corpus", "chsh"}).code == kExitOk);
        CHECK(run({"corpus", "nope"}).code == kExitUsage);
    }

    TEST_CASE("analyze a corpus entry") {
        Run r = run({"--format", "json", "analyze", "--corpus", "chsh", "--checks", "ncf"});
        CHECK(r.code == kExitOk);
        CHECK(r.out.find("3/4") != std::string::npos);
        CHECK(run({"analyze", "--corpus", "chsh", "--checks", "bogus"}).code == kExitUsage);
        CHECK(run({"analyze"}).code == kExitUsage);
    }

    TEST_CASE("analyze a file written by the corpus command") {
        Run doc = run({"corpus", "pr-box"});
        std::string path = temp_file("prbox.json", doc.out);
        Run r = run({"--format", "json", "analyze", path, "--checks", "strong"});
        CHECK(r.code == kExitOk);
        CHECK(r.out.find("true") != std::string::npos);
        std::remove(path.c_str());
    }

    TEST_CASE("validate") {
        Run ok = run({"validate", temp_file("ok.json", R"({"measurements":["a","b"],"outcomes":2,"contexts":[["a","b"]]})")});
        CHECK(ok.code == kExitOk);
        Run bad = run({"validate", temp_file("bad.json", R"({"measurements":["a","b"],"outcomes":2,"contexts":[["a"]]})")});
        CHECK(bad.code == kExitValidation);
        Run broken = run({"validate", temp_file("broken.json", "{")});
        CHECK(broken.code == kExitParse);
    }

    TEST_CASE("realize the GHZ state") {
        Run r = run({"--format", "json", "realize", "--state", "ghz(3)", "xy322-ghz"});
        CHECK(r.code == kExitOk);
        CHECK(r.json()["exact"] == true);
    }

    TEST_CASE("kl test on the square") {
        Run r = run({"--format", "json", "kl-test", "XI", "IX", "XX", "IZ", "ZI", "ZZ", "XZ", "ZX", "YY"});
        CHECK(r.code == kExitOk);
        Json j = r.json();
        CHECK(j["witness"].is_object());
        CHECK(j["pattern_test"] == true);
    }

    TEST_CASE("usage and parse errors") {
        CHECK(run({}).code == kExitUsage);
        CHECK(run({"frobnicate"}).code == kExitUsage);
        CHECK(run({"closure", "XQ"}).code == kExitParse);
        CHECK(run({"--help"}).code == kExitOk);
        CHECK(run({"conjecture-scan", "--max-qubits", "9"}).code == kExitUsage);
    }

    TEST_CASE("output file") {
        std::string path = std::string(P_tmpdir) + "/sheafctx_test_out.txt";
        Run r = run({"--out", path, "closure", "XI"});
        CHECK(r.code == kExitOk);
        std::ifstream in(path);
        std::string first;
        std::getline(in, first);
        CHECK_FALSE(first.empty());
        std::remove(path.c_str());
    }
}
