#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

namespace fs = std::filesystem;

int run(const std::string& args) {
  std::string command = std::string(PAMALG_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  int status = std::system(command.c_str());
  return WEXITSTATUS(status);
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("pamalg_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("cli round trip: wap-demo, certify, amalgam, lemma1") {
  TempDir tmp;
  std::string dir = tmp.path.string();

  REQUIRE(run("wap-demo --out " + dir) == 0);
  for (const char* name : {"base.json", "a0.json", "a1.json", "a2.json", "certificate.json",
                           "meta.json", "proof.txt", "a0.dot"}) {
    CHECK(fs::exists(tmp.path / name));
  }

  CHECK(run("certify --cert " + dir + "/certificate.json") == 0);

  // the emitted extensions are machine-refuted
  CHECK(run("amalgam --base " + dir + "/base.json --left " + dir + "/a1.json --right " + dir +
            "/a2.json") == 1);

  // identical extensions amalgamate
  CHECK(run("amalgam --base " + dir + "/base.json --left " + dir + "/base.json --right " + dir +
            "/base.json") == 0);

  CHECK(run("lemma1 --input " + dir + "/base.json --s x --trace --out " + dir + "/trace.json") ==
        0);
  CHECK(fs::exists(tmp.path / "trace.json"));

  CHECK(run("jep --left " + dir + "/base.json --right " + dir + "/base.json --out " + dir +
            "/joined.json") == 0);
  CHECK(fs::exists(tmp.path / "joined.json"));

  CHECK(run("gen --count 3 --steps 4 --seed 9 --out " + dir + "/corpus.jsonl") == 0);
  std::ifstream corpus(tmp.path / "corpus.jsonl");
  int lines = 0;
  std::string line;
  while (std::getline(corpus, line)) {
    if (!line.empty()) ++lines;
  }
  CHECK(lines == 3);
}

TEST_CASE("cli input errors exit with 3") {
  TempDir tmp;
  fs::path bad = tmp.path / "bad.json";
  std::ofstream(bad) << "{\"oops\": [";
  CHECK(run("certify --cert " + bad.string()) == 3);
  CHECK(run("lemma1 --input " + bad.string() + " --s x") == 3);
  CHECK(run("lemma1 --input /nonexistent.json --s x") == 3);
  CHECK(run("amalgam --base " + bad.string() + " --left " + bad.string() + " --right " +
            bad.string()) == 3);
}
