#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Result {
  std::string out;
  int code = -1;
};

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

Result run(const std::string& args) {
  const std::string cmd = quote(WLDL_CLI_PATH) + " " + args + " 2>/dev/null";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class Cli : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = fs::temp_directory_path() / ("wldl_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
    write("ex1.wldl",
          "# k = 2\nalphabet: a\n"
          "<((<(2 (x) [a])?> last)? . (<(2 (x) [a])?> last)?)^+> [true] (+) [!a]\n");
    write("ex1b.wldl",
          "alphabet: a\n"
          "<((<(2 (x) [a])?> last)? . (<(2 (x) [a])?> last)?)^+> [true] (+) [!a] (+) 0\n");
    write("ex1c.wldl",
          "alphabet: a\n"
          "<((<(3 (x) [a])?> last)? . (<(2 (x) [a])?> last)?)^+> [true] (+) [!a]\n");
    write("box2.wltl", "G* 2\n");
    write("boxbox2.wltl", "G* G* 2\n");
    write("loop.wldlo", "alphabet: a b\n<a^w> [true]\n");
    write("improper.wldl", "alphabet: a\n<(2?)^+> [true]\n");
    write("bad.wldl", "alphabet: a\n<(2 (x) [a])?\n");
    write("neg.ldl", "alphabet: a b\n!<(a + b)^+ ; a ; (a + b) ; (a + b) ; (a + b) ; (a + b)> last\n");
  }
  static void TearDownTestSuite() { fs::remove_all(dir_); }

  static void write(const std::string& name, const std::string& text) { std::ofstream(dir_ / name) << text; }
  static std::string path(const std::string& name) { return quote((dir_ / name).string()); }

  static fs::path dir_;
};

fs::path Cli::dir_;

}  // namespace

TEST_F(Cli, EvalSquaredWeightExample) {
  const char* words[] = {"", "a", "aa", "aaa", "aaaa"};
  const char* values[] = {"1\n", "0\n", "4\n", "0\n", "16\n"};
  for (int i = 0; i < 5; ++i) {
    const Result r = run("eval --kind wldl --semiring nat --alphabet a -f " + path("ex1.wldl") + " -w " + quote(words[i]));
    EXPECT_EQ(r.out, values[i]) << words[i];
    EXPECT_EQ(r.code, 0);
  }
  EXPECT_EQ(run("eval --kind wldl --semiring nat -f " + path("ex1.wldl") + " -w aaaa --json").out,
            "{\"value\":\"16\"}\n");
}

TEST_F(Cli, EvalLtlAndOmega) {
  EXPECT_EQ(run("eval --kind wltl --semiring nat -f " + path("box2.wltl") + " -w ab").out, "4\n");
  EXPECT_EQ(run("eval --kind wldl-omega --semiring minplus --lasso :a -f " + path("loop.wldlo")).out, "0\n");
  EXPECT_EQ(run("eval --kind wldl-omega --semiring minplus --lasso b:a -f " + path("loop.wldlo")).out, "inf\n");
  EXPECT_EQ(run("eval --kind ldl --alphabet ab -e '<a>true' -w ab").out, "1\n");
  EXPECT_EQ(run("eval --kind gre --semiring nat --alphabet ab -e '2 a . 3 b' -w ab").out, "6\n");
  EXPECT_EQ(run("eval --kind gre-omega --semiring minplus --alphabet ab -e '1 b . (0 a)^w' --lasso b:a").out, "1\n");
}

TEST_F(Cli, Equivalence) {
  Result r = run("equiv --semiring rat -k wldl -a " + path("ex1.wldl") + " -b " + path("ex1.wldl"));
  EXPECT_EQ(r.out, "EQUIVALENT\n");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(run("equiv -k wldl -a " + path("ex1.wldl") + " -b " + path("ex1b.wldl")).out, "EQUIVALENT\n");
  r = run("equiv -k wldl -a " + path("ex1.wldl") + " -b " + path("ex1c.wldl"));
  EXPECT_EQ(r.out, "NOT EQUIVALENT witness=aa\n");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(run("equiv -k wldl -a " + path("ex1.wldl") + " --constant 1").out, "NOT EQUIVALENT witness=a\n");
  EXPECT_EQ(run("equiv -k wldl -a " + path("ex1.wldl") + " --constant 2").out, "NOT EQUIVALENT witness=\"\"\n");
  EXPECT_EQ(run("equiv -k wldl -a " + path("ex1.wldl") + " --constant 1 --json").out,
            "{\"equivalent\":false,\"witness\":\"a\"}\n");
  EXPECT_EQ(run("equiv --semiring nat -k wldl -a " + path("ex1.wldl") + " -b " + path("ex1.wldl")).code, 2);
}

TEST_F(Cli, CompileAndCompareAutomata) {
  const std::string a = (dir_ / "a.json").string(), b = (dir_ / "b.json").string();
  EXPECT_EQ(run("compile -k wldl -s rat -f " + path("ex1.wldl") + " -o " + quote(a)).code, 0);
  EXPECT_EQ(run("compile -k wldl -s rat -f " + path("ex1b.wldl") + " -o " + quote(b)).code, 0);
  EXPECT_EQ(run("equiv --automaton -a " + quote(a) + " -b " + quote(b)).out, "EQUIVALENT\n");
  const Result json = run("compile -k ldl-omega -s boolean -f " + path("loop.wldlo") + " --alphabet ab -e '<a^w>true'");
  EXPECT_NE(json.code, 0);
  const Result ok = run("compile -k ldl-omega -s boolean --alphabet ab -e '<a^w>true'");
  EXPECT_EQ(ok.code, 0);
  EXPECT_NE(ok.out.find("\"accepting\""), std::string::npos);
}

TEST_F(Cli, Translate) {
  EXPECT_EQ(run("translate --from wldl --to gre -s nat --alphabet ab -e 3").out, "3 eps + 3 eps . (1 a + 1 b)^+\n");
  EXPECT_EQ(run("translate --from gre --to wldl -s nat --alphabet ab -e '2 a'").out,
            "<(2 (x) [a])?> [<true> (!a & !b)]\n");
  EXPECT_EQ(run("translate --from gre --to ldl -e '2 a'").code, 1);
}

TEST_F(Cli, ProperAndRltl) {
  Result r = run("proper -k wldl -f " + path("improper.wldl"));
  EXPECT_EQ(r.out, "IMPROPER (2?)\n");
  EXPECT_EQ(r.code, 2);
  r = run("proper -k wldl -f " + path("ex1.wldl"));
  EXPECT_EQ(r.out, "PROPER\n");
  EXPECT_EQ(r.code, 0);
  r = run("check-rltl -f " + path("boxbox2.wltl"));
  EXPECT_EQ(r.out, "NOT-RLTL G* 2\n");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(run("check-rltl -f " + path("box2.wltl")).out, "RLTL\n");
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run("eval --kind wldl -f " + path("bad.wldl") + " -w a").code, 1);
  EXPECT_EQ(run("eval --kind wldl -f " + path("improper.wldl") + " -w a").code, 2);
  EXPECT_EQ(run("eval --kind wldl-omega --semiring nat --lasso :a -f " + path("loop.wldlo")).code, 2);
  EXPECT_EQ(run("eval --kind wldl --semiring florp -f " + path("ex1.wldl") + " -w a").code, 1);
  EXPECT_EQ(run("eval --kind wldl -f " + path("ex1.wldl")).code, 1);
  EXPECT_EQ(run("frobnicate").code, 1);
  const Result budget = run("compile -k ldl --max-states 4 -f " + path("neg.ldl"));
  EXPECT_EQ(budget.code, 3);
  EXPECT_EQ(budget.out, "");
  EXPECT_EQ(run("compile -k ldl -f " + path("neg.ldl")).code, 0);
}

TEST_F(Cli, RandomIsDeterministic) {
  const Result a = run("random -k wldl -s nat --alphabet ab --seed 5 --depth 3 -n 4");
  const Result b = run("random -k wldl -s nat --alphabet ab --seed 5 --depth 3 -n 4");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, run("random -k wldl -s nat --alphabet ab --seed 6 --depth 3 -n 4").out);
}
