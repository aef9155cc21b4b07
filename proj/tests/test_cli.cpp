#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "sheafbetti/cli.hpp"
#include "sheafbetti/modular.hpp"

using namespace sheafbetti;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> body_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);)
    if (!line.empty() && line[0] != '#') out.push_back(line);
  return out;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("series in text form") {
  const auto r = call({"series", "--rank", "3", "--c1=-C-f", "--polarization", "1,0", "--order", "6"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.rfind("# sheafbetti ", 0) == 0);
  CHECK(r.out.find("# config: series rank=3 c1=-C-f") != std::string::npos);
  CHECK(r.out.find("# cutoff: q^(-5/6+6)") != std::string::npos);
  const auto lines = body_lines(r.out);
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] == "q^(-5/6+2): 3");
  CHECK(lines[1] == "q^(-5/6+3): 69");
  CHECK(lines[4] == "q^(-5/6+6): 40377");
}

TEST_CASE("series in json and csv") {
  const auto j = call({"series", "--rank", "2", "--c1=-C-f", "--polarization", "1,0", "--order", "3", "--format", "json"});
  REQUIRE(j.code == cli::kExitOk);
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["provenance"]["tool"] == "sheafbetti");
  CHECK(doc.contains("provenance"));
  const auto c = call({"series", "--rank", "2", "--surface", "p2", "--c1=-H", "--order", "3", "--format", "csv"});
  REQUIRE(c.code == cli::kExitOk);
  const auto lines = body_lines(c.out);
  REQUIRE(lines.size() >= 4);
  CHECK(lines[0] == "exponent,c2,coefficient");
  CHECK(lines[1].substr(lines[1].rfind(',')) == ",1");
  CHECK(lines[2].substr(lines[2].rfind(',')) == ",9");
  CHECK(lines[3].substr(lines[3].rfind(',')) == ",48");
}

TEST_CASE("notes for special inputs") {
  const auto empty = call({"series", "--rank", "2", "--c1=-C-f", "--polarization", "0,1", "--order", "2"});
  CHECK(empty.code == cli::kExitOk);
  CHECK(empty.out.find("# note: empty series") != std::string::npos);
  CHECK(body_lines(empty.out).empty());
  const auto gcd = call({"series", "--rank", "2", "--surface", "p2", "--c1", "0", "--order", "2"});
  CHECK(gcd.code == cli::kExitOk);
  CHECK(gcd.out.find("gcd") != std::string::npos);
  const auto dual = call({"series", "--rank", "3", "--surface", "p2", "--c1", "H", "--order", "3"});
  CHECK(dual.code == cli::kExitOk);
  const auto minus = call({"series", "--rank", "3", "--surface", "p2", "--c1=-H", "--order", "3"});
  CHECK_FALSE(body_lines(dual.out).empty());
  CHECK(body_lines(dual.out) == body_lines(minus.out));
  CHECK(dual.out.find("duality") != std::string::npos);
}

TEST_CASE("output is byte-identical across runs") {
  const std::vector<std::string> args = {"series", "--rank", "3", "--c1=-C-f", "--polarization", "2,1", "--order", "4", "--refined", "--format", "json"};
  CHECK(call(args).out == call(args).out);
  const std::vector<std::string> betti = {"betti", "--c2", "2..5"};
  CHECK(call(betti).out == call(betti).out);
}

TEST_CASE("output file") {
  const auto path = std::filesystem::temp_directory_path() / "sheafbetti_cli_out.txt";
  std::filesystem::remove(path);
  const auto r = call({"series", "--rank", "3", "--c1=-C-f", "--polarization", "1,0", "--order", "3", "-o", path.string()});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.empty());
  const std::string written = slurp(path);
  CHECK(written == call({"series", "--rank", "3", "--c1=-C-f", "--polarization", "1,0", "--order", "3"}).out);
  std::filesystem::remove(path);
}

TEST_CASE("betti table") {
  const auto r = call({"betti", "--c2", "2..7"});
  REQUIRE(r.code == cli::kExitOk);
  const auto lines = body_lines(r.out);
  REQUIRE(lines.size() == 7);
  CHECK(lines[0].rfind("c2,b0,b2,", 0) == 0);
  CHECK(lines[0].substr(lines[0].size() - 9) == ",chi,note");
  CHECK(lines[1].rfind("2,1,1,", 0) == 0);
  CHECK(lines[6].substr(lines[6].size() - 19) == ",40881,extrapolated");
  CHECK(r.out.find("# note: rows with c2 > 6") != std::string::npos);
  CHECK(call({"betti", "--c2", "1..3"}).code == cli::kExitConfig);
  CHECK(call({"betti", "--c2", "2..x"}).code == cli::kExitConfig);
  CHECK(call({"betti", "--rank", "2"}).code == cli::kExitConfig);
}

TEST_CASE("walls") {
  const auto r = call({"walls", "--bound", "9/4"});
  REQUIRE(r.code == cli::kExitOk);
  const auto doc = nlohmann::json::parse(r.out);
  std::set<std::string> ratios;
  for (const auto& w : doc["walls"]) ratios.insert(w["ratio"].get<std::string>());
  CHECK(ratios.count("1:1") == 1);
  CHECK(ratios.count("1:3") == 1);
  const auto none = nlohmann::json::parse(call({"walls", "--bound", "0"}).out);
  CHECK(none["walls"].empty());
  CHECK(call({"walls", "--bound", "x"}).code == cli::kExitConfig);
}

TEST_CASE("exit codes") {
  CHECK(call({"--help"}).code == cli::kExitOk);
  CHECK(call({"--version"}).code == cli::kExitOk);
  CHECK(call({}).code == cli::kExitConfig);
  CHECK(call({"nonsense"}).code == cli::kExitConfig);
  CHECK(call({"series", "--rank", "4", "--c1", "0"}).code == cli::kExitConfig);
  CHECK(call({"series", "--rank", "3", "--surface", "p2", "--c1", "0"}).code == cli::kExitConfig);
  CHECK(call({"series", "--rank", "2", "--c1=-C-f", "--polarization", "1"}).code == cli::kExitConfig);
  CHECK(call({"series", "--rank", "2", "--c1=-C-f", "--format", "xml"}).code == cli::kExitConfig);
  const auto bad = call({"series", "--rank", "2", "--c1=-Q"});
  CHECK(bad.code == cli::kExitConfig);
  CHECK_FALSE(bad.err.empty());
  CHECK(call({"check", "--only", "no-such-check"}).code == cli::kExitConfig);
}

TEST_CASE("check subcommand") {
  const auto r = call({"check", "--only", "closed-forms", "--order", "4"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.find("PASS A3 closed-forms") != std::string::npos);
  CHECK(r.out.find("reduced coverage") != std::string::npos);
  const auto j = call({"check", "--only", "A10", "--format", "json"});
  CHECK(j.code == cli::kExitOk);
  CHECK(nlohmann::json::parse(j.out).dump().find("hurwitz") != std::string::npos);
}

TEST_CASE("cache directory from the environment") {
  const auto dir = std::filesystem::temp_directory_path() / "sheafbetti_cli_cache";
  std::filesystem::remove_all(dir);
  ::setenv(cli::kCacheEnv, dir.c_str(), 1);
  const auto with = call({"series", "--rank", "3", "--c1=-C-f", "--polarization", "1,0", "--order", "4"});
  ::unsetenv(cli::kCacheEnv);
  use_hurwitz_cache(nullptr);
  CHECK(with.code == cli::kExitOk);
  CHECK(std::filesystem::exists(dir / "hurwitz.json"));
  const auto without = call({"series", "--rank", "3", "--c1=-C-f", "--polarization", "1,0", "--order", "4"});
  CHECK(with.out == without.out);
  std::filesystem::remove_all(dir);
}

TEST_CASE("installed binary") {
  const char* tool = std::getenv("SHEAFBETTI_TOOL");
  if (tool == nullptr) return;
  const auto path = std::filesystem::temp_directory_path() / "sheafbetti_bin_out.txt";
  const std::string cmd = std::string(tool) + " betti --c2 2..3 > " + path.string();
  CHECK(std::system(cmd.c_str()) == 0);
  CHECK(slurp(path) == call({"betti", "--c2", "2..3"}).out);
  const std::string bad = std::string(tool) + " series --rank 9 --c1 0 > /dev/null 2>&1";
  const int status = std::system(bad.c_str());
  CHECK(WEXITSTATUS(status) == cli::kExitConfig);
  std::filesystem::remove(path);
}
