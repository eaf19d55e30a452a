// Runs the transcripts in tests/golden against ateb-lab.
//
// A transcript is a sequence of cases:
//   # comment
//   $ reduce lx "x[y/x]"
//   y
//   [exit 0]
// The command line after "$ " is passed to the shell with the binary
// prepended; stdout and stderr are compared together.  --update rewrites
// the expected blocks from the current binary.

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct Case {
  std::vector<std::string> comments;
  std::string command;
  std::string expected;  // output lines plus the exit line
};

std::vector<Case> load(const fs::path& p) {
  std::ifstream in(p);
  std::vector<Case> out;
  std::vector<std::string> comments;
  std::string line;
  Case* cur = nullptr;
  while (std::getline(in, line)) {
    if (!cur) {
      if (line.rfind("$ ", 0) == 0) {
        out.push_back({std::move(comments), line.substr(2), ""});
        comments.clear();
        cur = &out.back();
      } else if (!line.empty()) {
        comments.push_back(line);
      }
      continue;
    }
    cur->expected += line + "\n";
    if (line.rfind("[exit ", 0) == 0) cur = nullptr;
  }
  return out;
}

std::string run(const std::string& bin, const std::string& command) {
  std::string full = "'" + bin + "' " + command + " 2>&1";
  std::string out;
  FILE* p = popen(full.c_str(), "r");
  if (!p) return "[popen failed]\n";
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  int status = pclose(p);
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  if (!out.empty() && out.back() != '\n') out += "\n";
  return out + "[exit " + std::to_string(code) + "]\n";
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: cli_golden ATEB_LAB GOLDEN_DIR [--update]\n";
    return 2;
  }
  std::string bin = argv[1];
  fs::path dir = argv[2];
  bool update = argc > 3 && std::string(argv[3]) == "--update";

  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".txt") files.push_back(e.path());
  std::sort(files.begin(), files.end());

  int cases = 0, failures = 0;
  for (const auto& f : files) {
    auto cs = load(f);
    std::ostringstream rewritten;
    for (auto& c : cs) {
      ++cases;
      std::string got = run(bin, c.command);
      if (got != c.expected) {
        if (!update) {
          ++failures;
          std::cout << f.filename().string() << ": $ " << c.command << "\n--- expected\n"
                    << c.expected << "--- got\n"
                    << got;
        }
        c.expected = got;
      }
      for (const auto& k : c.comments) rewritten << k << "\n";
      rewritten << "$ " << c.command << "\n" << c.expected << "\n";
    }
    if (update) std::ofstream(f) << rewritten.str();
  }
  std::cout << cases << " cases, " << failures << " mismatches\n";
  return failures ? 1 : 0;
}
