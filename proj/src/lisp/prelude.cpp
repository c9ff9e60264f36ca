#include "lisp/prelude.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace rr::lisp {

std::vector<PreludeFile> read_prelude_manifest(const std::string& manifest_path) {
  std::ifstream manifest(manifest_path);
  if (!manifest) throw std::runtime_error("cannot read prelude manifest " + manifest_path);
  std::filesystem::path dir = std::filesystem::path(manifest_path).parent_path();
  std::vector<PreludeFile> files;
  std::string line;
  while (std::getline(manifest, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    auto last = line.find_last_not_of(" \t\r");
    std::string name = line.substr(first, last - first + 1);
    std::ifstream in(dir / name);
    if (!in) throw std::runtime_error("cannot read prelude file " + (dir / name).string());
    std::ostringstream text;
    text << in.rdbuf();
    files.push_back({name, text.str()});
  }
  return files;
}

void load_prelude(Interp& in, const std::vector<PreludeFile>& files) {
  for (const auto& f : files) in.load_source(f.text, f.name);
}

}  // namespace rr::lisp
