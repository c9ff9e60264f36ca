#pragma once

#include <string>
#include <vector>

#include "lisp/interp.hpp"

namespace rr::lisp {

struct PreludeFile {
  std::string name;
  std::string text;
};

// The prelude compiled into the library, in manifest order.
const std::vector<PreludeFile>& builtin_prelude();

// Reads a manifest (one file name per line, '#' comments) and the files it
// lists, resolved relative to the manifest's directory. Throws on I/O errors.
std::vector<PreludeFile> read_prelude_manifest(const std::string& manifest_path);

// Loads each file in order; a failing form aborts with its file and line.
void load_prelude(Interp& in, const std::vector<PreludeFile>& files);

}  // namespace rr::lisp
