// Copyright 2026 The vqdyn Authors
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

#ifndef VQDYN_DATA_DIR_H
#define VQDYN_DATA_DIR_H

#include <filesystem>
#include <string>

namespace vqdyn {

/// Root of the bundled data (presets/, calibration/, benchmarks/).
///
/// Resolution order: $VQDYN_DATA_DIR, the installed share directory, the
/// source tree the library was built from.
std::filesystem::path data_dir();

/// data_dir() / relative, or an empty path when the file does not exist.
std::filesystem::path find_data_file(const std::string &relative);

/// Library version string.
const char *version();

}  // namespace vqdyn

#endif
