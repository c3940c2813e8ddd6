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

#include "vqdyn/data_dir.h"

#include <cstdlib>

namespace vqdyn {

std::filesystem::path data_dir() {
    if (const char *env = std::getenv("VQDYN_DATA_DIR"); env != nullptr && *env != '\0') {
        return std::filesystem::path(env);
    }
    std::filesystem::path installed(VQDYN_INSTALL_DATA_DIR);
    std::error_code ec;
    if (std::filesystem::is_directory(installed / "presets", ec)) {
        return installed;
    }
    return std::filesystem::path(VQDYN_BUILD_DATA_DIR);
}

std::filesystem::path find_data_file(const std::string &relative) {
    auto p = data_dir() / relative;
    std::error_code ec;
    if (std::filesystem::is_regular_file(p, ec)) {
        return p;
    }
    return {};
}

const char *version() {
    return VQDYN_VERSION;
}

}  // namespace vqdyn
