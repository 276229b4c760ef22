// Copyright 2026 The cellclust Authors
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

// The golden prompt corpus: which fixture inputs render into which golden
// file. Shared by `cellclust prompts --goldens` and the test suites.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace cellclust::cli {

struct GoldenFile {
  std::string name;
  std::string content;
};

/// Renders every golden document from the fixtures in `fixtures_dir`.
std::vector<GoldenFile> render_golden_corpus(
    const std::filesystem::path& fixtures_dir);

struct GoldenMismatch {
  std::string name;
  std::string reason;
};

/// Compares the rendered corpus with the files in `goldens_dir`.
std::vector<GoldenMismatch> check_golden_corpus(
    const std::filesystem::path& fixtures_dir,
    const std::filesystem::path& goldens_dir);

/// Rewrites the golden files; returns the names written.
std::vector<std::string> bless_golden_corpus(
    const std::filesystem::path& fixtures_dir,
    const std::filesystem::path& goldens_dir);

}  // namespace cellclust::cli
