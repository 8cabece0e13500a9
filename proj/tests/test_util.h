/*
 * Copyright 2026 The Tomaco Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef TOMACO_TESTS_TEST_UTIL_H_
#define TOMACO_TESTS_TEST_UTIL_H_

#include <filesystem>
#include <string>

#include <unistd.h>

#include "tomaco/corpus.h"

namespace tomaco::testing {

inline std::filesystem::path TestdataPath(const std::string& name) {
  return std::filesystem::path(TOMACO_TESTDATA_DIR) / name;
}

inline std::string Testdata(const std::string& name) {
  return ReadFileBytes(TestdataPath(name));
}

// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("tomaco_test_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace tomaco::testing

#endif  // TOMACO_TESTS_TEST_UTIL_H_
