#pragma once

#include <doctest.h>

#include <filesystem>
#include <string>
#include <unistd.h>

#include "binx/error.hpp"

namespace testutil {

inline binx::ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const binx::Error& e) {
        return e.code();
    }
    FAIL("no error thrown");
    return binx::ErrorCode::IoError;
}

/// Fresh path under a per-process scratch directory; any old file is removed.
inline std::filesystem::path temp_file(const std::string& stem) {
    auto dir = std::filesystem::temp_directory_path() / ("binx-test-" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    auto p = dir / stem;
    std::filesystem::remove_all(p);
    return p;
}

}  // namespace testutil
