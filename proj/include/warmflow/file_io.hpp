#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace warmflow {

// Whole file as bytes. InputError if it cannot be opened.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

}  // namespace warmflow
