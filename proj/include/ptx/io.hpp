#pragma once

#include "ptx/core.hpp"

#include <filesystem>

namespace ptx {

enum class FileErrorKind {
    Io,
    Syntax,
    UnknownField,
    MissingField,
    BadValue,
    UnknownState,
    IndexOutOfRange,
    ReservedLetter,
};

[[nodiscard]] std::string to_string(FileErrorKind k);

/// Machine file problem; line/column are 1-based, 0 when unknown.
struct FileError : Error {
    FileError(FileErrorKind kind, std::string msg, int line = 0, int column = 0);
    FileErrorKind kind;
    int line;
    int column;
};

inline constexpr int kFormatVersion = 1;

[[nodiscard]] Transducer parse_machine(const std::string& text);
/// Canonical: states sorted by id, transitions sorted, two-space indentation.
[[nodiscard]] std::string serialize_machine(const Transducer& T);

[[nodiscard]] Transducer load_machine(const std::filesystem::path& p);
void save_machine(const Transducer& T, const std::filesystem::path& p);

/// Text form of an input word: code points, each optionally preceded by `_` marks; spaces ignored.
[[nodiscard]] Word parse_word(const std::string& text);

}  // namespace ptx
