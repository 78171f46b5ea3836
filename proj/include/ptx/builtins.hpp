#pragma once

#include "ptx/core.hpp"

namespace ptx {

struct ReservedLetter : Error {
    using Error::Error;
};

[[nodiscard]] std::vector<Symbol> alphabet(const std::string& letters);

/// 1 pebble; the i-th copy of u has its i-th letter marked.
[[nodiscard]] Transducer squaring(const std::vector<Symbol>& sigma);
/// Same machine with q3 moving left instead of right.
[[nodiscard]] Transducer squaring_variant(const std::vector<Symbol>& sigma);
/// Like squaring, but the marked letter is replaced by `!`.
[[nodiscard]] Transducer modified_squaring(const std::vector<Symbol>& sigma);
/// 1 pebble; reverse of every non-empty prefix, each followed by `!`.
[[nodiscard]] Transducer all_prefixes_reversed(const std::vector<Symbol>& sigma);
/// 0 pebbles; reverses each `!`-separated block. `!` is added to sigma if missing.
[[nodiscard]] Transducer iterated_reverse(const std::vector<Symbol>& sigma);
/// 0-pebble identity.
[[nodiscard]] Transducer copier(const std::vector<Symbol>& sigma);

[[nodiscard]] std::vector<std::string> builtin_names();
/// Any builtin above, or config-enumerator-K / equality-annotator-K.
[[nodiscard]] Transducer builtin(const std::string& name, const std::vector<Symbol>& sigma);

}  // namespace ptx
