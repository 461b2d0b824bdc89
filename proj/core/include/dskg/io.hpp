// Deterministic text artifacts: 17-significant-digit number formatting,
// canonical key=value configuration serialization with an FNV-1a hash,
// flat config-file parsing, and a stderr log filter driven by the DSKG_LOG
// environment variable.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace dskg::io {

// Fixed 17 significant digits: every double round-trips exactly and output
// bodies stay byte-identical across runs and platforms with IEEE doubles.
std::string format_double(double v);

// 64-bit FNV-1a over the raw bytes.
std::uint64_t fnv1a64(std::string_view bytes);

// Lower-case zero-padded 16-digit hex.
std::string hex64(std::uint64_t v);

using Config = std::map<std::string, std::string>;

// "key=value\n" lines in key order: the hashing preimage. Command-line flags
// are merged over file entries before anything reaches this point.
std::string canonical_config(const Config& kv);

inline std::uint64_t config_hash(const Config& kv) {
    return fnv1a64(canonical_config(kv));
}

// Parses flat key=value lines; '#' starts a comment, blank lines are
// skipped, surrounding whitespace is trimmed. Throws DomainError on a
// non-empty line without '='.
Config parse_config_text(const std::string& text);

// parse_config_text over a file's contents; DomainError if unreadable.
Config read_config_file(const std::string& path);

// Joins cells with commas. Cells must not contain commas, quotes, or
// newlines; the writers here only ever emit numbers and fixed tokens.
std::string csv_line(const std::vector<std::string>& cells);

enum class LogLevel { off = 0, error = 1, info = 2, debug = 3 };

// DSKG_LOG = off | error | info | debug; unset or unknown means error.
LogLevel log_level();

// Writes "[dskg] msg" to stderr when level passes the DSKG_LOG filter.
void log(LogLevel level, const std::string& msg);

}  // namespace dskg::io
