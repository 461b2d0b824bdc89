// Minimal stderr logger controlled by the DSKG_LOG environment variable
// (off|error|info|debug; default error).
#pragma once

#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace dskg::log {

enum class Level { off = 0, error = 1, info = 2, debug = 3 };

inline Level threshold() {
    static const Level lvl = [] {
        const char* env = std::getenv("DSKG_LOG");
        if (!env) return Level::error;
        if (std::strcmp(env, "off") == 0) return Level::off;
        if (std::strcmp(env, "info") == 0) return Level::info;
        if (std::strcmp(env, "debug") == 0) return Level::debug;
        return Level::error;
    }();
    return lvl;
}

inline void emit(Level lvl, const char* tag, const char* fmt, ...) {
    if (static_cast<int>(lvl) > static_cast<int>(threshold())) return;
    std::fprintf(stderr, "[dskg:%s] ", tag);
    va_list args;
    va_start(args, fmt);
    std::vfprintf(stderr, fmt, args);
    va_end(args);
    std::fputc('\n', stderr);
}

#define DSKG_LOG_ERROR(...) ::dskg::log::emit(::dskg::log::Level::error, "error", __VA_ARGS__)
#define DSKG_LOG_INFO(...) ::dskg::log::emit(::dskg::log::Level::info, "info", __VA_ARGS__)
#define DSKG_LOG_DEBUG(...) ::dskg::log::emit(::dskg::log::Level::debug, "debug", __VA_ARGS__)

}  // namespace dskg::log
