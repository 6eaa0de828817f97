#pragma once
#include <stdexcept>
#include <string>

namespace radgas {

// Exit-code taxonomy: config errors 2, numerical failures 3, assertion/check failures 4.
struct Error : std::runtime_error {
    int exit_code;
    Error(int code, const std::string& msg) : std::runtime_error(msg), exit_code(code) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error(2, msg) {}
};

struct NumericalError : Error {
    explicit NumericalError(const std::string& msg) : Error(3, msg) {}
};

struct CheckError : Error {
    explicit CheckError(const std::string& msg) : Error(4, msg) {}
};

inline void ensure(bool cond, const std::string& msg) {
    if (!cond) throw ConfigError(msg);
}

inline void ensure_num(bool cond, const std::string& msg) {
    if (!cond) throw NumericalError(msg);
}

} // namespace radgas
