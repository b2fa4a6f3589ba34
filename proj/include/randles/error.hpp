#pragma once

#include <stdexcept>
#include <string>

namespace randles {

/// Error codes for every failure the library can raise.
enum class Errc {
    InvalidParams,
    InvalidBand,
    NyquistViolation,
    ZeroSignal,
    TooShortRecord,
    RankDeficient,
    NotInImage,
    DuplicateRoots,
    SingularSystem,
    PoleOnAxis,
    NoAcceptedTrials,
    EnumerationCap,
    ConfigError,
    IoError,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace randles
