#pragma once

#include <stdexcept>
#include <string>

namespace ktwin {

enum class errc {
    singular_curve,
    bad_reduction,
    cap_exceeded,
    not_invertible,
    out_of_range,
    overflow,
    not_coprime,
    not_squarefree,
    corrupt_checkpoint,
    missing_checkpoints,
    invalid_argument,
    io_error,
    internal,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::singular_curve: return "SingularCurve";
        case errc::bad_reduction: return "BadReduction";
        case errc::cap_exceeded: return "CapExceeded";
        case errc::not_invertible: return "NotInvertible";
        case errc::out_of_range: return "OutOfRange";
        case errc::overflow: return "Overflow";
        case errc::not_coprime: return "NotCoprime";
        case errc::not_squarefree: return "NotSquarefree";
        case errc::corrupt_checkpoint: return "CorruptCheckpoint";
        case errc::missing_checkpoints: return "MissingCheckpoints";
        case errc::invalid_argument: return "InvalidArgument";
        case errc::io_error: return "IoError";
        case errc::internal: return "Internal";
    }
    return "Unknown";
}

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) {
    throw error(code, std::string(errc_name(code)) + ": " + what);
}

}  // namespace ktwin
