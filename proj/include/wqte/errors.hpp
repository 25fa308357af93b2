#pragma once

#include <stdexcept>
#include <string>

namespace wqte {

/// Base class for all library errors. `code()` is a stable machine-readable
/// tag; `what()` carries the human-readable detail.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& m) : Error("config", m) {}
};

class SingularDesignError : public Error {
public:
    explicit SingularDesignError(const std::string& m) : Error("singular-design", m) {}
};

class SeparationError : public Error {
public:
    explicit SeparationError(const std::string& m) : Error("separation", m) {}
};

class PositivityError : public Error {
public:
    explicit PositivityError(const std::string& m) : Error("positivity", m) {}
};

class NothingToFitError : public Error {
public:
    explicit NothingToFitError(const std::string& m) : Error("nothing-to-fit", m) {}
};

class EmptyArmError : public Error {
public:
    explicit EmptyArmError(const std::string& m) : Error("empty-arm", m) {}
};

class DegenerateResampleError : public Error {
public:
    explicit DegenerateResampleError(const std::string& m) : Error("degenerate-resample", m) {}
};

class DegenerateBandError : public Error {
public:
    explicit DegenerateBandError(const std::string& m) : Error("degenerate-band", m) {}
};

class SingularityError : public Error {
public:
    explicit SingularityError(const std::string& m) : Error("singular-sigma", m) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& m) : Error("io", m) {}
};

}  // namespace wqte
