#pragma once

#include <stdexcept>
#include <string>

namespace batis {

/// Caller broke an operation's precondition (e.g. wrong point dimension).
class ContractError : public std::invalid_argument {
public:
    explicit ContractError(const std::string& what) : std::invalid_argument(what) {}
};

/// Invalid optimizer or experiment configuration. The CLI maps this to exit code 2.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// Parameters outside the region where a closed form is defined.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Closed form hits a pole (zero denominator).
class SingularityError : public DomainError {
public:
    explicit SingularityError(const std::string& what) : DomainError(what) {}
};

}  // namespace batis
