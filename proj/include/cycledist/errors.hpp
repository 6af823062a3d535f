#pragma once

#include <stdexcept>
#include <string>

namespace cycledist {

// Bad argument to a library operation (unknown node, degenerate size, ...).
class invalid_parameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A randomized constructor (S-random permuter, LDPC configuration model)
// exhausted its restart budget. attempts() reports how many full
// constructions were tried.
class construction_failure : public std::runtime_error {
public:
    construction_failure(const std::string& what, int attempts)
        : std::runtime_error(what), attempts_(attempts) {}

    int attempts() const noexcept { return attempts_; }

private:
    int attempts_;
};

} // namespace cycledist
