#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace delaysnn {

/// Raised while a simulation is running; the run cannot continue.
class SimulationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class QueueOverflow : public SimulationError {
public:
    QueueOverflow(const std::string &structure, std::size_t capacity)
            : SimulationError(structure + ": queue overflow, capacity " +
                      std::to_string(capacity) + " events exceeded")
    {
    }
};

class AccumulatorOverflow : public SimulationError {
public:
    using SimulationError::SimulationError;
};

/// Malformed input file. line is 1-based, 0 when not applicable.
class FormatError : public std::runtime_error {
public:
    FormatError(const std::string &source, std::size_t line, const std::string &what)
            : std::runtime_error(source + (line ? ":" + std::to_string(line) : std::string{}) +
                      ": " + what)
            , line_(line)
    {
    }

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace delaysnn
