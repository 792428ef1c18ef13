#pragma once

#include <stdexcept>
#include <string>

namespace g2mono {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class UnsupportedError : public Error {
public:
    using Error::Error;
};

class NonParabolicRequiredError : public Error {
public:
    using Error::Error;
};

// beta > 0: no complete solution exists
class NoSolutionError : public Error {
public:
    using Error::Error;
};

class OutOfRangeError : public Error {
public:
    using Error::Error;
};

class StiffnessError : public Error {
public:
    StiffnessError(const std::string& what, double r, double step)
        : Error(what), r_(r), step_(step) {}
    double radius() const noexcept { return r_; }
    double step() const noexcept { return step_; }

private:
    double r_;
    double step_;
};

class StepBackError : public Error {
public:
    StepBackError(const std::string& what, double admissible)
        : Error(what), admissible_(admissible) {}
    double admissible_delta() const noexcept { return admissible_; }

private:
    double admissible_;
};

class UndefinedEnergyError : public Error {
public:
    using Error::Error;
};

class UsageError : public Error {
public:
    using Error::Error;
};

}  // namespace g2mono
