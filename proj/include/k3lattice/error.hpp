#pragma once

#include <stdexcept>
#include <string>

namespace k3lattice {

// Every failure raised by the library derives from Error so callers can
// triage by category (the CLI maps categories onto exit codes).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or out-of-contract input: wrong shapes, bad counts, zero vectors.
class InputError : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public InputError {
public:
    using InputError::InputError;
};

// Mathematically valid input outside the domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

class DegenerateLattice : public DomainError {
public:
    using DomainError::DomainError;
};

class UnsupportedPrime : public DomainError {
public:
    using DomainError::DomainError;
};

class PrecisionError : public DomainError {
public:
    using DomainError::DomainError;
};

class CapacityError : public DomainError {
public:
    using DomainError::DomainError;
};

class StructureError : public DomainError {
public:
    using DomainError::DomainError;
};

// Data that contradicts itself (e.g. w samples not generated by any q).
class InconsistentData : public Error {
public:
    using Error::Error;
};

} // namespace k3lattice
