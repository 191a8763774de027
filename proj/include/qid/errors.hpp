#pragma once

#include <stdexcept>
#include <string>

namespace qid {

// Series operands that live over different variable lists, or exponent tuples
// that fall outside a series' truncation box.
class SeriesError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A supposedly final power series still carries a negative exponent.
class NegativeExponentResidue : public SeriesError {
public:
    using SeriesError::SeriesError;
};

// (c;q)_n vanished in a denominator.
class PoleInLowerParameter : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A basic hypergeometric sum neither terminates nor truncates by degree.
class NonterminatingConstantArgument : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// (u;q)_infinity requested for a pure constant u.
class ConstantArgument : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

} // namespace qid
