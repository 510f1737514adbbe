#pragma once

#include <stdexcept>
#include <string>

namespace kneser
{
    /// Root of every error raised by the library.
    class Error : public std::runtime_error
    {
        public:
            using std::runtime_error::runtime_error;
    };

    /// Malformed instance description (bad JSON, missing fields, wrong types).
    class ParseError : public Error
    {
        public:
            using Error::Error;
    };

    /// A domain invariant does not hold; the message names the invariant.
    class ValidationError : public Error
    {
        public:
            using Error::Error;
    };

    /// Input exceeds an exhaustive-search cap.
    class TooLarge : public Error
    {
        public:
            using Error::Error;
    };

    /// A closed form was requested outside the hypotheses it is proved under.
    class HypothesisFail : public Error
    {
        public:
            using Error::Error;
    };

    /// The level-i alternation bound was requested for a composite uniformity.
    class NonPrimeLevel : public Error
    {
        public:
            using Error::Error;
    };

    /// A nested sign vector escapes the part of the outer vector it belongs to.
    class NestingViolation : public Error
    {
        public:
            using Error::Error;
    };

    /// A coloring handed to a construction is not proper.
    class NotProper : public Error
    {
        public:
            using Error::Error;
    };

    /// A structure guaranteed by a theorem was not found. Always an implementation bug.
    class TheoremViolation : public Error
    {
        public:
            using Error::Error;
    };

    /// The exact search ran out of nodes or time. lower <= chi <= upper.
    class BudgetExceeded : public Error
    {
        public:
            BudgetExceeded(const std::string & what, int lower, int upper) :
                Error(what), lower(lower), upper(upper)
            {
            }

            int lower;
            int upper;
    };
}
