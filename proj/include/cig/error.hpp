#pragma once

#include <stdexcept>
#include <string>

namespace cig {

/// Base class for every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

#define CIG_DEFINE_ERROR(Name)                 \
    class Name : public Error                  \
    {                                          \
    public:                                    \
        explicit Name(const std::string & what) \
            : Error(#Name ": " + what)         \
        {                                      \
        }                                      \
    }

CIG_DEFINE_ERROR(ParseError);
CIG_DEFINE_ERROR(InvalidArgument);
CIG_DEFINE_ERROR(UnboundVariable);
CIG_DEFINE_ERROR(InvalidExponent);
CIG_DEFINE_ERROR(ArityMismatch);
CIG_DEFINE_ERROR(NotLatin);
CIG_DEFINE_ERROR(BoundExceeded);
CIG_DEFINE_ERROR(NotACongruence);
CIG_DEFINE_ERROR(NotPseudopartition);
CIG_DEFINE_ERROR(MissingFiberMaps);
CIG_DEFINE_ERROR(EvenModulus);
CIG_DEFINE_ERROR(NotCID);
CIG_DEFINE_ERROR(NoExponent);
CIG_DEFINE_ERROR(SortMismatch);
CIG_DEFINE_ERROR(NotInvariant);
CIG_DEFINE_ERROR(UnknownSuite);

#undef CIG_DEFINE_ERROR

} // namespace cig
