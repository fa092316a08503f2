#pragma once

#include <stdexcept>
#include <string>

namespace rmra {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define RMRA_DEFINE_ERROR(Name)              \
    class Name : public Error {              \
    public:                                  \
        using Error::Error;                  \
    }

RMRA_DEFINE_ERROR(InvalidArray);
RMRA_DEFINE_ERROR(UnknownSensor);
RMRA_DEFINE_ERROR(ApertureTooSmall);
RMRA_DEFINE_ERROR(EndpointFailureUndefined);
RMRA_DEFINE_ERROR(TooSmall);
RMRA_DEFINE_ERROR(DomainError);
RMRA_DEFINE_ERROR(Overflow);
RMRA_DEFINE_ERROR(RankError);
RMRA_DEFINE_ERROR(BelowMinimumSize);
RMRA_DEFINE_ERROR(InvalidConfig);
RMRA_DEFINE_ERROR(CheckpointError);
RMRA_DEFINE_ERROR(CatalogError);

#undef RMRA_DEFINE_ERROR

}  // namespace rmra
