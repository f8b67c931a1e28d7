#pragma once

#include <stdexcept>
#include <string>

namespace fintstab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// quantizer
struct CapExceeded : Error {
    using Error::Error;
};
struct OutOfRange : Error {
    using Error::Error;
};

// schedule
struct InsufficientWindows : Error {
    using Error::Error;
};
struct OutOfSchedule : Error {
    using Error::Error;
};

// certificate
struct NoPositiveRoot : Error {
    using Error::Error;
};
struct DelayTooLarge : Error {
    using Error::Error;
};
struct Infeasible : Error {
    using Error::Error;
};

// simulation
struct NonFinite : Error {
    using Error::Error;
};
struct DelayBoundViolated : Error {
    using Error::Error;
};
struct WindowNotCovered : Error {
    using Error::Error;
};
struct HistoryError : Error {
    using Error::Error;
};

// config / io
struct ConfigError : Error {
    using Error::Error;
};
struct IoError : Error {
    using Error::Error;
};

}  // namespace fintstab
