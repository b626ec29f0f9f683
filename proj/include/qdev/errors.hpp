#pragma once

#include <stdexcept>
#include <string>

namespace qdev {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotHermitian : Error {
    using Error::Error;
};

struct NotPsd : Error {
    double min_eigenvalue;
    explicit NotPsd(double min_eig)
        : Error("matrix is not positive semidefinite, min eigenvalue " + std::to_string(min_eig)),
          min_eigenvalue(min_eig) {}
};

struct BadTrace : Error {
    double trace;
    explicit BadTrace(double tr)
        : Error("matrix trace is " + std::to_string(tr) + ", expected 1"), trace(tr) {}
};

struct BlochVectorTooLong : Error {
    using Error::Error;
};

struct DimMismatch : Error {
    using Error::Error;
};

struct SizeMismatch : Error {
    using Error::Error;
};

struct BadM : Error {
    using Error::Error;
};

struct OracleMismatch : Error {
    using Error::Error;
};

}  // namespace qdev
