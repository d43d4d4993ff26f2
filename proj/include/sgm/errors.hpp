#ifndef SGM_ERRORS_HPP
#define SGM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sgm {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidInput : Error {
    using Error::Error;
};

struct NearSingular : Error {
    using Error::Error;
};

struct NotPsd : Error {
    using Error::Error;
};

struct DegenerateSample : Error {
    using Error::Error;
};

struct InvalidBlock : Error {
    using Error::Error;
};

struct RankDeficient : Error {
    int available;
    explicit RankDeficient(int avail)
        : Error("rank deficient: only " + std::to_string(avail) + " usable eigenvalues"),
          available(avail) {}
};

struct GcvDegenerate : Error {
    using Error::Error;
};

struct InvalidConfig : Error {
    using Error::Error;
};

struct InvalidTruth : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

} // namespace sgm

#endif
