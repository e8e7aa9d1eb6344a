#pragma once

#include <stdexcept>
#include <string>

namespace prevar {

struct Error : std::runtime_error {
    Error(std::string kind_, const std::string& what_)
        : std::runtime_error(kind_ + ": " + what_), kind(std::move(kind_)) {}
    std::string kind;
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& w) : Error("DimensionMismatch", w) {}
};
struct NotStronglyConvex : Error {
    explicit NotStronglyConvex(const std::string& w) : Error("NotStronglyConvex", w) {}
};
struct NotAFan : Error {
    explicit NotAFan(const std::string& w) : Error("NotAFan", w) {}
};
struct TransitivityViolation : Error {
    explicit TransitivityViolation(const std::string& w) : Error("TransitivityViolation", w) {}
};
struct ConesClash : Error {
    explicit ConesClash(const std::string& w) : Error("ConesClash", w) {}
};
struct MissingRayFiltration : Error {
    explicit MissingRayFiltration(const std::string& w) : Error("MissingRayFiltration", w) {}
};
struct NonPointedIndex : Error {
    explicit NonPointedIndex(const std::string& w) : Error("NonPointedIndex", w) {}
};
struct RankMismatch : Error {
    explicit RankMismatch(const std::string& w) : Error("RankMismatch", w) {}
};
struct NotSmooth : Error {
    explicit NotSmooth(const std::string& w) : Error("NotSmooth", w) {}
};
struct NotLocallyFree : Error {
    explicit NotLocallyFree(const std::string& w) : Error("NotLocallyFree", w) {}
};
struct InvalidPLMap : Error {
    explicit InvalidPLMap(const std::string& w) : Error("InvalidPLMap", w) {}
};
struct SchemaError : Error {
    explicit SchemaError(const std::string& w) : Error("SchemaError", w) {}
};

}  // namespace prevar
