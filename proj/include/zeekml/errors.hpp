#pragma once

#include <stdexcept>
#include <string>

namespace zeekml {

// Log structure problems. These abort parsing of a whole file.
struct MissingDirective : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ArityMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct WrongLogKind : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MissingColumn : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Per-line decode problems. parse_*_log catches these, skips the line and
// counts it; they are never fatal at file level.
struct ColumnCountMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TypeDecodeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Training / evaluation errors.
struct EmptyDataset : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EmptyTrainingSet : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DimensionMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TooFewRows : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SingleClassError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EmptyCounts : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MissingFamilyLabels : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace zeekml
