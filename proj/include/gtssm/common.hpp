#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace gtssm {

using elem_t = int;                 // canonical group element index
using Cplx = std::complex<double>;
using CVec = std::vector<Cplx>;

// Output marker for a step whose state decodes to no anchor.
inline constexpr elem_t kDecodeMiss = -1;

struct GtssmError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidTableError : GtssmError { using GtssmError::GtssmError; };
struct SizeLimitError : GtssmError { using GtssmError::GtssmError; };
struct NotAbelianError : GtssmError { using GtssmError::GtssmError; };
struct NotASubgroupError : GtssmError { using GtssmError::GtssmError; };
struct NotNormalError : GtssmError { using GtssmError::GtssmError; };
struct InvalidSeriesError : GtssmError { using GtssmError::GtssmError; };
struct MissingTableEntryError : GtssmError { using GtssmError::GtssmError; };
struct StateExplosionError : GtssmError { using GtssmError::GtssmError; };
struct BudgetExceededError : GtssmError { using GtssmError::GtssmError; };
struct DegenerateCentersError : GtssmError { using GtssmError::GtssmError; };
struct FormatVersionMismatchError : GtssmError { using GtssmError::GtssmError; };

struct CorruptRecordError : GtssmError {
    long line;
    CorruptRecordError(long line_, const std::string& what_)
        : GtssmError("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

struct NotSolvableError : GtssmError {
    std::vector<std::uint8_t> residual;  // stabilized perfect subgroup, as a membership mask
    NotSolvableError(std::string what_, std::vector<std::uint8_t> residual_)
        : GtssmError(std::move(what_)), residual(std::move(residual_)) {}
};

}  // namespace gtssm
